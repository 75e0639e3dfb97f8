#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "clab/primes.hpp"

namespace clab {

/// A series/product evaluation paired with a rigorous truncation-tail bound.
struct SeriesValue {
  std::complex<double> value{0.0, 0.0};
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
};

/// Riemann zeta by Euler-Maclaurin summation with 10 Bernoulli correction
/// terms; the shift N is chosen from |s| and the target so the certified
/// remainder is below target_abs_err.  Supported domain: Re(s) > 0.05 and
/// |s-1| >= 1e-8; targets below 1e-14 are clamped.
SeriesValue zeta(std::complex<double> s, double target_abs_err);

/// Truncated Euler product over primes p <= kcut (exact finite product).
std::complex<double> zeta_truncated(std::complex<double> s, double kcut,
                                    const PrimeTable& t);

/// Prime zeta function on Re(s) > 1 via sum over squarefree n of
/// mu(n)/n * log zeta(n s), principal logarithms.  Complex arguments are
/// restricted to |Im(s)| <= 10 to stay clear of branch-cut crossings.
SeriesValue prime_zeta(std::complex<double> s, double target_abs_err,
                       const PrimeTable& t);

/// Partial sum of p^(-s) over primes p <= kcut (exact finite sum).
std::complex<double> prime_zeta_partial(std::complex<double> s, double kcut,
                                        const PrimeTable& t);

/// Direct Dirichlet sum of the non-coalescence counts: sum over n <= ncut of
/// l_tilde(n)/n^s, for Re(s) > 2.  The tail bound uses l_tilde(n) <= n-1 and
/// integral comparison; summation order is a fixed binary tree so results are
/// bit-stable.
SeriesValue l_tilde_direct(std::complex<double> s, std::int64_t ncut,
                           const PrimeTable& t);

/// Prime-indexed series for the same function: sum over primes p <= pcut of
/// (p-1)/p^s * (2 zeta(s)/zeta(s, p-1) - 1), for Re(s) > 2, with a certified
/// bound on the omitted prime tail.
SeriesValue l_tilde_prime_series(std::complex<double> s, double pcut,
                                 const PrimeTable& t);

/// Prime-indexed partial series plus the analytically completed tail
///   sum_{p > pcut} (p-1)/p^s = [zetaP(s-1) - partial] - [zetaP(s) - partial],
/// leaving only the quadratically small remainder of the Euler-factor
/// correction inside the certified bound.  This is the evaluator of choice
/// near the Re(s) = 2 boundary, where direct cuts converge too slowly.
SeriesValue l_tilde_tail_completed(std::complex<double> s, double pcut,
                                   const PrimeTable& t);

/// |sum_{n<=cut} (l_n + l_tilde_n)/n^s  -  (zeta(s-1) - zeta(s))| where
/// l_n + l_tilde_n = n-1.  Small once the cut tail is small.
double duality_check(std::complex<double> s, std::int64_t cut, const PrimeTable& t);

struct ProbePoint {
  double epsilon = 0.0;
  double deviation = 0.0;   // |L(2+eps) - log(1/eps)|
  double value = 0.0;       // Re of the evaluated series
  double tail_bound = 0.0;
};

/// Logarithmic-singularity probe at s = 2 + eps: evaluates the series via
/// l_tilde_tail_completed with primes up to `cut` and reports the deviation
/// ladder.  Each eps must be >= 0.01; if a certified tail exceeds 10% of
/// log(1/eps) an insufficient_cut_error is raised.
std::vector<ProbePoint> singularity_probe(std::span<const double> epsilons,
                                          double cut, const PrimeTable& t);

}  // namespace clab
