#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace clab {

/// Wedge (Satake) basis of the small quantum cohomology of G(k,n): all
/// strictly ascending k-tuples from {0,...,n-1} in lexicographic order,
/// with O(k) combinatorial ranking for the inverse lookup.
class WedgeBasis {
public:
  WedgeBasis(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t dimension() const { return dim_; }

  std::span<const std::uint8_t> state(std::size_t index) const;
  std::size_t index_of(std::span<const std::uint8_t> state) const;

private:
  int n_ = 0, k_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::uint8_t> states_;               // dim_ * k_ exponents
  std::vector<std::vector<std::int64_t>> binom_;   // Pascal table up to n
};

/// Sparse action of quantum multiplication by p_ell on the wedge basis.
/// Each basis state contributes at most k terms: slot j moves by ell, wraps
/// past n with the quantum factor (-1)^(k-1) q, repeated exponents are
/// annihilated, and re-sorting contributes the permutation sign.
struct WedgeOperator {
  struct Entry {
    std::size_t row, col;
    std::complex<double> coeff;
  };

  int n = 0, k = 0, ell = 0;
  std::complex<double> q;
  std::size_t dimension = 0;
  std::vector<Entry> entries;

  std::complex<double> trace() const;
};

WedgeOperator p_ell_operator(const WedgeBasis& b, int ell, std::complex<double> q);

struct SpectrumResult {
  std::vector<std::complex<double>> eigenvalues;  // with multiplicity
  double max_residual = 0.0;                      // max |Av - lv| / (|A|_F |v|)
};

/// Eigenvalues of n * (p_1 action at quantum parameter q) as a dense complex
/// eigenproblem.  Throws resource_limit_error when C(n,k) exceeds `guard`,
/// and std::runtime_error if the backward-error proxy exceeds `tol`.
SpectrumResult c1_spectrum(const WedgeBasis& b, std::complex<double> q,
                           double tol = 1e-8, std::size_t guard = 3000);

/// Canonical coordinates of the projective space P^(n-1) at the shifted small
/// quantum point: n * exp((t + (k_parity-1) pi i)/n) * zeta_n^(h-1), h = 1..n.
std::vector<std::complex<double>> projective_coordinates(int n, double t, int k_parity);

/// Closed-form canonical coordinates for G(k,n): the projective prefactor
/// times every sum of k distinct n-th roots of unity (with multiplicity,
/// C(n,k) values in total).
std::vector<std::complex<double>> grassmannian_coordinates_closed(int n, int k, double t);

struct MatchReport {
  bool matched = false;
  double max_distance = 0.0;  // worst matched pair distance
  double max_residual = 0.0;  // from the eigensolver
};

/// Greedy nearest-neighbor matching between the computed c1 spectrum at q=1
/// and the closed-form coordinate multiset at t=0; matched iff the worst
/// pair distance is <= tol * n.
MatchReport spectrum_matches_closed(int n, int k, double tol);

}  // namespace clab
