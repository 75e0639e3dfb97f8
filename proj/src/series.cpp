#include "clab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "clab/coalescence.hpp"
#include "clab/errors.hpp"

namespace clab {

namespace {

using cplx = std::complex<double>;

// B_{2j}/(2j)! for j = 1..11 (11th drives the remainder bound).
constexpr double kBernFact[11] = {
    (1.0 / 6.0) / 2,
    (-1.0 / 30.0) / 24,
    (1.0 / 42.0) / 720,
    (-1.0 / 30.0) / 40320,
    (5.0 / 66.0) / 3628800,
    (-691.0 / 2730.0) / 479001600,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
    (43867.0 / 798.0) / 6402373705728000.0,
    (-174611.0 / 330.0) / 2432902008176640000.0,
    (854513.0 / 138.0) / 1124000727777607680000.0,
};
constexpr int kEmDepth = 10;

// Fixed-binary-tree summation over [lo, hi); bit-stable for a fixed range.
template <typename Term>
cplx pairwise_sum(std::int64_t lo, std::int64_t hi, const Term& term) {
  if (hi - lo <= 64) {
    cplx s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::int64_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

// Certified Euler-Maclaurin remainder bound for shift N at depth kEmDepth.
double em_remainder_bound(cplx s, double n_shift) {
  const double sigma = s.real();
  double poch = 1.0;
  for (int i = 0; i <= 2 * kEmDepth; ++i) poch *= std::abs(s + static_cast<double>(i));
  const double omitted = std::abs(kBernFact[kEmDepth]) * poch *
                         std::pow(n_shift, -sigma - 2.0 * kEmDepth - 1.0);
  return omitted * std::abs(s + (2.0 * kEmDepth + 1.0)) / (sigma + 2.0 * kEmDepth + 1.0);
}

}  // namespace

SeriesValue zeta(cplx s, double target_abs_err) {
  const double sigma = s.real();
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-8)
    throw std::domain_error("zeta: evaluation too close to the pole at s=1");
  if (sigma <= 0.05) throw std::domain_error("zeta: Re(s) below supported domain");
  const double target = std::max(target_abs_err, 1e-14);

  std::int64_t n_shift = 16;
  while (em_remainder_bound(s, static_cast<double>(n_shift)) > target * 0.5) {
    n_shift *= 2;
    if (n_shift > (std::int64_t{1} << 24))
      throw std::domain_error("zeta: cannot certify target error in this domain");
  }
  const double nd = static_cast<double>(n_shift);

  cplx sum = pairwise_sum(1, n_shift + 1,
                          [&](std::int64_t n) { return std::exp(-s * std::log(static_cast<double>(n))); });
  double abs_scale = std::abs(sum);

  const cplx npow_base = std::exp(-s * std::log(nd));  // N^{-s}
  cplx value = sum + npow_base * nd / (s - 1.0) - 0.5 * npow_base;
  abs_scale += std::abs(npow_base * nd / (s - 1.0));

  cplx poch = s;                     // rising product with 2j-1 factors
  cplx npow = npow_base / nd;        // N^{-s-2j+1} at j=1
  for (int j = 1; j <= kEmDepth; ++j) {
    const cplx term = kBernFact[j - 1] * poch * npow;
    value += term;
    abs_scale += std::abs(term);
    poch *= (s + (2.0 * j - 1.0)) * (s + (2.0 * j));
    npow /= nd * nd;
  }

  SeriesValue out;
  out.value = value;
  out.terms_used = n_shift;
  out.tail_bound = em_remainder_bound(s, nd) +
                   8.0 * std::numeric_limits<double>::epsilon() * abs_scale;
  return out;
}

std::complex<double> zeta_truncated(cplx s, double kcut, const PrimeTable& t) {
  if (s == cplx(0.0, 0.0)) throw std::domain_error("zeta_truncated: s must be nonzero");
  if (kcut > static_cast<double>(t.limit()))
    throw std::invalid_argument("zeta_truncated: kcut beyond sieve limit");
  cplx prod = 1.0;
  for (std::int64_t p : t.primes()) {
    if (static_cast<double>(p) > kcut) break;
    const cplx factor = 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
    if (std::abs(factor) < 1e-13)
      throw std::domain_error("zeta_truncated: singular Euler factor");
    prod /= factor;
  }
  return prod;
}

SeriesValue prime_zeta(cplx s, double target_abs_err, const PrimeTable& t) {
  const double sigma = s.real();
  if (sigma <= 1.0) throw std::domain_error("prime_zeta: requires Re(s) > 1");
  if (std::abs(s.imag()) > 10.0)
    throw std::domain_error("prime_zeta: |Im(s)| > 10 outside branch guard");
  const double target = std::max(target_abs_err, 1e-14);

  // |zeta(x+iy) - 1| <= u(x) = 2^-x + 3^-x + 3^(1-x)/(x-1); for x >= 2 this
  // gives |log zeta| <= u/(1-u) <= 9.2 * 2^-x, which bounds the tail.
  const auto log_zeta_mag_bound = [](double x) {
    const double u = std::pow(2.0, -x) + std::pow(3.0, -x) + 3.0 * std::pow(3.0, -x) / (x - 1.0);
    return u / (1.0 - u);
  };

  SeriesValue out;
  cplx sum = 0.0;
  double err_acc = 0.0;
  std::int64_t n = 0;
  while (true) {
    ++n;
    const double x = sigma * static_cast<double>(n);
    if (n > 1) {
      // Analytic bound on everything from n onwards; stop once it is small.
      double tail = 0.0;
      for (std::int64_t m = n;; ++m) {
        const double b = log_zeta_mag_bound(sigma * static_cast<double>(m)) /
                         static_cast<double>(m);
        tail += b;
        if (b < tail * 1e-18 || sigma * static_cast<double>(m) > 80.0) {
          tail += 2.0 * b;  // geometric slack for the truncated majorant
          break;
        }
      }
      if (tail <= target * 0.5) {
        out.tail_bound = tail + err_acc;
        break;
      }
    }
    const int mu = t.mobius(n);
    if (mu == 0) continue;
    if (x > 64.0) continue;  // |log zeta| < 1e-18, absorbed by the tail bound
    const SeriesValue z = zeta(s * static_cast<double>(n), 1e-15);
    const cplx term = (static_cast<double>(mu) / static_cast<double>(n)) * std::log(z.value);
    sum += term;
    err_acc += z.tail_bound / (std::abs(z.value) * (1.0 - 1e-6)) / static_cast<double>(n);
    out.terms_used = n;
  }
  out.value = sum;
  out.tail_bound += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(sum);
  return out;
}

std::complex<double> prime_zeta_partial(cplx s, double kcut, const PrimeTable& t) {
  if (kcut > static_cast<double>(t.limit()))
    throw std::invalid_argument("prime_zeta_partial: kcut beyond sieve limit");
  std::int64_t count = 0;
  for (std::int64_t p : t.primes()) {
    if (static_cast<double>(p) > kcut) break;
    ++count;
  }
  const auto& primes = t.primes();
  return pairwise_sum(0, count, [&](std::int64_t i) {
    return std::exp(-s * std::log(static_cast<double>(primes[static_cast<std::size_t>(i)])));
  });
}

SeriesValue l_tilde_direct(cplx s, std::int64_t ncut, const PrimeTable& t) {
  const double sigma = s.real();
  if (sigma <= 2.0)
    throw std::domain_error("l_tilde_direct: divergent for Re(s) <= 2");
  if (ncut < 2 || ncut > t.limit())
    throw std::invalid_argument("l_tilde_direct: ncut out of range");

  SeriesValue out;
  out.value = pairwise_sum(2, ncut + 1, [&](std::int64_t n) {
    return static_cast<double>(l_tilde(t, n)) * std::exp(-s * std::log(static_cast<double>(n)));
  });
  out.terms_used = ncut - 1;
  // l_tilde(n) <= n-1, so the tail is below sum_{n>ncut} n^(1-sigma).
  out.tail_bound = std::pow(static_cast<double>(ncut), 2.0 - sigma) / (sigma - 2.0) +
                   4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
  return out;
}

namespace {

// Shared core of the prime-indexed representations: partial series over
// p <= pcut plus certified bounds for the two tail pieces
//   linear:    sum_{p>pcut} (p-1)/p^s
//   quadratic: 2 sum_{p>pcut} (p-1)/p^s (zeta(s)/zeta(s,p-1) - 1).
struct PrimeSeriesPartial {
  cplx partial;
  double linear_tail;     // bound via integral comparison
  double quadratic_tail;  // bound via the Euler-factor correction
  double eval_err;
  std::int64_t terms;
};

PrimeSeriesPartial prime_series_partial(cplx s, double pcut, const PrimeTable& t) {
  const double sigma = s.real();
  if (sigma <= 2.0)
    throw std::domain_error("l_tilde prime series: divergent for Re(s) <= 2");
  if (pcut > static_cast<double>(t.limit()))
    throw std::invalid_argument("l_tilde prime series: pcut beyond sieve limit");
  if (pcut < 2.0)
    throw std::invalid_argument("l_tilde prime series: pcut must include p=2");

  const SeriesValue zs = zeta(s, 1e-14);

  std::vector<cplx> terms;
  double err_acc = 0.0;
  cplx inv_trunc = 1.0;  // prod_{q < p} (1 - q^-s) = 1/zeta(s, p-1)
  for (std::int64_t p : t.primes()) {
    if (static_cast<double>(p) > pcut) break;
    const double pd = static_cast<double>(p);
    const cplx p_s = std::exp(-s * std::log(pd));
    const cplx term = (pd - 1.0) * p_s * (2.0 * zs.value * inv_trunc - 1.0);
    terms.push_back(term);
    err_acc += 2.0 * (pd - 1.0) * std::abs(p_s) * std::abs(inv_trunc) * zs.tail_bound;
    inv_trunc *= 1.0 - p_s;
  }

  PrimeSeriesPartial out;
  out.terms = static_cast<std::int64_t>(terms.size());
  out.partial = pairwise_sum(0, out.terms, [&](std::int64_t i) {
    return terms[static_cast<std::size_t>(i)];
  });
  out.eval_err = err_acc + 8.0 * std::numeric_limits<double>::epsilon() *
                               static_cast<double>(terms.size() + 1) * std::abs(out.partial);

  // sum_{p > P} p^(1-sigma) <= P^(2-sigma)/(sigma-2) by integral comparison.
  const double linear = std::pow(pcut, 2.0 - sigma) / (sigma - 2.0);
  out.linear_tail = linear;

  // |zeta(s)/zeta(s,p-1) - 1| <= e^T - 1 with
  // T = sum_{q >= p} |log(1 - q^-s)| <= (P^-sigma + P^(1-sigma)/(sigma-1))/(1-2^-sigma).
  const double t0 = (std::pow(pcut, -sigma) + std::pow(pcut, 1.0 - sigma) / (sigma - 1.0)) /
                    (1.0 - std::pow(2.0, -sigma));
  out.quadratic_tail = 2.0 * std::expm1(t0) * linear;
  return out;
}

}  // namespace

SeriesValue l_tilde_prime_series(cplx s, double pcut, const PrimeTable& t) {
  const PrimeSeriesPartial p = prime_series_partial(s, pcut, t);
  SeriesValue out;
  out.value = p.partial;
  out.terms_used = p.terms;
  out.tail_bound = p.linear_tail + p.quadratic_tail + p.eval_err;
  return out;
}

SeriesValue l_tilde_tail_completed(cplx s, double pcut, const PrimeTable& t) {
  const PrimeSeriesPartial p = prime_series_partial(s, pcut, t);
  const SeriesValue pz1 = prime_zeta(s - 1.0, 1e-12, t);
  const SeriesValue pz0 = prime_zeta(s, 1e-12, t);
  const cplx part1 = prime_zeta_partial(s - 1.0, pcut, t);
  const cplx part0 = prime_zeta_partial(s, pcut, t);

  SeriesValue out;
  out.value = p.partial + (pz1.value - part1) - (pz0.value - part0);
  out.terms_used = p.terms + pz1.terms_used + pz0.terms_used;
  out.tail_bound = p.quadratic_tail + p.eval_err + pz1.tail_bound + pz0.tail_bound +
                   8.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(pz1.value) + std::abs(part1) + std::abs(out.value));
  return out;
}

double duality_check(cplx s, std::int64_t cut, const PrimeTable& t) {
  const double sigma = s.real();
  if (sigma <= 2.0) throw std::domain_error("duality_check: requires Re(s) > 2");
  if (cut < 2 || cut > t.limit())
    throw std::invalid_argument("duality_check: cut out of range");

  const cplx sum = pairwise_sum(2, cut + 1, [&](std::int64_t n) {
    const std::int64_t lt = l_tilde(t, n);
    const std::int64_t l = (n - 1) - lt;  // coalescing count
    return static_cast<double>(l + lt) * std::exp(-s * std::log(static_cast<double>(n)));
  });
  const cplx reference = zeta(s - 1.0, 1e-14).value - zeta(s, 1e-14).value;
  return std::abs(sum - reference);
}

std::vector<ProbePoint> singularity_probe(std::span<const double> epsilons,
                                          double cut, const PrimeTable& t) {
  std::vector<ProbePoint> ladder;
  ladder.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (eps < 0.01 || eps >= 1.0)
      throw std::invalid_argument("singularity_probe: eps must lie in [0.01, 1)");
    const double pcut = std::min(cut, static_cast<double>(t.limit()));
    const SeriesValue sv = l_tilde_tail_completed(cplx(2.0 + eps, 0.0), pcut, t);
    const double target = std::log(1.0 / eps);
    if (sv.tail_bound > 0.1 * target)
      throw insufficient_cut_error("singularity_probe: certified tail exceeds 10% of log(1/eps)");
    ProbePoint pt;
    pt.epsilon = eps;
    pt.value = sv.value.real();
    pt.tail_bound = sv.tail_bound;
    pt.deviation = std::abs(sv.value - cplx(target, 0.0));
    ladder.push_back(pt);
  }
  return ladder;
}

}  // namespace clab
