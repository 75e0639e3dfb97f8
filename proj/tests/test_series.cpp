#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "clab/coalescence.hpp"
#include "clab/errors.hpp"
#include "clab/primes.hpp"
#include "clab/series.hpp"

using namespace clab;
using cplx = std::complex<double>;

namespace {

const PrimeTable& table_1e5() {
  static const PrimeTable t(100'000);
  return t;
}

// Independent oracle for zeta at integer-ish real s: partial sums with two
// Richardson extrapolation levels on the n^(1-s)/(s-1) tail model.
double zeta_series_oracle(double s) {
  const auto accel = [&](std::int64_t n) {
    double sum = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) sum += std::pow(static_cast<double>(i), -s);
    return sum + std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0) -
           0.5 * std::pow(static_cast<double>(n), -s);
  };
  // The residual scales like n^(-s-1): one Richardson level in that power.
  const double a = accel(4096), b = accel(8192);
  const double w = std::pow(2.0, s + 1.0);
  return (w * b - a) / (w - 1.0);
}

}  // namespace

TEST_CASE("zeta at even integers") {
  const double pi = std::numbers::pi;
  const auto z2 = zeta(cplx{2.0, 0.0}, 1e-14);
  CHECK(std::abs(z2.value - cplx{pi * pi / 6.0, 0.0}) < 1e-12);
  CHECK(std::abs(z2.value.real() - zeta_series_oracle(2.0)) < 1e-10);

  const auto z4 = zeta(cplx{4.0, 0.0}, 1e-14);
  CHECK(std::abs(z4.value - cplx{pi * pi * pi * pi / 90.0, 0.0}) < 1e-12);
  CHECK(std::abs(z4.value.real() - zeta_series_oracle(4.0)) < 1e-10);
}

TEST_CASE("zeta consistency and certification") {
  const auto a = zeta(cplx{2.0, 0.0}, 1e-14);
  const auto b = zeta(cplx{2.0, 1e-30}, 1e-14);  // same path, complex argument
  CHECK(std::abs(a.value - b.value) < 1e-14);

  // looser target never drifts beyond its own reported bound
  for (cplx s : {cplx{3.0, 0.0}, cplx{2.5, 1.0}, cplx{0.5, 2.0}, cplx{1.02, 0.0}}) {
    const auto coarse = zeta(s, 1e-8);
    const auto fine = zeta(s, 1e-14);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound + fine.tail_bound);
  }
}

TEST_CASE("zeta domain guards") {
  CHECK_THROWS_AS(zeta(cplx{1.0, 0.0}, 1e-12), std::domain_error);
  CHECK_THROWS_AS(zeta(cplx{1.0 + 1e-9, 0.0}, 1e-12), std::domain_error);
  CHECK_THROWS_AS(zeta(cplx{0.01, 0.0}, 1e-12), std::domain_error);
}

TEST_CASE("truncated Euler product") {
  const auto& t = table_1e5();
  CHECK(zeta_truncated(cplx{2, 0}, 1.0, t) == cplx{1.0, 0.0});
  CHECK(std::abs(zeta_truncated(cplx{2, 0}, 2.0, t) - cplx{4.0 / 3.0, 0.0}) < 1e-15);
  CHECK(std::abs(zeta_truncated(cplx{2, 0}, 3.0, t) - cplx{1.5, 0.0}) < 1e-15);

  // converges to zeta along growing cuts
  const auto z3 = zeta(cplx{3, 0}, 1e-14);
  CHECK(std::abs(zeta_truncated(cplx{3, 0}, 1e5, t) - z3.value) < 1e-8);

  // s on the imaginary axis can make an Euler factor vanish
  const double s_im = 2.0 * std::numbers::pi / std::log(2.0);
  CHECK_THROWS_AS(zeta_truncated(cplx{0.0, s_im}, 10.0, t), std::domain_error);
}

TEST_CASE("prime zeta values") {
  const auto& t = table_1e5();
  const auto p2 = prime_zeta(cplx{2, 0}, 1e-12, t);
  CHECK(std::abs(p2.value - cplx{0.452247420041, 0.0}) < 1e-9);
  const auto p4 = prime_zeta(cplx{4, 0}, 1e-12, t);
  CHECK(std::abs(p4.value - cplx{0.076993139764, 0.0}) < 1e-9);

  // positive tail: the partial sum sits just below the full series
  const cplx partial = prime_zeta_partial(cplx{2, 0}, 1e5, t);
  const double gap = (p2.value - partial).real();
  CHECK(gap > 0.0);
  CHECK(gap < 1e-5);

  CHECK_THROWS_AS(prime_zeta(cplx{1.0, 0.0}, 1e-12, t), std::domain_error);
  CHECK_THROWS_AS(prime_zeta(cplx{2.0, 11.0}, 1e-12, t), std::domain_error);
}

TEST_CASE("prime zeta against the direct sieve sum") {
  // Direct sum over p <= 1e7 plus an integral tail window.
  PrimeTable big(10'000'000);
  double direct = 0.0;
  const auto& primes = big.primes();
  for (auto it = primes.rbegin(); it != primes.rend(); ++it)
    direct += 1.0 / (static_cast<double>(*it) * static_cast<double>(*it));
  const auto pz = prime_zeta(cplx{2, 0}, 1e-12, big);
  const double tail_window = 1.0 / 1e7;  // crude upper bound on sum p^(-2), p > 1e7
  CHECK(pz.value.real() >= direct - 1e-12);
  CHECK(pz.value.real() <= direct + tail_window);
}

TEST_CASE("prime zeta partial sums") {
  const auto& t = table_1e5();
  CHECK(std::abs(prime_zeta_partial(cplx{2, 0}, 3.0, t) - cplx{13.0 / 36.0, 0.0}) < 1e-15);
  CHECK(std::abs(prime_zeta_partial(cplx{2, 0}, 2.0, t) - cplx{0.25, 0.0}) < 1e-16);
  CHECK(prime_zeta_partial(cplx{5, 2}, 1.5, t) == cplx{0.0, 0.0});

  // monotone real parts toward the full series for real s > 1
  const auto full = prime_zeta(cplx{3, 0}, 1e-12, t);
  double prev = 0.0;
  for (double cut : {10.0, 100.0, 1000.0, 10000.0}) {
    const double part = prime_zeta_partial(cplx{3, 0}, cut, t).real();
    CHECK(part >= prev);
    CHECK(part <= full.value.real());
    prev = part;
  }
}

TEST_CASE("direct Dirichlet sum") {
  const auto& t = table_1e5();
  const auto one_term = l_tilde_direct(cplx{3, 0}, 2, t);
  CHECK(std::abs(one_term.value - cplx{0.125, 0.0}) < 1e-15);
  CHECK(one_term.terms_used == 1);
  // tail bound is ncut^(2-sigma)/(sigma-2) plus rounding slop
  CHECK(one_term.tail_bound == doctest::Approx(0.5).epsilon(1e-9));

  const double expected10 = 1.0 / 8 + 2.0 / 27 + 2.0 / 64 + 4.0 / 125 + 2.0 / 216 +
                            6.0 / 343 + 2.0 / 512 + 4.0 / 729 + 2.0 / 1000;
  const auto ten = l_tilde_direct(cplx{3, 0}, 10, t);
  CHECK(std::abs(ten.value - cplx{expected10, 0.0}) < 1e-14);

  // self-consistency across cuts
  for (cplx s : {cplx{4, 0}, cplx{3, 0}, cplx{2.5, 0}}) {
    const auto coarse = l_tilde_direct(s, 10'000, t);
    const auto fine = l_tilde_direct(s, 100'000, t);
    CHECK(std::abs(fine.value - coarse.value) <= coarse.tail_bound);
  }

  CHECK_THROWS_AS(l_tilde_direct(cplx{2.0, 0.0}, 100, t), std::domain_error);
  CHECK_THROWS_AS(l_tilde_direct(cplx{3.0, 0.0}, 200'000, t), std::invalid_argument);
}

TEST_CASE("prime-indexed representation") {
  const auto& t = table_1e5();
  const auto z3 = zeta(cplx{3, 0}, 1e-14);
  const auto first = l_tilde_prime_series(cplx{3, 0}, 2.0, t);
  CHECK(std::abs(first.value - cplx{(2.0 * z3.value.real() - 1.0) / 8.0, 0.0}) < 1e-14);

  for (cplx s : {cplx{3, 0}, cplx{2.5, 0}, cplx{3, 2}}) {
    const auto direct = l_tilde_direct(s, 100'000, t);
    const auto prime = l_tilde_prime_series(s, 100'000.0, t);
    CAPTURE(s.real());
    CAPTURE(s.imag());
    CHECK(std::abs(direct.value - prime.value) <= direct.tail_bound + prime.tail_bound);
  }

  // halving the cut stays within the smaller cut's certificate
  for (cplx s : {cplx{3, 0}, cplx{2.5, 0}}) {
    const auto half = l_tilde_prime_series(s, 50'000.0, t);
    const auto full = l_tilde_prime_series(s, 100'000.0, t);
    CHECK(std::abs(full.value - half.value) <= half.tail_bound);
  }
}

TEST_CASE("tail-completed evaluator") {
  const auto& t = table_1e5();
  // agreement with the other two routes well inside the convergent region
  const auto completed = l_tilde_tail_completed(cplx{3, 0}, 10'000.0, t);
  const auto direct = l_tilde_direct(cplx{3, 0}, 100'000, t);
  CHECK(std::abs(completed.value - direct.value) <=
        completed.tail_bound + direct.tail_bound);
  CHECK(completed.tail_bound < 1e-6);

  // cut-stability near the boundary, where the direct sum is useless
  const auto a = l_tilde_tail_completed(cplx{2.1, 0}, 10'000.0, t);
  const auto b = l_tilde_tail_completed(cplx{2.1, 0}, 100'000.0, t);
  CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound);
}

TEST_CASE("duality of the coalescing and non-coalescing series") {
  const auto& t = table_1e5();
  CHECK(duality_check(cplx{3, 0}, 100'000, t) < 1e-4);
  CHECK(duality_check(cplx{4, 0}, 100'000, t) < 1e-9);

  // at cut 2 the discrepancy is exactly the dropped tail
  const double expected_gap =
      (zeta(cplx{2, 0}, 1e-14).value - zeta(cplx{3, 0}, 1e-14).value).real() - 0.125;
  CHECK(duality_check(cplx{3, 0}, 2, t) == doctest::Approx(expected_gap).epsilon(1e-10));

  CHECK_THROWS_AS(duality_check(cplx{2, 0}, 100, t), std::domain_error);
}

TEST_CASE("singularity probe") {
  const auto& t = table_1e5();
  const std::vector<double> ladder{0.2, 0.1, 0.05, 0.02};
  const auto pts = singularity_probe(ladder, 1e5, t);
  REQUIRE(pts.size() == 4);
  for (const auto& p : pts) {
    CHECK(std::isfinite(p.deviation));
    CHECK(p.tail_bound <= 0.1 * std::log(1.0 / p.epsilon));
  }

  // triangle-inequality sanity on the ladder
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lhs = std::abs(pts[i].deviation - pts[i + 1].deviation);
    const double rhs = std::abs(std::log(pts[i].epsilon) - std::log(pts[i + 1].epsilon)) +
                       pts[i].tail_bound + pts[i + 1].tail_bound +
                       std::abs(pts[i].value - pts[i + 1].value);
    CHECK(lhs <= rhs + 1e-12);
  }

  const std::vector<double> one{0.5};
  CHECK_THROWS_AS(singularity_probe(one, 4.0, t), clab::insufficient_cut_error);

  const std::vector<double> tiny{0.005};
  CHECK_THROWS_AS(singularity_probe(tiny, 1e5, t), std::invalid_argument);
}
