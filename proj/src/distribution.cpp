#include "clab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "clab/coalescence.hpp"
#include "clab/errors.hpp"
#include "clab/series.hpp"

namespace clab {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kExpGamma = 1.7810724179901979852;  // e^gamma

}  // namespace

BuchstabTable::BuchstabTable(double u_max, double step) : u_max_(u_max), step_(step) {
  if (!(step > 0.0) || u_max < 3.0)
    throw std::invalid_argument("BuchstabTable: need step > 0 and u_max >= 3");
  per_unit_ = std::llround(1.0 / step);
  if (per_unit_ < 8 || std::abs(per_unit_ * step - 1.0) > 1e-12)
    throw std::invalid_argument("BuchstabTable: step must divide 1 exactly");
  step_ = 1.0 / static_cast<double>(per_unit_);

  const auto n = static_cast<std::size_t>(std::llround((u_max_ - 1.0) * per_unit_)) + 1;
  v_.assign(n, 1.0);  // v = 1 on [1, 2]

  // v'(u) = v(u-1)/(u-1) has no v(u) dependence, so the classical RK4 step
  // collapses to Simpson on the delay term.
  const auto f = [&](double u) { return interp_v(u - 1.0) / (u - 1.0); };
  const std::size_t start = static_cast<std::size_t>(per_unit_);  // index of u = 2
  for (std::size_t i = start; i + 1 < n; ++i) {
    const double u = 1.0 + static_cast<double>(i) * step_;
    v_[i + 1] = v_[i] + step_ / 6.0 * (f(u) + 4.0 * f(u + 0.5 * step_) + f(u + step_));
  }

  for (std::size_t i = start; i < n; ++i) {
    const double u = 1.0 + static_cast<double>(i) * step_;
    const double w = v_[i] / u;
    if (w < 0.5 - 1e-9 || w > 1.0 + 1e-9)
      throw std::logic_error("BuchstabTable: integration left (0.5, 1] band");
  }
}

double BuchstabTable::interp_v(double u) const {
  if (u <= 2.0) return 1.0;
  const double pos = (u - 1.0) / step_;
  auto i0 = static_cast<std::int64_t>(pos);

  // Confine the 4-point stencil to the unit interval containing u; v is
  // smooth inside each [m, m+1] but has derivative jumps at the knots.
  const std::int64_t unit = (i0 / per_unit_) * per_unit_;
  std::int64_t lo = std::clamp(i0 - 1, unit, unit + per_unit_ - 3);
  lo = std::min(lo, static_cast<std::int64_t>(v_.size()) - 4);

  const double x = pos - static_cast<double>(lo);
  const double* p = v_.data() + lo;
  // Lagrange cubic on equally spaced nodes 0, 1, 2, 3.
  const double c0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double c1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double c2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double c3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  return c0 * p[0] + c1 * p[1] + c2 * p[2] + c3 * p[3];
}

double BuchstabTable::omega(double u) const {
  if (!(u >= 1.0) || u > u_max_)
    throw std::invalid_argument("BuchstabTable::omega: u outside [1, u_max]");
  if (u <= 2.0) return 1.0 / u;
  return interp_v(u) / u;
}

namespace {

// Wheel tables for the first kWheelPrimes primes: cnt[a][m] counts integers
// in [1, m] coprime to the first a primes, with period W_a.
constexpr int kWheelPrimes = 7;
constexpr std::int64_t kWheel[kWheelPrimes + 1] = {1, 2, 6, 30, 210, 2310, 30030, 510510};

const std::vector<std::vector<std::int32_t>>& wheel_tables() {
  static const std::vector<std::vector<std::int32_t>> tables = [] {
    constexpr std::int64_t primes[kWheelPrimes] = {2, 3, 5, 7, 11, 13, 17};
    std::vector<std::vector<std::int32_t>> t(kWheelPrimes + 1);
    for (int a = 1; a <= kWheelPrimes; ++a) {
      const std::int64_t w = kWheel[a];
      std::vector<char> coprime(static_cast<std::size_t>(w), 1);
      for (int i = 0; i < a; ++i)
        for (std::int64_t m = 0; m < w; m += primes[i]) coprime[static_cast<std::size_t>(m)] = 0;
      auto& cnt = t[static_cast<std::size_t>(a)];
      cnt.assign(static_cast<std::size_t>(w) + 1, 0);
      for (std::int64_t m = 1; m <= w; ++m)
        cnt[static_cast<std::size_t>(m)] =
            cnt[static_cast<std::size_t>(m - 1)] + coprime[static_cast<std::size_t>(m % w)];
    }
    return t;
  }();
  return tables;
}

struct PhiContext {
  const PrimeTable& t;
  std::unordered_map<std::int64_t, std::int64_t> memo;
};

// phi(x, a): integers in [1, x] free of the first a prime factors.
std::int64_t phi_legendre(double x, int a, PhiContext& ctx) {
  const auto xi = static_cast<std::int64_t>(x);
  if (xi <= 0) return 0;
  if (a == 0) return xi;
  if (a <= kWheelPrimes) {
    const std::int64_t w = kWheel[a];
    const auto& cnt = wheel_tables()[static_cast<std::size_t>(a)];
    return (xi / w) * cnt[static_cast<std::size_t>(w)] + cnt[static_cast<std::size_t>(xi % w)];
  }
  const std::int64_t pa = ctx.t.primes()[static_cast<std::size_t>(a - 1)];
  if (pa >= xi) return 1;
  if (pa * pa >= xi)  // p_a >= sqrt(x): survivors are 1 and the primes in (p_a, x]
    return ctx.t.prime_power_sum(static_cast<double>(xi), 0) - a + 1;

  const std::int64_t key = xi * 4096 + a;
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  const std::int64_t res = phi_legendre(x, a - 1, ctx) -
                           phi_legendre(static_cast<double>(xi / pa), a - 1, ctx);
  ctx.memo.emplace(key, res);
  return res;
}

int prime_count_leq(const PrimeTable& t, double y) {
  if (y < 2.0) return 0;
  return static_cast<int>(t.prime_power_sum(std::min(y, static_cast<double>(t.limit())), 0));
}

}  // namespace

std::int64_t rough_count(const PrimeTable& t, double x, double y) {
  if (!(x >= 2.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("rough_count: x out of range");
  if (!(y > 0.0)) throw std::invalid_argument("rough_count: y must be positive");
  const int a = prime_count_leq(t, y);
  PhiContext ctx{t, {}};
  return phi_legendre(x, a, ctx) - 1;  // drop n = 1
}

std::int64_t rough_count_scan(const PrimeTable& t, double x, double y) {
  if (!(x >= 2.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("rough_count_scan: x out of range");
  if (!(y > 0.0)) throw std::invalid_argument("rough_count_scan: y must be positive");
  const auto xi = static_cast<std::int64_t>(x);
  std::int64_t count = 0;
  for (std::int64_t n = 2; n <= xi; ++n)
    if (static_cast<double>(t.smallest_prime_factor(n)) > y) ++count;
  return count;
}

std::int64_t h_count_direct(const PrimeTable& t, double x, double y) {
  if (!(x >= 2.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("h_count_direct: x out of range");
  if (!(y >= 2.0) || y > x) throw std::invalid_argument("h_count_direct: need 2 <= y <= x");
  const auto xi = static_cast<std::int64_t>(x);
  std::int64_t count = 0;
  for (std::int64_t n = 2; n <= xi; ++n)
    if (static_cast<double>(l_tilde(t, n)) > y) ++count;
  return count;
}

std::int64_t h_count_identity(const PrimeTable& t, double x, double y) {
  if (!(x >= 2.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("h_count_identity: x out of range");
  if (!(y >= 2.0) || y > x) throw std::invalid_argument("h_count_identity: need 2 <= y <= x");
  const double z = y / 2.0 + 1.0;
  const std::int64_t strip = t.prime_power_sum(std::min(y + 1.0, x), 0) - t.prime_power_sum(z, 0);
  return rough_count(t, x, z) - strip;
}

std::int64_t h_hat(const PrimeTable& t, double x) {
  if (!(x >= 4.0)) throw std::invalid_argument("h_hat: x must be >= 4");
  return h_count_direct(t, x, 2.0 * std::sqrt(x));
}

std::int64_t h_hat_intro(const PrimeTable& t, double x) {
  if (!(x >= 4.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("h_hat_intro: x out of range");
  const auto xi = static_cast<std::int64_t>(x);
  std::int64_t root = static_cast<std::int64_t>(std::sqrt(x));
  while ((root + 1) * (root + 1) <= xi) ++root;
  while (root * root > xi) --root;

  std::int64_t count = 0;
  for (std::int64_t n = 2; n <= xi; ++n) {
    const std::int64_t p1 = t.smallest_prime_factor(n);
    const std::int64_t hi = std::min(n - p1, std::min(root + 1, n - 1));
    if (p1 > hi) ++count;  // no coalescing k in [1, min(root+1, n-1)]
  }
  return count;
}

double li(double x, double target_abs_err) {
  if (!(x > 1.0)) throw std::invalid_argument("li: x must be > 1");
  const double target = std::max(target_abs_err, 1e-15);
  const double lx = std::log(x);
  double sum = kEulerGamma + std::log(lx);
  double a = 1.0;  // (log x)^k / k!
  for (int k = 1; k < 20000; ++k) {
    a *= lx / static_cast<double>(k);
    const double term = a / static_cast<double>(k);
    sum += term;
    if (static_cast<double>(k) > lx && term < 0.25 * target) break;
  }
  return sum;
}

GaugeResult debruijn_gauge(const PrimeTable& t, const BuchstabTable& tbl,
                           double x, double y) {
  if (!(x >= y) || !(y >= 4.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("debruijn_gauge: need 4 <= y <= x <= limit");
  if (x < 10.0 * y)
    throw std::invalid_argument("debruijn_gauge: degenerate regime x < 10y");

  const double z = y / 2.0 + 1.0;
  const double u = std::log(x) / std::log(z);
  if (u > tbl.u_max()) throw std::out_of_range("debruijn_gauge: omega argument beyond table");

  const double zeta1 = zeta_truncated({1.0, 0.0}, z, t).real();
  const double strip =
      static_cast<double>(t.prime_power_sum(y + 1.0, 0) - t.prime_power_sum(z, 0));

  GaugeResult g;
  g.observed = h_count_direct(t, x, y);
  g.predicted = x / zeta1 * kExpGamma * tbl.omega(u) - strip;
  if (g.observed == 0) throw std::domain_error("debruijn_gauge: observed count is zero");
  g.rel_err = std::abs(static_cast<double>(g.observed) - g.predicted) /
              static_cast<double>(g.observed);
  return g;
}

EnvelopeResult rh_envelope(const PrimeTable& t, double x, double theta) {
  if (!(x >= 1000.0) || x > static_cast<double>(t.limit()))
    throw std::invalid_argument("rh_envelope: x out of range");
  if (!(theta >= 0.5) || theta > 1.0)
    throw std::invalid_argument("rh_envelope: theta outside [0.5, 1]");

  EnvelopeResult r;
  r.h_hat = h_hat(t, x);
  r.li_value = li(x, 1e-9);
  r.diff = static_cast<double>(r.h_hat) - r.li_value;
  r.normalized = std::abs(r.diff) / (std::pow(x, theta) * std::log(x));
  return r;
}

}  // namespace clab
