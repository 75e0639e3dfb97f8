#include "clab/cyclotomic.hpp"

#include <algorithm>
#include <stdexcept>

#include "clab/errors.hpp"

namespace clab {

namespace {

using Poly = std::vector<std::int64_t>;  // ascending coefficients

// Exact division, requires divisor monic or +-1-leading and remainder zero.
Poly divide_exact(const Poly& num, const Poly& den) {
  Poly rem = num;
  const std::size_t dd = den.size() - 1;
  const std::int64_t lead = den.back();
  Poly quot(rem.size() - dd, 0);
  for (std::size_t i = rem.size(); i-- > dd;) {
    const std::int64_t c = rem[i] / lead;
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
  }
  for (std::int64_t c : rem)
    if (c != 0) throw std::logic_error("cyclotomic: non-exact division");
  return quot;
}

// Phi_d for all divisors d of n, built in ascending d.
Poly cyclotomic_poly(int n) {
  std::vector<Poly> phi(static_cast<std::size_t>(n) + 1);
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Poly num(static_cast<std::size_t>(d) + 1, 0);  // x^d - 1
    num[0] = -1;
    num[static_cast<std::size_t>(d)] = 1;
    Poly p = num;
    for (int e = 1; e < d; ++e)
      if (d % e == 0) p = divide_exact(p, phi[static_cast<std::size_t>(e)]);
    phi[static_cast<std::size_t>(d)] = std::move(p);
  }
  return phi[static_cast<std::size_t>(n)];
}

}  // namespace

CyclotomicReducer::CyclotomicReducer(int n) : n_(n) {
  if (n < 2 || n > kModulusGuard)
    throw resource_limit_error("CyclotomicReducer: n outside [2, 64] guard");
  phi_ = cyclotomic_poly(n);
  degree_ = static_cast<int>(phi_.size()) - 1;

  // Row e holds x^e mod Phi_n; rows for e >= degree are built by repeated
  // multiplication by x followed by one reduction step (Phi_n is monic).
  rows_.assign(static_cast<std::size_t>(n_) * degree_, 0);
  for (int e = 0; e < std::min(n_, degree_); ++e)
    rows_[static_cast<std::size_t>(e) * degree_ + e] = 1;
  std::vector<std::int64_t> cur(static_cast<std::size_t>(degree_), 0);
  if (degree_ > 0) cur[static_cast<std::size_t>(degree_) - 1] = 1;  // x^(degree-1)
  for (int e = degree_; e < n_; ++e) {
    std::int64_t top = cur[static_cast<std::size_t>(degree_) - 1];
    for (int j = degree_ - 1; j > 0; --j) cur[static_cast<std::size_t>(j)] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (int j = 0; j < degree_; ++j) cur[static_cast<std::size_t>(j)] -= top * phi_[static_cast<std::size_t>(j)];
    std::copy(cur.begin(), cur.end(), rows_.begin() + static_cast<std::size_t>(e) * degree_);
  }
}

std::span<const std::int64_t> CyclotomicReducer::row(int e) const {
  if (e < 0 || e >= n_) throw std::invalid_argument("CyclotomicReducer::row: exponent out of range");
  return {rows_.data() + static_cast<std::size_t>(e) * degree_, static_cast<std::size_t>(degree_)};
}

bool RootSum::is_zero() const {
  return std::all_of(reduced.begin(), reduced.end(), [](std::int64_t c) { return c == 0; });
}

RootSum root_sum(const CyclotomicReducer& r, std::span<const int> exponents) {
  RootSum s;
  s.n = r.modulus();
  s.exponents.assign(exponents.begin(), exponents.end());
  std::sort(s.exponents.begin(), s.exponents.end());
  for (std::size_t i = 0; i < s.exponents.size(); ++i) {
    if (s.exponents[i] < 0 || s.exponents[i] >= s.n)
      throw std::invalid_argument("root_sum: exponent out of range");
    if (i > 0 && s.exponents[i] == s.exponents[i - 1])
      throw std::invalid_argument("root_sum: duplicate exponent");
  }
  s.reduced.assign(static_cast<std::size_t>(r.degree()), 0);
  for (int e : s.exponents) {
    auto row = r.row(e);
    for (std::size_t j = 0; j < row.size(); ++j) s.reduced[j] += row[j];
  }
  return s;
}

bool sums_equal(const RootSum& a, const RootSum& b) {
  if (a.n != b.n) throw std::invalid_argument("sums_equal: modulus mismatch");
  return a.reduced == b.reduced;
}

bool is_k_balancing(const PrimeTable& t, std::int64_t n, std::int64_t k) {
  if (n < 2) throw std::invalid_argument("is_k_balancing: n must be >= 2");
  if (k < 0 || k > n) throw std::invalid_argument("is_k_balancing: k outside [0, n]");

  std::vector<std::int64_t> prime_factors;
  for (std::int64_t m = n; m > 1;) {
    const std::int64_t p = t.smallest_prime_factor(m);
    prime_factors.push_back(p);
    while (m % p == 0) m /= p;
  }

  std::vector<char> reach(static_cast<std::size_t>(n) + 1, 0);
  reach[0] = 1;
  for (std::int64_t p : prime_factors)
    for (std::int64_t s = p; s <= n; ++s)
      if (reach[static_cast<std::size_t>(s - p)]) reach[static_cast<std::size_t>(s)] = 1;

  return reach[static_cast<std::size_t>(k)] && reach[static_cast<std::size_t>(n - k)];
}

}  // namespace clab
