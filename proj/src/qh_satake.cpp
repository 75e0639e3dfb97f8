#include "clab/qh_satake.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "clab/errors.hpp"

namespace clab {

namespace {

constexpr std::size_t kBasisGuard = 2'000'000;

std::vector<std::vector<std::int64_t>> pascal_table(int n) {
  std::vector<std::vector<std::int64_t>> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j)
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  return c;
}

}  // namespace

WedgeBasis::WedgeBasis(int n, int k) : n_(n), k_(k) {
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("WedgeBasis: need n >= 2 and 1 <= k <= n-1");
  binom_ = pascal_table(n);
  const std::int64_t dim = binom_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  if (static_cast<std::size_t>(dim) > kBasisGuard)
    throw resource_limit_error("WedgeBasis: dimension exceeds guard");
  dim_ = static_cast<std::size_t>(dim);

  states_.reserve(dim_ * static_cast<std::size_t>(k));
  std::vector<std::uint8_t> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  while (true) {
    states_.insert(states_.end(), comb.begin(), comb.end());
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      comb[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(comb[static_cast<std::size_t>(j - 1)] + 1);
  }
}

std::span<const std::uint8_t> WedgeBasis::state(std::size_t index) const {
  if (index >= dim_) throw std::invalid_argument("WedgeBasis::state: index out of range");
  return {states_.data() + index * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
}

std::size_t WedgeBasis::index_of(std::span<const std::uint8_t> state) const {
  if (state.size() != static_cast<std::size_t>(k_))
    throw std::invalid_argument("WedgeBasis::index_of: wrong arity");
  // Lexicographic rank: count tuples preceding `state`.
  std::int64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k_; ++i) {
    for (int v = prev + 1; v < state[static_cast<std::size_t>(i)]; ++v)
      rank += binom_[static_cast<std::size_t>(n_ - 1 - v)][static_cast<std::size_t>(k_ - 1 - i)];
    prev = state[static_cast<std::size_t>(i)];
  }
  return static_cast<std::size_t>(rank);
}

std::complex<double> WedgeOperator::trace() const {
  std::complex<double> tr = 0.0;
  for (const auto& e : entries)
    if (e.row == e.col) tr += e.coeff;
  return tr;
}

WedgeOperator p_ell_operator(const WedgeBasis& b, int ell, std::complex<double> q) {
  const int n = b.n(), k = b.k();
  if (ell < 1 || ell > n - 1)
    throw std::invalid_argument("p_ell_operator: ell outside [1, n-1]");

  WedgeOperator op;
  op.n = n;
  op.k = k;
  op.ell = ell;
  op.q = q;
  op.dimension = b.dimension();

  const std::complex<double> wrap_factor = (k % 2 == 1 ? 1.0 : -1.0) * q;

  std::vector<std::uint8_t> target(static_cast<std::size_t>(k));
  for (std::size_t col = 0; col < b.dimension(); ++col) {
    const auto s = b.state(col);
    for (int j = 0; j < k; ++j) {
      int e = s[static_cast<std::size_t>(j)] + ell;
      bool wrapped = false;
      if (e >= n) {
        e -= n;
        wrapped = true;
      }
      // Wedge annihilation on repeated exponents.
      bool repeat = false;
      for (int m = 0; m < k && !repeat; ++m)
        if (m != j && s[static_cast<std::size_t>(m)] == e) repeat = true;
      if (repeat) continue;

      // New sorted position of e among the untouched exponents.
      int pos = 0;
      for (int m = 0; m < k; ++m)
        if (m != j && s[static_cast<std::size_t>(m)] < e) ++pos;
      int t = 0;
      for (int m = 0; m < k; ++m) {
        if (t == pos) target[static_cast<std::size_t>(t++)] = static_cast<std::uint8_t>(e);
        if (m != j) target[static_cast<std::size_t>(t++)] = s[static_cast<std::size_t>(m)];
      }
      if (t == k - 1) target[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(e);

      const double sign = (std::abs(pos - j) % 2 == 0) ? 1.0 : -1.0;
      std::complex<double> coeff = sign;
      if (wrapped) coeff *= wrap_factor;
      op.entries.push_back({b.index_of(target), col, coeff});
    }
  }
  return op;
}

SpectrumResult c1_spectrum(const WedgeBasis& b, std::complex<double> q,
                           double tol, std::size_t guard) {
  if (b.dimension() > guard)
    throw resource_limit_error("c1_spectrum: dimension exceeds eigensolver guard");
  const auto dim = static_cast<Eigen::Index>(b.dimension());

  const WedgeOperator op = p_ell_operator(b, 1, q);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : op.entries)
    a(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.coeff;
  a *= static_cast<double>(b.n());

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("c1_spectrum: eigensolver failed to converge");

  SpectrumResult res;
  res.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + dim);

  const double a_norm = a.norm();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto v = solver.eigenvectors().col(i);
    const double r = (a * v - solver.eigenvalues()(i) * v).norm() / (a_norm * v.norm());
    res.max_residual = std::max(res.max_residual, r);
  }
  if (res.max_residual > tol)
    throw std::runtime_error("c1_spectrum: residual above tolerance");
  return res;
}

std::vector<std::complex<double>> projective_coordinates(int n, double t, int k_parity) {
  if (n < 2) throw std::invalid_argument("projective_coordinates: n must be >= 2");
  using namespace std::complex_literals;
  const std::complex<double> pref =
      static_cast<double>(n) *
      std::exp((t + (k_parity - 1) * std::numbers::pi * 1.0i) / static_cast<double>(n));
  std::vector<std::complex<double>> u(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h)
    u[static_cast<std::size_t>(h)] =
        pref * std::exp(2.0 * std::numbers::pi * 1.0i * static_cast<double>(h) /
                        static_cast<double>(n));
  return u;
}

std::vector<std::complex<double>> grassmannian_coordinates_closed(int n, int k, double t) {
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("grassmannian_coordinates_closed: bad (k, n)");
  using namespace std::complex_literals;
  const std::complex<double> pref =
      static_cast<double>(n) *
      std::exp((t + (k - 1) * std::numbers::pi * 1.0i) / static_cast<double>(n));
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h)
    roots[static_cast<std::size_t>(h)] =
        std::exp(2.0 * std::numbers::pi * 1.0i * static_cast<double>(h) /
                 static_cast<double>(n));

  std::vector<std::complex<double>> out;
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::complex<double> sum = 0.0;
    for (int e : comb) sum += roots[static_cast<std::size_t>(e)];
    out.push_back(pref * sum);
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

MatchReport spectrum_matches_closed(int n, int k, double tol) {
  const WedgeBasis basis(n, k);
  const SpectrumResult spec = c1_spectrum(basis, 1.0, tol);
  std::vector<std::complex<double>> closed = grassmannian_coordinates_closed(n, k, 0.0);

  MatchReport rep;
  rep.max_residual = spec.max_residual;
  std::vector<bool> used(closed.size(), false);
  for (const auto& ev : spec.eigenvalues) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(ev - closed[i]);
      if (best < 0.0 || d < best) {
        best = d;
        best_i = i;
      }
    }
    used[best_i] = true;
    rep.max_distance = std::max(rep.max_distance, best);
  }
  rep.matched = rep.max_distance <= tol * static_cast<double>(n);
  return rep;
}

}  // namespace clab
