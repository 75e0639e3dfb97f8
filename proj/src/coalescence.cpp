#include "clab/coalescence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "clab/errors.hpp"

namespace clab {

std::int64_t l_tilde(const PrimeTable& t, std::int64_t n) {
  const std::int64_t p1 = t.smallest_prime_factor(n);
  return p1 == n ? n - 1 : 2 * (p1 - 1);
}

bool is_coalescing(const PrimeTable& t, std::int64_t k, std::int64_t n) {
  if (n < 2 || n > t.limit()) throw std::invalid_argument("is_coalescing: n out of range");
  if (k < 1 || k > n - 1) throw std::invalid_argument("is_coalescing: k outside [1, n-1]");
  const std::int64_t p1 = t.smallest_prime_factor(n);
  return p1 <= k && k <= n - p1;
}

namespace {

std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::int64_t>(c);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  v *= 0x9e3779b97f4a7c15ULL;
  v ^= v >> 32;
  h ^= v;
  return h * 0xff51afd7ed558ccdULL;
}

// Depth-first enumeration of ascending k-tuples from [0, n), maintaining the
// reduced coordinate vector incrementally; `visit` is called at every leaf.
template <typename Visit>
void for_each_subset(const CyclotomicReducer& r, int k, Visit&& visit) {
  const int n = r.modulus();
  const int d = r.degree();
  std::vector<std::int64_t> acc(static_cast<std::size_t>(d), 0);

  // next[depth] = exponent chosen at this depth
  std::vector<int> chosen(static_cast<std::size_t>(k), 0);
  int depth = 0;
  int e = 0;
  while (true) {
    if (e <= n - (k - depth)) {
      auto row = r.row(e);
      for (int j = 0; j < d; ++j) acc[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
      chosen[static_cast<std::size_t>(depth)] = e;
      ++depth;
      if (depth == k) {
        visit(acc);
        for (int j = 0; j < d; ++j) acc[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
        --depth;
        ++e;
      } else {
        ++e;
      }
    } else {
      if (depth == 0) break;
      --depth;
      e = chosen[static_cast<std::size_t>(depth)];
      auto row = r.row(e);
      for (int j = 0; j < d; ++j) acc[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
      ++e;
    }
  }
}

}  // namespace

bool is_coalescing_oracle(const CyclotomicReducer& r, int k, std::int64_t guard) {
  const int n = r.modulus();
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("is_coalescing_oracle: k outside [1, n-1]");
  const std::int64_t count = binomial_capped(n, k, guard);
  if (count > guard)
    throw resource_limit_error("is_coalescing_oracle: C(n,k) exceeds enumeration guard");

  const int d = r.degree();

  std::vector<std::uint64_t> hashes;
  hashes.reserve(static_cast<std::size_t>(count));
  for_each_subset(r, k, [&](const std::vector<std::int64_t>& acc) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (int j = 0; j < d; ++j)
      h = hash_combine(h, static_cast<std::uint64_t>(acc[static_cast<std::size_t>(j)]));
    hashes.push_back(h);
  });

  std::vector<std::uint64_t> sorted = hashes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> dup;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && (dup.empty() || dup.back() != sorted[i]))
      dup.push_back(sorted[i]);
  if (dup.empty()) return false;

  // Re-verify hash duplicates on the exact vectors; a repeated vector means
  // two distinct subsets share the same sum.
  bool found = false;
  std::map<std::vector<std::int64_t>, int> seen;
  std::size_t idx = 0;
  for_each_subset(r, k, [&](const std::vector<std::int64_t>& acc) {
    const std::uint64_t h = hashes[idx++];
    if (found || !std::binary_search(dup.begin(), dup.end(), h)) return;
    if (++seen[acc] >= 2) found = true;
  });
  return found;
}

CoalescenceRecord coalescence_record(const PrimeTable& t, std::int64_t n) {
  if (n < 2 || n > t.limit())
    throw std::invalid_argument("coalescence_record: n out of range");
  CoalescenceRecord rec;
  rec.n = n;
  rec.p1 = t.smallest_prime_factor(n);
  rec.interval_lo = rec.p1;
  rec.interval_hi = n - rec.p1;
  rec.l_tilde = l_tilde(t, n);
  for (std::int64_t k = 1; k <= n - 1; ++k)
    if (k < rec.interval_lo || k > rec.interval_hi) rec.nc_set.push_back(k);
  return rec;
}

std::int64_t nc_partial_sum(const PrimeTable& t, std::int64_t n) {
  if (n < 2 || n > t.limit())
    throw std::invalid_argument("nc_partial_sum: n out of range");
  const double x = static_cast<double>(n);
  return 2 * (1 - n) + t.prime_power_sum(x, 0) - t.prime_power_sum(x, 1) +
         2 * t.spf_prefix_sum(n);
}

double rareness_ratio(const PrimeTable& t, std::int64_t n) {
  if (n < 3) throw std::invalid_argument("rareness_ratio: n must be >= 3");
  const double sum = static_cast<double>(nc_partial_sum(t, n));
  const double x = static_cast<double>(n);
  return sum / (x * x / (2.0 * std::log(x)));
}

double sigma_bar_estimate(const PrimeTable& t, std::int64_t n) {
  if (n < 4) throw std::invalid_argument("sigma_bar_estimate: n must be >= 4");
  const double x = static_cast<double>(n);
  const std::int64_t prime_part = t.prime_power_sum(x, 1) - t.prime_power_sum(x, 0);
  const std::int64_t composite_sum = nc_partial_sum(t, n) - prime_part;
  return std::log(static_cast<double>(composite_sum)) / std::log(x);
}

std::vector<std::vector<bool>> triangle_map(const PrimeTable& t, std::int64_t n_max) {
  if (n_max < 2) throw std::invalid_argument("triangle_map: n_max must be >= 2");
  std::vector<std::vector<bool>> rows;
  rows.reserve(static_cast<std::size_t>(n_max - 1));
  for (std::int64_t n = 2; n <= n_max; ++n) {
    std::vector<bool> row(static_cast<std::size_t>(n - 1));
    for (std::int64_t k = 1; k <= n - 1; ++k)
      row[static_cast<std::size_t>(k - 1)] = is_coalescing(t, k, n);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace clab
