#pragma once

#include <cstdint>
#include <vector>

#include "clab/cyclotomic.hpp"
#include "clab/primes.hpp"

namespace clab {

/// Number of k in [1, n-1] for which G(k,n) is not coalescing:
/// n-1 when n is prime, 2*(P1(n)-1) when n is composite.
std::int64_t l_tilde(const PrimeTable& t, std::int64_t n);

/// Closed-form coalescence test: P1(n) <= k <= n - P1(n).
bool is_coalescing(const PrimeTable& t, std::int64_t k, std::int64_t n);

/// Exact-search referee: enumerates every k-subset of the n-th roots of
/// unity and reports whether two distinct subsets have equal sums (reduced
/// vectors modulo Phi_n compared exactly).  Enumeration is a depth-first
/// walk in lexicographic order updating the reduced vector one row at a
/// time; collision detection hashes the exact vector and re-verifies any
/// hash duplicates against the full integer vectors, so the boolean result
/// is deterministic and exact.
/// Throws resource_limit_error when C(n,k) exceeds `guard`.
bool is_coalescing_oracle(const CyclotomicReducer& r, int k,
                          std::int64_t guard = 20'000'000);

/// Per-n coalescence summary.
struct CoalescenceRecord {
  std::int64_t n = 0;
  std::int64_t p1 = 0;           // smallest prime factor of n
  std::int64_t interval_lo = 0;  // coalescing interval [lo, hi]; empty if lo > hi
  std::int64_t interval_hi = 0;
  std::int64_t l_tilde = 0;
  std::vector<std::int64_t> nc_set;  // ascending non-coalescing k values

  bool interval_empty() const { return interval_lo > interval_hi; }
};

CoalescenceRecord coalescence_record(const PrimeTable& t, std::int64_t n);

/// Sum of l_tilde(j) for 2 <= j <= n via the closed formula
/// 2(1-n) + pi0(n) - pi1(n) + 2*sum of P1, all from prefix arrays.
std::int64_t nc_partial_sum(const PrimeTable& t, std::int64_t n);

/// nc_partial_sum(n) normalized by n^2 / (2 log n); tends to 1.
double rareness_ratio(const PrimeTable& t, std::int64_t n);

/// Finite-n sample of the exponent of the composite-indexed partial sums:
/// log(sum of l_tilde over composite k <= n) / log n.
double sigma_bar_estimate(const PrimeTable& t, std::int64_t n);

/// Row for each n in [2, n_max]; entry k-1 (k in [1, n-1]) is the
/// is_coalescing flag.
std::vector<std::vector<bool>> triangle_map(const PrimeTable& t, std::int64_t n_max);

}  // namespace clab
