#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace clab {

/// Sieve-backed store of primality, smallest prime factors and the prefix
/// sums needed by the counting modules.  Construction is the only mutating
/// step; afterwards every query is const and safe to share across threads.
class PrimeTable {
public:
  /// Builds the table for all integers up to `limit` with a linear
  /// (spf-producing) sieve.  One pass yields spf, primality and Moebius.
  /// Throws std::invalid_argument for limit < 2 and resource_limit_error
  /// for limit > kLimitGuard.
  explicit PrimeTable(std::int64_t limit);

  static constexpr std::int64_t kLimitGuard = 100'000'000;

  std::int64_t limit() const { return limit_; }

  bool is_prime(std::int64_t n) const;

  /// P1(n): least prime dividing n.  Requires 2 <= n <= limit.
  std::int64_t smallest_prime_factor(std::int64_t n) const;

  /// All primes <= limit, ascending.
  const std::vector<std::int64_t>& primes() const { return primes_; }

  /// pi_alpha(floor(x)) = sum of p^alpha over primes p <= x, alpha in {0,1}.
  /// Real x is floored before lookup; requires 2 <= x <= limit.
  std::int64_t prime_power_sum(double x, int alpha) const;

  /// Sum of smallest_prime_factor(j) for 2 <= j <= n.
  std::int64_t spf_prefix_sum(std::int64_t n) const;

  /// Moebius mu(n) in {-1,0,1}, from the spf factor chain.  Requires
  /// 1 <= n <= limit.
  int mobius(std::int64_t n) const;

  /// Serialization: magic "CLAB1", limit as 8-byte little-endian, then the
  /// primality bitmap and the spf array.  Prefix data is rebuilt on load.
  void save(const std::filesystem::path& path) const;
  static PrimeTable load(const std::filesystem::path& path);

private:
  PrimeTable() = default;
  void build_prefixes();

  std::int64_t limit_ = 0;
  std::vector<std::uint8_t> is_prime_;    // bit-packed, index 0..limit
  std::vector<std::uint32_t> spf_;        // spf_[n] for 2 <= n <= limit
  std::vector<std::int64_t> primes_;
  std::vector<std::uint32_t> prefix_pi0_; // count of primes <= n
  std::vector<std::int64_t> prefix_pi1_;  // sum of primes <= n
  std::vector<std::int64_t> prefix_spf_;  // sum of spf over 2..n
};

inline PrimeTable build_prime_table(std::int64_t limit) { return PrimeTable(limit); }

}  // namespace clab
