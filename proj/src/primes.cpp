#include "clab/primes.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "clab/errors.hpp"

namespace clab {

namespace {

inline bool test_bit(const std::vector<std::uint8_t>& bits, std::int64_t i) {
  return (bits[static_cast<std::size_t>(i >> 3)] >> (i & 7)) & 1u;
}

inline void set_bit(std::vector<std::uint8_t>& bits, std::int64_t i) {
  bits[static_cast<std::size_t>(i >> 3)] |= static_cast<std::uint8_t>(1u << (i & 7));
}

}  // namespace

PrimeTable::PrimeTable(std::int64_t limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
  if (limit > kLimitGuard)
    throw resource_limit_error("PrimeTable: limit exceeds memory guard");

  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  is_prime_.assign(static_cast<std::size_t>(limit / 8) + 1, 0);

  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[static_cast<std::size_t>(i)] == 0) {
      spf_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
      set_bit(is_prime_, i);
    }
    const std::int64_t spf_i = spf_[static_cast<std::size_t>(i)];
    for (std::int64_t p : primes_) {
      if (p > spf_i || p > limit / i) break;
      spf_[static_cast<std::size_t>(i * p)] = static_cast<std::uint32_t>(p);
    }
  }

  build_prefixes();
}

void PrimeTable::build_prefixes() {
  const std::size_t n = static_cast<std::size_t>(limit_) + 1;
  prefix_pi0_.assign(n, 0);
  prefix_pi1_.assign(n, 0);
  prefix_spf_.assign(n, 0);
  std::uint32_t pi0 = 0;
  std::int64_t pi1 = 0, spfsum = 0;
  for (std::int64_t i = 2; i <= limit_; ++i) {
    if (test_bit(is_prime_, i)) {
      ++pi0;
      pi1 += i;
    }
    spfsum += spf_[static_cast<std::size_t>(i)];
    prefix_pi0_[static_cast<std::size_t>(i)] = pi0;
    prefix_pi1_[static_cast<std::size_t>(i)] = pi1;
    prefix_spf_[static_cast<std::size_t>(i)] = spfsum;
  }
}

bool PrimeTable::is_prime(std::int64_t n) const {
  if (n < 2 || n > limit_) throw std::invalid_argument("PrimeTable::is_prime: out of range");
  return test_bit(is_prime_, n);
}

std::int64_t PrimeTable::smallest_prime_factor(std::int64_t n) const {
  if (n < 2 || n > limit_)
    throw std::invalid_argument("PrimeTable::smallest_prime_factor: out of range");
  return spf_[static_cast<std::size_t>(n)];
}

std::int64_t PrimeTable::prime_power_sum(double x, int alpha) const {
  if (alpha != 0 && alpha != 1)
    throw std::invalid_argument("PrimeTable::prime_power_sum: alpha must be 0 or 1");
  if (!(x >= 2.0) || x > static_cast<double>(limit_))
    throw std::invalid_argument("PrimeTable::prime_power_sum: x out of range");
  const auto n = static_cast<std::size_t>(x);
  return alpha == 0 ? static_cast<std::int64_t>(prefix_pi0_[n]) : prefix_pi1_[n];
}

std::int64_t PrimeTable::spf_prefix_sum(std::int64_t n) const {
  if (n < 2 || n > limit_)
    throw std::invalid_argument("PrimeTable::spf_prefix_sum: out of range");
  return prefix_spf_[static_cast<std::size_t>(n)];
}

int PrimeTable::mobius(std::int64_t n) const {
  if (n < 1 || n > limit_) throw std::invalid_argument("PrimeTable::mobius: out of range");
  int factors = 0;
  while (n > 1) {
    const std::int64_t p = spf_[static_cast<std::size_t>(n)];
    n /= p;
    if (n % p == 0) return 0;  // p^2 | original n
    ++factors;
  }
  return (factors % 2 == 0) ? 1 : -1;
}

namespace {

constexpr char kMagic[5] = {'C', 'L', 'A', 'B', '1'};

void write_u64_le(std::ostream& os, std::uint64_t v) {
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::istream& is) {
  std::uint8_t buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void PrimeTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("PrimeTable::save: cannot open " + path.string());
  os.write(kMagic, sizeof(kMagic));
  write_u64_le(os, static_cast<std::uint64_t>(limit_));
  os.write(reinterpret_cast<const char*>(is_prime_.data()),
           static_cast<std::streamsize>(is_prime_.size()));
  os.write(reinterpret_cast<const char*>(spf_.data()),
           static_cast<std::streamsize>(spf_.size() * sizeof(std::uint32_t)));
  if (!os) throw std::runtime_error("PrimeTable::save: write failed");
}

PrimeTable PrimeTable::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("PrimeTable::load: cannot open " + path.string());
  char magic[5];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("PrimeTable::load: bad magic");
  const auto limit = static_cast<std::int64_t>(read_u64_le(is));
  if (limit < 2 || limit > kLimitGuard)
    throw std::runtime_error("PrimeTable::load: corrupt header");

  PrimeTable t;
  t.limit_ = limit;
  t.is_prime_.assign(static_cast<std::size_t>(limit / 8) + 1, 0);
  t.spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  is.read(reinterpret_cast<char*>(t.is_prime_.data()),
          static_cast<std::streamsize>(t.is_prime_.size()));
  is.read(reinterpret_cast<char*>(t.spf_.data()),
          static_cast<std::streamsize>(t.spf_.size() * sizeof(std::uint32_t)));
  if (!is) throw std::runtime_error("PrimeTable::load: truncated payload");

  // Cheap probe rejecting byte-swapped or corrupt payloads.
  if (t.spf_[2] != 2 || !test_bit(t.is_prime_, 2))
    throw std::runtime_error("PrimeTable::load: inconsistent payload");

  for (std::int64_t i = 2; i <= limit; ++i)
    if (test_bit(t.is_prime_, i)) t.primes_.push_back(i);
  t.build_prefixes();
  return t;
}

}  // namespace clab
