#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clab/primes.hpp"

namespace clab {

/// Exact arithmetic for sums of n-th roots of unity.  A sum is represented by
/// its integer coordinate vector modulo the n-th cyclotomic polynomial Phi_n
/// in the power basis {1, x, ..., x^(phi(n)-1)}; two sums of roots are equal
/// as complex numbers exactly when their coordinate vectors coincide.
///
/// Phi_n is computed over the integers by iterated division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.  For n < 105 all
/// coefficients lie in {-1, 0, 1}, so 64-bit arithmetic is exact with a wide
/// margin below the n <= 64 guard.
class CyclotomicReducer {
public:
  explicit CyclotomicReducer(int n);  // resource_limit_error outside [2, 64]

  static constexpr int kModulusGuard = 64;

  int modulus() const { return n_; }
  int degree() const { return degree_; }  // = Euler phi(n)

  /// Coordinates of x^e modulo Phi_n, for 0 <= e < n.
  std::span<const std::int64_t> row(int e) const;

  /// Coefficients of Phi_n, ascending powers, monic (size degree()+1).
  const std::vector<std::int64_t>& cyclotomic() const { return phi_; }

private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<std::int64_t> phi_;
  std::vector<std::int64_t> rows_;  // n rows of length degree_
};

/// A sum of distinct n-th roots of unity: exponent set plus reduced vector.
struct RootSum {
  int n = 0;
  std::vector<int> exponents;          // strictly ascending, in [0, n)
  std::vector<std::int64_t> reduced;   // length phi(n)

  bool is_zero() const;
};

/// Reduces sum over e of x^e modulo Phi_n.  Exponents must be distinct and in
/// [0, n); violations raise std::invalid_argument.
RootSum root_sum(const CyclotomicReducer& r, std::span<const int> exponents);

/// Exact equality of the two complex sums; requires equal moduli.
bool sums_equal(const RootSum& a, const RootSum& b);

/// Whether some k distinct n-th roots of unity sum to zero, decided by
/// membership of both k and n-k in the numerical semigroup generated by the
/// distinct prime factors of n (boolean DP of size n+1).
bool is_k_balancing(const PrimeTable& t, std::int64_t n, std::int64_t k);

}  // namespace clab
