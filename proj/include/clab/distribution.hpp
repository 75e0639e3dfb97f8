#pragma once

#include <cstdint>
#include <vector>

#include "clab/primes.hpp"

namespace clab {

/// Dense table of the Buchstab function omega: the continuous solution of
/// (u omega(u))' = omega(u-1) with omega(u) = 1/u on [1, 2].  v(u) = u*omega(u)
/// is integrated with a fixed-step fourth-order rule whose delay term is read
/// from the stored history by cubic interpolation; stencils never straddle the
/// integer knots where v loses smoothness.
class BuchstabTable {
public:
  explicit BuchstabTable(double u_max = 32.0, double step = 1e-3);

  double u_max() const { return u_max_; }
  double step() const { return step_; }

  /// omega(u); exact 1/u on [1, 2].  Throws std::invalid_argument outside
  /// [1, u_max].
  double omega(double u) const;

private:
  double interp_v(double u) const;

  double u_max_ = 0.0;
  double step_ = 0.0;
  std::int64_t per_unit_ = 0;
  std::vector<double> v_;  // samples of u*omega(u) on [1, u_max]
};

/// Phi(x, y): count of 2 <= n <= x with P1(n) > y, by the Legendre-style
/// recursion phi(x, pi(y)) - 1 with wheel-precomputed base cases and the
/// prime-counting shortcut.  Requires x <= t.limit().
std::int64_t rough_count(const PrimeTable& t, double x, double y);

/// Same count by a direct scan of smallest prime factors (the self-check).
std::int64_t rough_count_scan(const PrimeTable& t, double x, double y);

/// H(x, y): count of 2 <= n <= x whose number of non-coalescing proper
/// Grassmannians exceeds y, by direct scan of the closed form.
std::int64_t h_count_direct(const PrimeTable& t, double x, double y);

/// Same count through the rough-number identity
///   H(x, y) = Phi(x, y/2+1) - [pi0(min(y+1, x)) - pi0(y/2+1)],
/// i.e. y/2+1-rough numbers minus the strip of primes in (y/2+1, y+1].
std::int64_t h_count_identity(const PrimeTable& t, double x, double y);

/// H(x, 2 sqrt(x)), for x >= 4.
std::int64_t h_hat(const PrimeTable& t, double x);

/// Count of 2 <= n <= x such that G(k,n) is non-coalescing for every
/// k in [1, min(floor(sqrt(x))+1, n-1)]; kept alongside h_hat for
/// comparison, the two differ by a strip of small primes.
std::int64_t h_hat_intro(const PrimeTable& t, double x);

/// Logarithmic integral li(x) = gamma + log log x + sum (log x)^k/(k k!),
/// absolute error below target_abs_err.  Requires x > 1.
double li(double x, double target_abs_err);

struct GaugeResult {
  std::int64_t observed = 0;
  double predicted = 0.0;
  double rel_err = 0.0;
};

/// Compares H(x,y) against the rough-number density prediction
///   x / zeta(1, y/2+1) * e^gamma * omega(log x / log(y/2+1))  -  prime strip.
/// Requires x >= y >= 4 and x >= 10 y (below that the regime is degenerate).
GaugeResult debruijn_gauge(const PrimeTable& t, const BuchstabTable& tbl,
                           double x, double y);

struct EnvelopeResult {
  std::int64_t h_hat = 0;
  double li_value = 0.0;
  double diff = 0.0;        // h_hat - li(x)
  double normalized = 0.0;  // |diff| / (x^theta log x)
};

/// Deviation of h_hat from li(x) normalized by x^theta log x, theta in
/// [1/2, 1]; theta = 1/2 is the desk-scale surrogate of the optimal envelope.
EnvelopeResult rh_envelope(const PrimeTable& t, double x, double theta);

}  // namespace clab
