#pragma once

#include <utility>
#include <vector>

#include "kicksim/rng.hpp"

namespace kicksim {

/// Initial thermal momentum distribution h. The Monte Carlo side samples
/// atoms from it; the analytic side coarse-grains it onto integer bins.
///
/// Kinds:
///   gaussian     continuous Gaussian, sigma = fwhm / (2 sqrt(2 ln 2))
///   delta        every atom starts exactly at `center`
///   custom_table weights over integer momentum classes n', with the
///                quasimomentum uniform inside each unit cell (the
///                smooth-h idealization)
struct InitialDistribution {
  enum class Kind { gaussian, delta, custom_table };

  Kind kind = Kind::gaussian;
  double fwhm = 6.0;    ///< [hbar G], gaussian only
  double center = 0.0;  ///< mean momentum
  std::vector<std::pair<int, double>> table;  ///< (n', weight), custom_table only

  static InitialDistribution gaussian(double fwhm, double center = 0.0) {
    InitialDistribution d;
    d.kind = Kind::gaussian;
    d.fwhm = fwhm;
    d.center = center;
    return d;
  }

  static InitialDistribution delta(double center = 0.0) {
    InitialDistribution d;
    d.kind = Kind::delta;
    d.center = center;
    return d;
  }

  static InitialDistribution custom(std::vector<std::pair<int, double>> table);

  double sigma() const;  ///< gaussian standard deviation

  void validate() const;

  /// Draw one initial momentum p0 = n0 + beta0.
  double sample(RandomStream& rng) const;

  /// Exact probability mass of the unit bin [n - 1/2, n + 1/2).
  double bin_mass(int n) const;

  /// Half-width of the integer support used when coarse-graining
  /// (bins with mass below ~1e-14 are dropped).
  int support_half_width() const;

  /// Largest |p0| the sampler can plausibly produce; used for the ladder
  /// headroom rule. Gaussians are capped at 6 sigma from center.
  double max_abs_momentum() const;
};

/// Floor/fraction split p = n + beta with beta in [0, 1).
inline std::pair<int, double> split_momentum(double p) {
  const double f = std::floor(p);
  return {static_cast<int>(f), p - f};
}

}  // namespace kicksim
