#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace kicksim {

/// Coarse-grained momentum distribution on unit bins: bin n holds the
/// probability of p in [n - 1/2, n + 1/2).
struct MomentumHistogram {
  int n_min = 0;             ///< momentum value of prob.front()
  std::vector<double> prob;  ///< contiguous bins n_min .. n_min + size - 1
  int kick_index = 0;
  long n_atoms = 0;
  std::string fingerprint;
  double discarded_mass = 0.0;  ///< mass removed by detection cuts

  int n_max() const { return n_min + static_cast<int>(prob.size()) - 1; }

  double at(int n) const {
    const int i = n - n_min;
    if (i < 0 || i >= static_cast<int>(prob.size())) return 0.0;
    return prob[i];
  }

  double& ref(int n) { return prob[n - n_min]; }

  double total() const {
    double s = 0.0;
    for (double v : prob) s += v;
    return s;
  }

  /// Sum of n^2 P(n) over bins.
  double second_moment() const {
    double s = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
      const double n = static_cast<double>(n_min + static_cast<int>(i));
      s += n * n * prob[i];
    }
    return s;
  }

  /// Binned mean energy, sum n^2 P(n) / 2.
  double energy() const { return 0.5 * second_moment(); }

  double mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i)
      s += static_cast<double>(n_min + static_cast<int>(i)) * prob[i];
    return s;
  }

  double variance() const {
    const double m = mean();
    return second_moment() - m * m;
  }
};

/// Bin index holding momentum p under the half-open convention
/// p in [n - 1/2, n + 1/2).
inline int momentum_bin(double p) {
  return static_cast<int>(std::floor(p + 0.5));
}

/// Momentum of the outermost local maximum above `floor`; locates the
/// ballistic wing of a resonant distribution. Returns 0 when no interior
/// bin qualifies.
inline int outermost_local_maximum(const MomentumHistogram& h, double floor) {
  int best = 0;
  for (std::size_t i = 1; i + 1 < h.prob.size(); ++i) {
    if (h.prob[i] <= floor) continue;
    if (h.prob[i] > h.prob[i - 1] && h.prob[i] >= h.prob[i + 1]) {
      const int n = h.n_min + static_cast<int>(i);
      if (std::abs(n) > std::abs(best)) best = n;
    }
  }
  return best;
}

}  // namespace kicksim
