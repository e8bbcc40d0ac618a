#pragma once

#include "kicksim/ensemble.hpp"
#include "kicksim/histogram.hpp"

namespace kicksim {

/// Emulation of the time-of-flight detection pipeline: momentum window,
/// signal threshold, optional renormalization. Defaults mirror the
/// experimental processing (window [-60, 60], no threshold) except that
/// renormalization after cuts is off unless requested.
struct DetectionWindow {
  double p_min = -60.0;
  double p_max = 60.0;
  double threshold = 0.0;  ///< probability-per-bin floor; 0 disables
  bool renormalize = false;

  void validate() const;
};

/// Zeroes bins outside [p_min, p_max] and bins below threshold; records the
/// discarded mass in the histogram metadata. Throws EmptySignalError when
/// nothing survives.
MomentumHistogram apply_window(const MomentumHistogram& hist, const DetectionWindow& w);

/// Mean energy of the windowed histogram, sum n^2 P(n) / 2 over surviving
/// bins (renormalized first when the window says so).
double windowed_mean_energy(const MomentumHistogram& hist, const DetectionWindow& w);

struct EnhancementResult {
  double e_meas_coherent = 0.0;
  double e_meas_noisy = 0.0;
  double e_true_coherent = 0.0;
  double e_true_noisy = 0.0;
  double e_true_coherent_stderr = 0.0;
  double e_true_noisy_stderr = 0.0;
};

/// Runs the ensemble twice at the same master seed, without and with
/// spontaneous emission, and reports true (full-moment) and windowed mean
/// energies after the final kick. The shared seed gives common initial
/// momenta in both arms.
EnhancementResult enhancement_experiment(const DimensionlessParams& params,
                                         const InitialDistribution& dist,
                                         const SEModel& se, const DetectionWindow& w,
                                         const RunOptions& opts = {});

}  // namespace kicksim
