#include "kicksim/detection.hpp"

#include <cmath>

#include "kicksim/errors.hpp"

namespace kicksim {

void DetectionWindow::validate() const {
  if (!(p_min < p_max)) throw ValidationError("window requires p_min < p_max");
  if (threshold < 0.0) throw ValidationError("threshold must be >= 0");
}

MomentumHistogram apply_window(const MomentumHistogram& hist, const DetectionWindow& w) {
  w.validate();
  MomentumHistogram out = hist;
  double discarded = 0.0;
  for (std::size_t i = 0; i < out.prob.size(); ++i) {
    const int n = out.n_min + static_cast<int>(i);
    const bool outside = n < w.p_min || n > w.p_max;
    const bool dim = out.prob[i] < w.threshold;
    if (outside || dim) {
      discarded += out.prob[i];
      out.prob[i] = 0.0;
    }
  }
  out.discarded_mass += discarded;
  const double surviving = out.total();
  if (surviving <= 0.0)
    throw EmptySignalError("detection cuts removed all probability mass");
  if (w.renormalize)
    for (double& v : out.prob) v /= surviving;
  return out;
}

double windowed_mean_energy(const MomentumHistogram& hist, const DetectionWindow& w) {
  return apply_window(hist, w).energy();
}

EnhancementResult enhancement_experiment(const DimensionlessParams& params,
                                         const InitialDistribution& dist,
                                         const SEModel& se, const DetectionWindow& w,
                                         const RunOptions& opts) {
  SEModel coherent = se;
  coherent.n_se_mean = 0.0;

  RunOptions run_opts = opts;
  run_opts.record_hist_at = {params.n_kicks};

  const EnsembleResult off = run_ensemble(params, dist, coherent, run_opts);
  const EnsembleResult on = run_ensemble(params, dist, se, run_opts);

  EnhancementResult r;
  r.e_true_coherent = off.energy[params.n_kicks];
  r.e_true_noisy = on.energy[params.n_kicks];
  r.e_true_coherent_stderr = off.energy_stderr[params.n_kicks];
  r.e_true_noisy_stderr = on.energy_stderr[params.n_kicks];
  r.e_meas_coherent = windowed_mean_energy(off.histograms.front(), w);
  r.e_meas_noisy = windowed_mean_energy(on.histograms.front(), w);
  return r;
}

}  // namespace kicksim
