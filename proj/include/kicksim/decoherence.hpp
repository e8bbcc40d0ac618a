#pragma once

#include "kicksim/bloch.hpp"
#include "kicksim/rng.hpp"

namespace kicksim {

/// Per-event momentum recoil law. Both laws have variance exactly 1/12, so
/// the diffusion coefficient is D = n_se_mean / 12 either way; the uniform
/// law additionally reshuffles the quasimomentum across the whole Brillouin
/// zone, which is the decoherence mechanism of interest.
enum class RecoilLaw {
  uniform,    ///< delta ~ U[-1/2, 1/2)
  two_point,  ///< delta = +-1/sqrt(12), equiprobable
};

/// Spontaneous-emission statistics: Poisson event count per kick cycle,
/// independent recoils per event. n_se_mean = 0 is an exact no-op.
struct SEModel {
  double n_se_mean = 0.0;
  RecoilLaw recoil_law = RecoilLaw::uniform;

  void validate() const;
};

/// Poisson-distributed number of SE events in one kick cycle.
int sample_se_count(RandomStream& rng, const SEModel& model);

/// One recoil magnitude drawn from the model's law.
double sample_recoil(RandomStream& rng, const SEModel& model);

/// Translates the whole state by delta in momentum: beta' = frac(beta +
/// delta), amplitudes re-indexed by the integer carry so that P(p) maps to
/// P(p - delta) exactly. Throws LadderOverflowError if more than the edge
/// tolerance of probability would be pushed off the ladder; smaller losses
/// are clipped and the norm restored.
void apply_recoil(BlochState& state, double delta);

/// Applies a Poisson number of independent recoils. Bitwise no-op (and no
/// RNG consumption) at n_se_mean = 0.
void decohere_between_kicks(BlochState& state, const SEModel& model, RandomStream& rng);

}  // namespace kicksim
