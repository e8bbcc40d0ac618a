#include "kicksim/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kicksim/errors.hpp"

namespace kicksim {

void SEModel::validate() const {
  if (n_se_mean < 0.0) throw ValidationError("n_se_mean must be >= 0");
}

int sample_se_count(RandomStream& rng, const SEModel& model) {
  return rng.poisson(model.n_se_mean);
}

double sample_recoil(RandomStream& rng, const SEModel& model) {
  switch (model.recoil_law) {
    case RecoilLaw::uniform:
      return rng.uniform() - 0.5;
    case RecoilLaw::two_point: {
      constexpr double mag = 0.28867513459481287;  // 1/sqrt(12)
      return rng.uniform() < 0.5 ? -mag : mag;
    }
  }
  return 0.0;
}

void apply_recoil(BlochState& state, double delta) {
  if (delta == 0.0) return;
  if (std::abs(delta) >= 0.5 * state.n_max)
    throw ValidationError("recoil magnitude exceeds n_max / 2 sanity bound");

  const double raw = state.beta + delta;
  const double f = std::floor(raw);
  const int carry = static_cast<int>(f);
  state.beta = raw - f;

  if (carry != 0) {
    // c'_{n + carry} = c_n; mass shifted past the edge is lost.
    const int len = state.ladder_size();
    double lost = 0.0;
    auto& a = state.amplitudes;
    if (carry > 0) {
      for (int i = len - carry; i < len; ++i)
        if (i >= 0) lost += std::norm(a[i]);
      for (int i = len - 1; i >= carry; --i) a[i] = a[i - carry];
      std::fill(a.begin(), a.begin() + std::min(carry, len), std::complex<double>{});
    } else {
      const int k = -carry;
      for (int i = 0; i < k && i < len; ++i) lost += std::norm(a[i]);
      for (int i = 0; i < len - k; ++i) a[i] = a[i + k];
      std::fill(a.end() - std::min(k, len), a.end(), std::complex<double>{});
    }
    if (lost > kEdgeOccupationLimit)
      throw LadderOverflowError("recoil: shift by " + std::to_string(carry) +
                                " pushed mass " + std::to_string(lost) +
                                " off the ladder");
    if (lost > 0.0) {
      const double remaining = state.norm_squared();
      if (remaining > 0.0) {
        const double scale = 1.0 / std::sqrt(remaining);
        for (auto& c : a) c *= scale;
      }
    }
  }
}

void decohere_between_kicks(BlochState& state, const SEModel& model, RandomStream& rng) {
  if (model.n_se_mean == 0.0) return;
  const int count = sample_se_count(rng, model);
  for (int i = 0; i < count; ++i) apply_recoil(state, sample_recoil(rng, model));
}

}  // namespace kicksim
