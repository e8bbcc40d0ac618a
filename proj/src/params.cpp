#include "kicksim/params.hpp"

#include <cmath>
#include <numeric>

#include "kicksim/constants.hpp"
#include "kicksim/errors.hpp"

namespace kicksim {

namespace {

double effective_mass(const PhysicalConfig& cfg) {
  return cfg.mass > 0.0 ? cfg.mass : constants::cesium_mass;
}

double lattice_wavenumber_G(const PhysicalConfig& cfg) {
  // G = 2 k_L = 4 pi / lambda_L
  return 4.0 * constants::pi / cfg.lambda_L;
}

}  // namespace

std::string PhysicalConfig::validate() const {
  if (!(lambda_L > 0.0)) throw ValidationError("lambda_L must be > 0");
  if (mass < 0.0) throw ValidationError("mass must be >= 0 (0 selects cesium)");
  if (!(period > 0.0)) throw ValidationError("period must be > 0");
  if (pulse_duration < 0.0) throw ValidationError("pulse_duration must be >= 0");
  if (n_se_mean < 0.0) throw ValidationError("n_se_mean must be >= 0");
  if (temperature_fwhm < 0.0) throw ValidationError("temperature_fwhm must be >= 0");
  if (period < 10.0 * pulse_duration)
    return "warning: T < 10 t_p, delta-kick idealization is questionable";
  return {};
}

void DimensionlessParams::validate() const {
  if (tau < 0.0) throw ValidationError("tau must be >= 0");
  if (phi_d < 0.0) throw ValidationError("phi_d must be >= 0");
  if (n_kicks < 0) throw ValidationError("n_kicks must be >= 0");
  if (n_se_mean < 0.0) throw ValidationError("n_se_mean must be >= 0");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
  if (initial_fwhm < 0.0) throw ValidationError("initial_fwhm must be >= 0");
}

int required_n_max(double p0_max_abs, int n_kicks, double phi_d) {
  const double reach = static_cast<double>(n_kicks) * phi_d;
  return static_cast<int>(std::ceil(p0_max_abs + reach + 5.0 * std::sqrt(reach)));
}

DimensionlessParams to_dimensionless(const PhysicalConfig& cfg) {
  cfg.validate();
  const double G = lattice_wavenumber_G(cfg);
  DimensionlessParams p;
  p.tau = constants::hbar * G * G * cfg.period / effective_mass(cfg);
  if (cfg.rabi_frequency > 0.0 && cfg.detuning != 0.0)
    p.phi_d = compute_phi_d(cfg.rabi_frequency, cfg.pulse_duration, cfg.detuning);
  p.n_se_mean = cfg.n_se_mean;
  // hbar k_L -> hbar G with G = 2 k_L
  p.initial_fwhm = cfg.temperature_fwhm / 2.0;
  return p;
}

double period_from_tau(double tau, const PhysicalConfig& cfg) {
  const double G = lattice_wavenumber_G(cfg);
  return tau * effective_mass(cfg) / (constants::hbar * G * G);
}

double compute_phi_d(double rabi_frequency, double pulse_duration, double detuning) {
  if (detuning == 0.0) throw ValidationError("detuning must be nonzero");
  if (pulse_duration < 0.0) throw ValidationError("pulse_duration must be >= 0");
  return rabi_frequency * rabi_frequency * pulse_duration / (8.0 * detuning);
}

std::optional<ResonanceInfo> resonance_info(double tau) {
  if (!(tau > 0.0)) return std::nullopt;
  constexpr double kTol = 1e-12;
  constexpr int kMaxDenominator = 64;

  const double x = tau / (4.0 * constants::pi);
  // Smallest matching denominator gives the fraction in lowest terms.
  for (int q = 1; q <= kMaxDenominator; ++q) {
    const double pr = std::round(x * q);
    if (std::abs(x * q - pr) > kTol * q) continue;
    const int r = static_cast<int>(pr);
    if (r < 1) return std::nullopt;  // tau ~ 0
    if (std::gcd(r, q) != 1) continue;

    ResonanceInfo info;
    info.r = r;
    info.q = q;
    info.periodic_beta.reserve(2 * r);
    for (int m = 0; m < 2 * r; ++m)
      info.periodic_beta.push_back(static_cast<double>(m) / (2.0 * r));
    if (q == 1) {
      info.ballistic_beta = {0.0, 0.5};
    } else if (q == 2) {
      info.ballistic_beta = {0.5};
    } else {
      info.ballistic_beta = info.periodic_beta;
      info.higher_order = true;
    }
    return info;
  }
  return std::nullopt;
}

}  // namespace kicksim
