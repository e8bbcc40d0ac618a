#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kicksim {

/// Laboratory-frame parameters, SI units. Momentum widths are quoted in
/// units of hbar*k_L as in time-of-flight practice; the dimensionless side
/// works in hbar*G = 2*hbar*k_L.
struct PhysicalConfig {
  double lambda_L = 894.7e-9;   ///< laser wavelength [m]
  double mass = 0.0;            ///< atomic mass [kg]; defaults to cesium when 0
  double period = 66.7e-6;      ///< kick period T [s]
  double pulse_duration = 500e-9;  ///< t_p [s]
  double rabi_frequency = 0.0;     ///< Omega [rad/s], optional
  double detuning = 0.0;           ///< delta_L [rad/s], optional
  double n_se_mean = 0.0;          ///< mean SE events per kick cycle
  double temperature_fwhm = 12.0;  ///< initial momentum FWHM [hbar k_L]

  /// Throws ValidationError naming the first offending field. Returns a
  /// warning string when T < 10 t_p (the delta-kick idealization is shaky
  /// there), empty otherwise.
  std::string validate() const;
};

/// Everything the simulation needs, in kicked-rotor units.
struct DimensionlessParams {
  double tau = 0.0;       ///< kick period
  double phi_d = 0.0;     ///< kick strength
  int n_kicks = 0;        ///< N
  double n_se_mean = 0.0;
  int n_max = 0;          ///< ladder half-width; 0 = derive from headroom rule
  long n_atoms = 1;
  std::uint64_t seed = 0;
  double initial_fwhm = 6.0;  ///< momentum FWHM [hbar G]

  void validate() const;  ///< throws ValidationError
};

/// Ladder half-width needed so ballistic wings at n ~ N*phi_d stay at least
/// five standard widths inside the truncation edge.
int required_n_max(double p0_max_abs, int n_kicks, double phi_d);

/// tau = hbar G^2 T / M with G = 4 pi / lambda_L; FWHM converted from
/// hbar k_L to hbar G units.
DimensionlessParams to_dimensionless(const PhysicalConfig& cfg);

/// Inverse of the tau conversion: T = tau M / (hbar G^2).
double period_from_tau(double tau, const PhysicalConfig& cfg);

/// phi_d = Omega^2 t_p / (8 delta_L). Throws on zero detuning.
double compute_phi_d(double rabi_frequency, double pulse_duration, double detuning);

/// Resonant structure of a kicking period tau = 4 pi r / q.
struct ResonanceInfo {
  int r = 0;
  int q = 0;
  std::vector<double> periodic_beta;   ///< beta = m / 2r, 0 <= m < 2r
  std::vector<double> ballistic_beta;  ///< per q = 1, 2 rule
  bool higher_order = false;           ///< q >= 3: ballistic set is the periodic class
};

/// Rational detection of tau / 4 pi with denominators up to 64 and absolute
/// tolerance 1e-12. Absent value means off-resonance.
std::optional<ResonanceInfo> resonance_info(double tau);

}  // namespace kicksim
