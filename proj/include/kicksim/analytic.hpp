#pragma once

#include <vector>

#include "kicksim/histogram.hpp"
#include "kicksim/initial.hpp"

namespace kicksim {

/// J_n(x), Bessel function of the first kind, integer order. Good to at
/// least 10 significant digits for |order| <= 1e4. Negative orders and
/// arguments handled by reflection.
double bessel_j(int order, double x);

/// J_0(x) .. J_max_order(x) in one downward (Miller) recurrence pass,
/// normalized with J_0 + 2 sum J_2k = 1. Requires x >= 0.
std::vector<double> bessel_j_row(double x, int max_order);

/// Midpoint-rule settings for the stationary-distribution double integral.
/// Midpoint keeps nodes off the csc(alpha) singularities at alpha = 0, pi,
/// 2pi; odd node counts are rounded up to even so no node lands on pi.
struct QuadratureSpec {
  int nodes_xi = 512;
  int nodes_alpha = 512;
  int order_cutoff = 200;  ///< orders beyond this are dropped when arg < order/2
  double convergence_tol = 1e-4;

  void validate() const;  ///< nodes >= 64 or ValidationError
};

/// Asymptotic coarse-grained momentum distribution at quantum resonance:
///   P_s(n) = sum_n' h(n') int dxi/2pi int dalpha/2pi J^2_{n-n'}(f),
///   f(xi, alpha) = phi_d sin(xi) csc(alpha).
/// Evaluated at spec resolution and at doubled nodes; throws QuadratureError
/// when the two differ by more than convergence_tol at any n. Returns bins
/// n in [-n_range, n_range].
MomentumHistogram stationary_distribution(double phi_d, const InitialDistribution& h,
                                          int n_range, const QuadratureSpec& spec);

/// Same integral with the roles of sin(xi) and csc(alpha) exchanged; a
/// test hook for the integration-domain symmetry (single resolution, no
/// doubling check).
std::vector<double> stationary_kernel(double phi_d, int max_order,
                                      const QuadratureSpec& spec, bool swap_arguments);

/// Single-atom distribution after N resonant kicks from rest: J_n^2(N phi_d).
/// Support is chosen wide enough that the missing tail is negligible for
/// second-moment purposes (< 1e-10 absolute).
MomentumHistogram resonant_profile(double phi_d, int n_kicks);

/// Mean-energy growth law (D/2 + phi_d^2/4) N with D = n_se_mean / 12.
double energy_law(double phi_d, int n_kicks, double n_se_mean);

/// D = n_se_mean / 12, per-kick momentum variance added by spontaneous
/// emission.
double diffusion_coefficient(double n_se_mean);

}  // namespace kicksim
