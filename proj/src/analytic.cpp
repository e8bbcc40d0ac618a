#include "kicksim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "kicksim/constants.hpp"
#include "kicksim/errors.hpp"

namespace kicksim {

namespace {

// Start order for the downward recurrence: far enough above both the target
// order and the turning point at m ~ x that the contaminating solution has
// decayed below double precision by the time orders of interest are reached.
int miller_start_order(double x, int max_order) {
  const double peak = std::max(static_cast<double>(max_order), x);
  return static_cast<int>(std::ceil(peak + 20.0 + 12.0 * std::sqrt(peak + 1.0)));
}

}  // namespace

std::vector<double> bessel_j_row(double x, int max_order) {
  if (x < 0.0) throw ValidationError("bessel_j_row requires x >= 0");
  if (max_order < 0) throw ValidationError("bessel_j_row requires max_order >= 0");

  std::vector<double> row(max_order + 1, 0.0);
  if (x < 1e-8) {
    // Series limit; the m >= 3 terms are below 1e-25.
    row[0] = 1.0 - 0.25 * x * x;
    if (max_order >= 1) row[1] = 0.5 * x;
    if (max_order >= 2) row[2] = 0.125 * x * x;
    return row;
  }

  const int start = miller_start_order(x, max_order);
  const double inv_x = 1.0 / x;

  double above = 0.0;     // J~_{m+1}, unnormalized
  double current = 1e-30; // J~_m
  double norm = 0.0;      // accumulates J~_0 + 2 sum J~_2k
  for (int m = start; m >= 0; --m) {
    const double below = 2.0 * (m + 1) * inv_x * current - above;
    above = current;
    current = below;
    if (m <= max_order) row[m] = current;
    if (m > 0 && (m & 1) == 0) norm += 2.0 * current;
    // Rescale before the growing solution overflows.
    if (std::abs(current) > 1e250) {
      constexpr double shrink = 1e-250;
      above *= shrink;
      current *= shrink;
      norm *= shrink;
      for (int k = m; k <= max_order; ++k) row[k] *= shrink;
    }
  }
  norm += current;  // J~_0
  const double scale = 1.0 / norm;
  for (double& v : row) v *= scale;
  return row;
}

double bessel_j(int order, double x) {
  double sign = 1.0;
  if (x < 0.0) {
    // J_n(-x) = (-1)^n J_n(x)
    x = -x;
    if (order & 1) sign = -sign;
  }
  if (order < 0) {
    // J_{-n}(x) = (-1)^n J_n(x)
    order = -order;
    if (order & 1) sign = -sign;
  }
  if (order > 10000) throw ValidationError("bessel_j supports |order| <= 1e4");
  return sign * bessel_j_row(x, order)[order];
}

void QuadratureSpec::validate() const {
  if (nodes_xi < 64 || nodes_alpha < 64)
    throw ValidationError("quadrature nodes must be >= 64 per axis");
  if (order_cutoff < 1) throw ValidationError("order_cutoff must be >= 1");
  if (!(convergence_tol > 0.0)) throw ValidationError("convergence_tol must be > 0");
}

namespace {

// K(m) = int dxi/2pi int dalpha/2pi J_m^2(f) for m = 0..max_order.
// J_m^2 is even in both m and f, so |f| suffices and K(-m) = K(m).
std::vector<double> kernel_at_resolution(double phi_d, int max_order, int nodes_xi,
                                         int nodes_alpha, int order_cutoff,
                                         bool swap_arguments) {
  if (nodes_xi & 1) ++nodes_xi;
  if (nodes_alpha & 1) ++nodes_alpha;

  std::vector<double> kernel(max_order + 1, 0.0);
  const double w = 1.0 / (static_cast<double>(nodes_xi) * nodes_alpha);
  const double h_xi = 2.0 * constants::pi / nodes_xi;
  const double h_alpha = 2.0 * constants::pi / nodes_alpha;

  for (int i = 0; i < nodes_xi; ++i) {
    const double xi = -constants::pi + (i + 0.5) * h_xi;
    for (int j = 0; j < nodes_alpha; ++j) {
      const double alpha = (j + 0.5) * h_alpha;
      const double f = swap_arguments ? phi_d * std::sin(alpha) / std::sin(xi)
                                      : phi_d * std::sin(xi) / std::sin(alpha);
      const double af = std::abs(f);
      // Uniform-asymptotic suppression: orders far above the argument are
      // dropped once past the cutoff.
      int m_stop = max_order;
      if (max_order > order_cutoff)
        m_stop = std::min(max_order,
                          std::max(order_cutoff, static_cast<int>(2.0 * af) + 1));
      const std::vector<double> row = bessel_j_row(af, m_stop);
      for (int m = 0; m <= m_stop; ++m) kernel[m] += w * row[m] * row[m];
    }
  }
  return kernel;
}

}  // namespace

std::vector<double> stationary_kernel(double phi_d, int max_order,
                                      const QuadratureSpec& spec, bool swap_arguments) {
  spec.validate();
  return kernel_at_resolution(phi_d, max_order, spec.nodes_xi, spec.nodes_alpha,
                              spec.order_cutoff, swap_arguments);
}

MomentumHistogram stationary_distribution(double phi_d, const InitialDistribution& h,
                                          int n_range, const QuadratureSpec& spec) {
  spec.validate();
  h.validate();
  if (n_range < 1) throw ValidationError("n_range must be >= 1");

  const int h_half = h.support_half_width();
  const int max_order = n_range + h_half;

  const std::vector<double> coarse =
      kernel_at_resolution(phi_d, max_order, spec.nodes_xi, spec.nodes_alpha,
                           spec.order_cutoff, false);
  const std::vector<double> fine =
      kernel_at_resolution(phi_d, max_order, 2 * spec.nodes_xi, 2 * spec.nodes_alpha,
                           spec.order_cutoff, false);

  const auto convolve = [&](const std::vector<double>& kernel) {
    MomentumHistogram out;
    out.n_min = -n_range;
    out.prob.assign(2 * n_range + 1, 0.0);
    for (int np = -h_half; np <= h_half; ++np) {
      const double weight = h.bin_mass(np);
      if (weight == 0.0) continue;
      for (int n = -n_range; n <= n_range; ++n)
        out.ref(n) += weight * kernel[std::abs(n - np)];
    }
    return out;
  };

  MomentumHistogram result = convolve(fine);
  const MomentumHistogram check = convolve(coarse);
  double shift = 0.0;
  for (int n = -n_range; n <= n_range; ++n)
    shift = std::max(shift, std::abs(result.at(n) - check.at(n)));
  if (shift > spec.convergence_tol)
    throw QuadratureError("stationary distribution not converged: node doubling moved P_s by " +
                          std::to_string(shift));
  return result;
}

MomentumHistogram resonant_profile(double phi_d, int n_kicks) {
  if (phi_d < 0.0) throw ValidationError("phi_d must be >= 0");
  if (n_kicks < 0) throw ValidationError("n_kicks must be >= 0");

  const double z = phi_d * n_kicks;
  const int reach =
      static_cast<int>(std::ceil(z + 14.0 * std::cbrt(z + 1.0) + 20.0));
  const std::vector<double> row = bessel_j_row(z, reach);

  MomentumHistogram out;
  out.n_min = -reach;
  out.kick_index = n_kicks;
  out.prob.assign(2 * reach + 1, 0.0);
  for (int n = -reach; n <= reach; ++n) {
    const double j = row[std::abs(n)];
    out.ref(n) = j * j;
  }
  return out;
}

double energy_law(double phi_d, int n_kicks, double n_se_mean) {
  if (phi_d < 0.0 || n_kicks < 0 || n_se_mean < 0.0)
    throw ValidationError("energy_law arguments must be >= 0");
  return (0.5 * diffusion_coefficient(n_se_mean) + 0.25 * phi_d * phi_d) * n_kicks;
}

double diffusion_coefficient(double n_se_mean) { return n_se_mean / 12.0; }

}  // namespace kicksim
