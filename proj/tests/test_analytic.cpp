#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kicksim/analytic.hpp"
#include "kicksim/bloch.hpp"
#include "kicksim/constants.hpp"
#include "kicksim/errors.hpp"
#include "kicksim/params.hpp"

using namespace kicksim;

namespace {
constexpr double kPi = constants::pi;
}

TEST_CASE("bessel_j special values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
}

TEST_CASE("bessel_j against independently computed references") {
  // Reference values from a 30-digit arbitrary-precision evaluation.
  CHECK(bessel_j(0, 2.5) == doctest::Approx(-0.048383776468197996).epsilon(1e-12));
  CHECK(bessel_j(5, 2.5) == doctest::Approx(0.01950162513450322).epsilon(1e-12));
  CHECK(bessel_j(1, 0.8 * kPi) == doctest::Approx(0.49378447048537643).epsilon(1e-12));
  CHECK(bessel_j(40, 10.0) == doctest::Approx(6.0308953123469066e-21).epsilon(1e-10));
  CHECK(bessel_j(100, 50.0) == doctest::Approx(1.1159273690838093e-21).epsilon(1e-10));
  CHECK(bessel_j(0, 1000.0) == doctest::Approx(0.024786686152420175).epsilon(1e-10));
  CHECK(bessel_j(3, 700.5) == doctest::Approx(-0.022734157119578928).epsilon(1e-10));
}

TEST_CASE("bessel_j reflection rules") {
  CHECK(bessel_j(-3, 2.0) == doctest::Approx(-bessel_j(3, 2.0)).epsilon(1e-14));
  CHECK(bessel_j(-4, 2.0) == doctest::Approx(bessel_j(4, 2.0)).epsilon(1e-14));
  CHECK(bessel_j(3, -2.0) == doctest::Approx(-bessel_j(3, 2.0)).epsilon(1e-14));
  CHECK(bessel_j(2, -2.0) == doctest::Approx(bessel_j(2, 2.0)).epsilon(1e-14));
}

TEST_CASE("bessel completeness identity at z = 5") {
  double sum = 0.0;
  for (int n = -50; n <= 50; ++n) {
    const double j = bessel_j(n, 5.0);
    sum += j * j;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bessel_j agrees with the standard library implementation") {
  // Independent cross-check over scattered moderate arguments.
  for (double x : {0.1, 0.7, 1.3, 3.7, 8.2, 14.9, 33.0, 61.5}) {
    for (int n : {0, 1, 2, 5, 11, 24}) {
      const double mine = bessel_j(n, x);
      const double ref = std::cyl_bessel_j(n, x);
      CHECK(mine == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("bessel row matches scalar calls") {
  const auto row = bessel_j_row(7.3, 30);
  for (int n = 0; n <= 30; ++n)
    CHECK(row[n] == doctest::Approx(bessel_j(n, 7.3)).epsilon(1e-13));
}

TEST_CASE("resonant profile basics") {
  const MomentumHistogram rest = resonant_profile(0.8 * kPi, 0);
  CHECK(rest.at(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rest.total() == doctest::Approx(1.0).epsilon(1e-12));

  // Second moment identity sum n^2 J_n^2(z) = z^2 / 2.
  for (int N : {1, 5, 30}) {
    const double z = 0.8 * kPi * N;
    const MomentumHistogram prof = resonant_profile(0.8 * kPi, N);
    CHECK(prof.total() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(prof.second_moment() - 0.5 * z * z) < 1e-8);
  }
}

TEST_CASE("resonant profile matches step evolution at tau = 2 pi, beta = 1/2") {
  const double phi = 0.8 * kPi;
  const int N = 30;
  const int n_max = required_n_max(1.0, N, phi);
  BlochState state = BlochState::plane_wave(n_max, 0.5);
  for (int k = 0; k < N; ++k) step(state, phi, 2.0 * kPi);

  const MomentumHistogram prof = resonant_profile(phi, N);
  for (int n = -n_max; n <= n_max; ++n) {
    const double sim = std::norm(state.at(n));
    CHECK(sim == doctest::Approx(prof.at(n)).epsilon(1e-8));
  }
}

TEST_CASE("energy growth law") {
  CHECK(energy_law(0.8 * kPi, 0, 0.0) == 0.0);
  // phi_d^2 N / 4 at the paper's operating point.
  CHECK(energy_law(0.8 * kPi, 30, 0.0) == doctest::Approx(47.374).epsilon(1e-4));
  CHECK(diffusion_coefficient(0.12) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(energy_law(0.0, 10, 0.12) == doctest::Approx(10.0 * 0.005).epsilon(1e-12));
}

TEST_CASE("stationary distribution is symmetric and normalizable") {
  QuadratureSpec spec;
  const InitialDistribution h = InitialDistribution::delta(0.0);
  const MomentumHistogram ps = stationary_distribution(0.8 * kPi, h, 30, spec);

  for (int n = 0; n <= 30; ++n) {
    CHECK(ps.at(n) >= 0.0);
    CHECK(ps.at(n) == doctest::Approx(ps.at(-n)).epsilon(1e-8));
  }
}

TEST_CASE("stationary distribution tail decays like n^-2") {
  QuadratureSpec spec;
  const InitialDistribution h = InitialDistribution::delta(0.0);
  const MomentumHistogram ps = stationary_distribution(0.8 * kPi, h, 40, spec);

  // Log-log least-squares slope over n in [15, 40].
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = 15; n <= 40; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(ps.at(n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  CHECK(std::abs(slope + 2.0) < 0.2);
}

TEST_CASE("stationary distribution mass and partial second moment vs cutoff") {
  QuadratureSpec spec;
  const InitialDistribution h = InitialDistribution::delta(0.0);
  const MomentumHistogram ps = stationary_distribution(0.8 * kPi, h, 120, spec);

  // Total mass approaches 1 from below as the cutoff grows.
  const auto partial_mass = [&](int cut) {
    double m = 0.0;
    for (int n = -cut; n <= cut; ++n) m += ps.at(n);
    return m;
  };
  CHECK(partial_mass(30) < partial_mass(60));
  CHECK(partial_mass(60) < partial_mass(120));
  CHECK(partial_mass(120) > 0.95);
  CHECK(partial_mass(120) <= 1.0 + 1e-6);

  // Divergent second moment: with a 1/n^2 tail the partial second moment
  // grows linearly in the cutoff, so equal cutoff increments add equal
  // amounts.
  const auto partial_second = [&](int cut) {
    double s = 0.0;
    for (int n = -cut; n <= cut; ++n) s += static_cast<double>(n) * n * ps.at(n);
    return s;
  };
  const double inc1 = partial_second(80) - partial_second(40);
  const double inc2 = partial_second(120) - partial_second(80);
  CHECK(inc2 == doctest::Approx(inc1).epsilon(0.25));
}

TEST_CASE("swapping the sin and csc arguments leaves the kernel unchanged") {
  QuadratureSpec spec;
  spec.nodes_xi = 256;
  spec.nodes_alpha = 256;
  const auto direct = stationary_kernel(0.8 * kPi, 20, spec, false);
  const auto swapped = stationary_kernel(0.8 * kPi, 20, spec, true);
  for (int m = 0; m <= 20; ++m)
    CHECK(direct[m] == doctest::Approx(swapped[m]).epsilon(1e-3));
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec spec;
  spec.nodes_xi = 32;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = QuadratureSpec{};
  spec.convergence_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}
