#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "kicksim/constants.hpp"
#include "kicksim/errors.hpp"
#include "kicksim/params.hpp"
#include "kicksim/rng.hpp"

using namespace kicksim;

namespace {
constexpr double kTwoPi = 2.0 * constants::pi;
}

TEST_CASE("half-Talbot period maps to tau = 2 pi") {
  PhysicalConfig cfg;  // cesium defaults, lambda 894.7 nm
  cfg.period = 66.7e-6;
  const DimensionlessParams p = to_dimensionless(cfg);
  CHECK(p.tau == doctest::Approx(kTwoPi).epsilon(0.002));

  cfg.period = 66.5e-6;
  CHECK(to_dimensionless(cfg).tau == doctest::Approx(kTwoPi).epsilon(0.005));
}

TEST_CASE("momentum width converts from hbar k_L to hbar G by halving") {
  PhysicalConfig cfg;
  cfg.temperature_fwhm = 12.0;
  CHECK(to_dimensionless(cfg).initial_fwhm == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("tau -> period round trip holds to 12 significant digits") {
  PhysicalConfig cfg;
  RandomStream rng(7);
  for (int i = 0; i < 200; ++i) {
    cfg.period = rng.uniform(1e-6, 3e-4);
    const double tau = to_dimensionless(cfg).tau;
    CHECK(period_from_tau(tau, cfg) ==
          doctest::Approx(cfg.period).epsilon(1e-12));
  }
}

TEST_CASE("kick strength phi_d = Omega^2 t_p / 8 delta_L") {
  CHECK(compute_phi_d(0.0, 500e-9, 1e9) == 0.0);

  // Linearity in pulse duration.
  RandomStream rng(11);
  for (int i = 0; i < 50; ++i) {
    const double om = rng.uniform(1e8, 1e10);
    const double tp = rng.uniform(1e-8, 1e-6);
    const double det = rng.uniform(1e10, 1e12);
    CHECK(compute_phi_d(om, 2.0 * tp, det) ==
          doctest::Approx(2.0 * compute_phi_d(om, tp, det)).epsilon(1e-14));
  }

  // Operating point of the experiment: t_p = 500 ns, delta_L = 2 pi x 30 GHz,
  // and the Rabi frequency back-solved for a 0.8 pi kick strength.
  const double omega = 2753153860.5818287;
  const double phi = compute_phi_d(omega, 500e-9, kTwoPi * 30e9);
  CHECK(phi == doctest::Approx(0.8 * constants::pi).epsilon(1e-12));

  CHECK_THROWS_AS(compute_phi_d(1e9, 500e-9, 0.0), ValidationError);
}

TEST_CASE("validation names the offending field") {
  PhysicalConfig cfg;
  cfg.lambda_L = -1.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("lambda_L"), ValidationError);

  cfg = PhysicalConfig{};
  cfg.period = 0.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("period"), ValidationError);

  cfg = PhysicalConfig{};
  cfg.n_se_mean = -0.1;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n_se_mean"), ValidationError);
}

TEST_CASE("delta-kick idealization warning when T < 10 t_p") {
  PhysicalConfig cfg;
  cfg.period = 4e-6;
  cfg.pulse_duration = 500e-9;
  CHECK(!cfg.validate().empty());
  cfg.period = 66.7e-6;
  CHECK(cfg.validate().empty());
}

TEST_CASE("main resonances are classified correctly") {
  const auto at_4pi = resonance_info(4.0 * constants::pi);
  REQUIRE(at_4pi.has_value());
  CHECK(at_4pi->r == 1);
  CHECK(at_4pi->q == 1);
  CHECK(at_4pi->ballistic_beta == std::vector<double>{0.0, 0.5});
  CHECK_FALSE(at_4pi->higher_order);

  const auto at_2pi = resonance_info(kTwoPi);
  REQUIRE(at_2pi.has_value());
  CHECK(at_2pi->r == 1);
  CHECK(at_2pi->q == 2);
  CHECK(at_2pi->ballistic_beta == std::vector<double>{0.5});

  const auto at_6pi = resonance_info(6.0 * constants::pi);
  REQUIRE(at_6pi.has_value());
  CHECK(at_6pi->r == 3);
  CHECK(at_6pi->q == 2);

  const auto at_pi = resonance_info(constants::pi);  // 4 pi / 4
  REQUIRE(at_pi.has_value());
  CHECK(at_pi->r == 1);
  CHECK(at_pi->q == 4);
  CHECK(at_pi->higher_order);
  CHECK(at_pi->ballistic_beta == at_pi->periodic_beta);
}

TEST_CASE("periodic beta class has exactly 2r members in [0, 1)") {
  for (int q = 1; q <= 8; ++q) {
    for (int r = 1; r <= 10; ++r) {
      if (std::gcd(r, q) != 1) continue;
      const double tau = 4.0 * constants::pi * r / q;
      const auto info = resonance_info(tau);
      REQUIRE(info.has_value());
      CHECK(info->r == r);
      CHECK(info->q == q);
      CHECK(info->periodic_beta.size() == static_cast<std::size_t>(2 * r));
      std::set<double> unique(info->periodic_beta.begin(), info->periodic_beta.end());
      CHECK(unique.size() == info->periodic_beta.size());
      for (double b : info->periodic_beta) {
        CHECK(b >= 0.0);
        CHECK(b < 1.0);
      }
    }
  }
}

TEST_CASE("irrational-surrogate kicking periods are off-resonance") {
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK_FALSE(resonance_info(kTwoPi * golden).has_value());
  CHECK_FALSE(resonance_info(kTwoPi * std::sqrt(2.0)).has_value());
  CHECK_FALSE(resonance_info(0.0).has_value());
  CHECK_FALSE(resonance_info(-1.0).has_value());
}

TEST_CASE("ballistic headroom rule") {
  // Wings at n ~ N phi_d plus five standard widths of margin.
  const int n = required_n_max(12.0, 30, 0.8 * constants::pi);
  const double reach = 30.0 * 0.8 * constants::pi;
  CHECK(n == static_cast<int>(std::ceil(12.0 + reach + 5.0 * std::sqrt(reach))));

  DimensionlessParams p;
  p.tau = kTwoPi;
  p.n_max = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.n_max = 8;
  p.n_atoms = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
