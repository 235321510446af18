#include <doctest.h>

#include <cmath>

#include "cgi/errors.hpp"
#include "cgi/estimator.hpp"

using namespace cgi;

namespace {

const AtomSpecies atom{};
const double ratio = std::cbrt(16.0 / 35.0);

PotentialModel constant_gradient(double gamma0, Region roi) {
  Eigen::VectorXd c(3);
  c << 0.0, 9.81, 0.5 * gamma0;
  return PotentialModel::polynomial(c, 0.0, roi);
}

}  // namespace

TEST_CASE("cubic mean of launch-mode parabolas") {
  CHECK(ratio == doctest::Approx(0.7703427).epsilon(1e-7));
  for (double g : {1.62, 9.81, 24.8}) {
    for (double dh : {0.3, 2.0, 7.0}) {
      const auto model = PotentialModel::ideal(g, 0.0);
      const auto lk = launch_from_height(dh, g);
      const auto traj = propagate_arm(model, {1.0, lk.v0, 0.0, {}}, {1.0, lk.v0, lk.T_R, 20000});
      CHECK(cubic_mean(traj) / dh == doctest::Approx(ratio).epsilon(1e-6));
    }
  }
  const auto still = propagate_arm(PotentialModel::ideal(0.0, 0.0), {3.0, 0.0, 0.0, {}}, {3.0, 0.0, 0.5, 100});
  CHECK(cubic_mean(still) == 0.0);
}

TEST_CASE("scale factor") {
  CHECK(scale_factor(LaserConfig{}, atom, 0.6) == doctest::Approx(5.0456e3).epsilon(1e-4));
  LaserConfig n2;
  n2.N = 2;
  CHECK(scale_factor(n2, atom, 0.6) == doctest::Approx(4.0 * scale_factor(LaserConfig{}, atom, 0.6)));
  CHECK(scale_factor(LaserConfig{}, atom, 1.2) == doctest::Approx(8.0 * scale_factor(LaserConfig{}, atom, 0.6)));
}

TEST_CASE("estimator is exact in the ideal field") {
  const auto model = PotentialModel::ideal(9.81, -2.7e-6);
  for (double z : {0.0, 3.0, 10.0}) {
    const auto e = estimate_gamma(model, LaserConfig{}, atom, z, 1.7658);
    CHECK(e.gamma_hat == doctest::Approx(-2.7e-6).epsilon(1e-4));
    CHECK(e.T_R == doctest::Approx(0.6).epsilon(1e-5));
    CHECK(e.z_launch == doctest::Approx(z - ratio * 1.7658).epsilon(1e-6));
  }
}

TEST_CASE("no gradient, no estimate") {
  const auto model = PotentialModel::ideal(9.81, 0.0);
  CHECK(std::abs(estimate_gamma(model, LaserConfig{}, atom, 2.0, 1.0).gamma_hat) < 1e-9);
}

TEST_CASE("constant gradient over a region, several baselines") {
  const auto model = constant_gradient(-2.7e-6, {0.0, 10.0});
  for (double dh : {0.5, 1.5, 3.0}) {
    const auto z = default_eval_heights(model, LaserConfig{}, atom, dh);
    REQUIRE(!z.empty());
    const auto est = sweep_estimate(model, LaserConfig{}, atom, z, dh);
    CHECK(est.rms_error < 1e-4 * 2.7e-6);
    for (const auto& r : est.rows) CHECK(r.gamma_true == doctest::Approx(-2.7e-6));
  }
}

TEST_CASE("synthetic profile at a one-metre baseline") {
  const auto model = synthesize_profile(default_profile_spec());
  const auto z = default_eval_heights(model, LaserConfig{}, atom, 1.0, 0.25);
  double max_gamma = 0.0;
  for (double zi : z) max_gamma = std::max(max_gamma, std::abs(model.gradient(zi)));
  for (double zi : z) {
    const auto e = estimate_gamma(model, LaserConfig{}, atom, zi, 1.0);
    CHECK(std::abs(e.gamma_hat - model.gradient(zi)) / max_gamma < 0.01);
  }
}

TEST_CASE("sweep errors and signal grow with the baseline") {
  const auto model = synthesize_profile(default_profile_spec());
  EstimatorOptions opts;
  opts.n_steps = 4000;
  double last_rms = 0.0;
  double last_phase = 0.0;
  for (double dh : {0.5, 1.5, 3.0}) {
    const auto z = default_eval_heights(model, LaserConfig{}, atom, 3.0, 0.25);
    const auto est = sweep_estimate(model, LaserConfig{}, atom, z, dh, opts);
    CHECK(est.rms_error > last_rms);
    CHECK(est.mean_abs_phase > last_phase);
    if (last_phase > 0.0) {
      // mean |phase| scales as T_R^3, i.e. as delta_h^(3/2).
      const double expected = std::pow(dh / (dh == 1.5 ? 0.5 : 1.5), 1.5);
      CHECK(est.mean_abs_phase / last_phase == doctest::Approx(expected).epsilon(0.08));
    }
    last_rms = est.rms_error;
    last_phase = est.mean_abs_phase;
  }
}

TEST_CASE("parallel sweep equals serial sweep") {
  const auto model = synthesize_profile(default_profile_spec());
  const auto z = default_eval_heights(model, LaserConfig{}, atom, 2.0, 0.5);
  EstimatorOptions serial;
  serial.n_steps = 2000;
  EstimatorOptions parallel = serial;
  parallel.threads = 4;
  const auto a = sweep_estimate(model, LaserConfig{}, atom, z, 2.0, serial);
  const auto b = sweep_estimate(model, LaserConfig{}, atom, z, 2.0, parallel);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].z_eval == b.rows[i].z_eval);
    CHECK(a.rows[i].gamma_hat == b.rows[i].gamma_hat);
    CHECK(a.rows[i].phase == b.rows[i].phase);
  }
  CHECK(a.rms_error == b.rms_error);
}

TEST_CASE("estimator region errors") {
  const auto model = synthesize_profile(default_profile_spec());
  CHECK_THROWS_AS(sweep_estimate(model, LaserConfig{}, atom, {}, 1.0), DomainError);
  try {
    estimate_gamma(model, LaserConfig{}, atom, 0.2, 2.0);
    FAIL("expected a region error");
  } catch (const ExtrapolationError& e) {
    CHECK(e.height() == doctest::Approx(0.2 - ratio * 2.0).epsilon(1e-3));
  }
  CHECK_THROWS_AS(estimate_gamma(model, LaserConfig{}, atom, 7.8, 2.0), RegionError);
  CHECK_THROWS_AS(default_eval_heights(PotentialModel::ideal(9.81, 0.0), LaserConfig{}, atom, 1.0), DomainError);
  for (double z : default_eval_heights(model, LaserConfig{}, atom, 3.0)) {
    CHECK_NOTHROW(estimate_gamma(model, LaserConfig{}, atom, z, 3.0, {2000}));
  }
}

TEST_CASE("sampling plan") {
  LaserConfig laser;
  laser.N = 4;
  const auto p = plan_sampling(laser, atom, 2.7e-6, 1e-3, 9.81);
  CHECK(p.T_R_min == doctest::Approx(0.0997).epsilon(1e-3));
  CHECK(p.nu_max == doctest::Approx(1.0 / (2.0 * p.T_R_min)));
  CHECK(p.delta_h_min == doctest::Approx(0.5 * 9.81 * p.T_R_min * p.T_R_min));

  const double f1 = scale_factor(laser, atom, 1.0);
  const auto p03 = plan_sampling(laser, atom, 2.7e-6, f1 * 2.7e-6 * 0.027, 9.81);
  CHECK(p03.T_R_min == doctest::Approx(0.3));
  CHECK(p03.nu_max == doctest::Approx(1.67).epsilon(2e-3));

  const auto limit = plan_sampling(laser, atom, 2.7e-6, 0.0, 9.81);
  CHECK(limit.T_R_min == 0.0);
  CHECK(std::isinf(limit.nu_max));
  CHECK_THROWS_AS(plan_sampling(laser, atom, 0.0, 1e-3, 9.81), DomainError);
}
