#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "cgi/errors.hpp"
#include "cgi/potential.hpp"

using namespace cgi;

TEST_CASE("ideal field") {
  const auto m = PotentialModel::ideal(9.81, -2.7e-6);
  CHECK(m.kind() == FieldKind::Ideal);
  CHECK(m.degree() == 2);
  CHECK_FALSE(m.region().has_value());
  const auto f = m.eval(5.0);
  CHECK(f.g == doctest::Approx(9.81 - 1.35e-5));
  CHECK(f.gamma == doctest::Approx(-2.7e-6));
  CHECK(f.phi == doctest::Approx(49.05 - 1.35e-6 * 25.0));
  CHECK(m.eval(1e4).g == doctest::Approx(9.81 - 2.7e-2));
}

TEST_CASE("polynomial field about an origin, with a region") {
  Eigen::VectorXd c(4);
  c << 0.0, 9.8, -1.4e-6, 1e-9;
  const auto m = PotentialModel::polynomial(c, 3.0, Region{0.0, 6.0});
  CHECK(m.kind() == FieldKind::Polynomial);
  const double u = 5.0 - 3.0;
  CHECK(m.gravity(5.0) == doctest::Approx(9.8 - 2.8e-6 * u + 3e-9 * u * u));
  CHECK(m.gradient(5.0) == doctest::Approx(-2.8e-6 + 6e-9 * u));
  CHECK(m.potential_slope(5.0, 1.0) == doctest::Approx((m.potential(5.0) - m.potential(1.0)) / 4.0).epsilon(1e-13));
  CHECK_THROWS_AS(m.eval(6.5), ExtrapolationError);
  try {
    m.eval(-1.0);
  } catch (const ExtrapolationError& e) {
    CHECK(e.height() == -1.0);
    CHECK(std::string(e.what()).find("-1.0") != std::string::npos);
  }
  CHECK_THROWS_AS(PotentialModel::polynomial(c, 0.0, Region{1.0, 1.0}), DomainError);
}

TEST_CASE("sampled field round-trips through the fit") {
  Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(101, 0.0, 10.0);
  Eigen::VectorXd g = z.unaryExpr([](double x) { return 9.81 - 3e-6 * x + 4e-9 * x * x; });
  const auto m = PotentialModel::sampled(z, g, 8);
  CHECK(m.kind() == FieldKind::Sampled);
  CHECK(m.degree() == 9);
  CHECK(m.region()->z_min == 0.0);
  CHECK(m.region()->z_max == 10.0);
  CHECK(m.potential(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(m.gravity(7.3) == doctest::Approx(9.81 - 3e-6 * 7.3 + 4e-9 * 7.3 * 7.3).epsilon(1e-14));
  CHECK(m.gradient(7.3) == doctest::Approx(-3e-6 + 8e-9 * 7.3).epsilon(1e-6));
  CHECK(m.fit_residual_rms() < 1e-13);
}

TEST_CASE("default synthetic profile reproduces its target") {
  const ProfileSpec spec = default_profile_spec();
  const auto m = synthesize_profile(spec);
  double worst = 0.0;
  for (double z = 0.5; z <= 7.5; z += 0.05) {
    worst = std::max(worst, std::abs(m.gradient(z) - target_gamma(spec, z)));
    CHECK(std::abs(m.gravity(z) - target_gravity(spec, z)) < 5e-12);
  }
  // Well below the 1e-7 feature amplitude.
  CHECK(worst < 2e-9);
  CHECK(target_gravity(spec, spec.roi.z_min) == spec.g_ref);
}

TEST_CASE("target gravity integrates target gamma") {
  const ProfileSpec spec = default_profile_spec();
  const double h = 1e-3;
  for (double z : {1.0, 1.8, 4.3, 7.0}) {
    const double dg = (target_gravity(spec, z + h) - target_gravity(spec, z - h)) / (2 * h);
    CHECK(dg == doctest::Approx(target_gamma(spec, z)).epsilon(1e-5));
  }
}

TEST_CASE("profile spec validation") {
  ProfileSpec spec = default_profile_spec();
  spec.samples = 10;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = default_profile_spec();
  spec.bumps.push_back({1.0, 0.0, 1e-8});
  CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("profile CSV parsing") {
  const auto s = parse_profile_csv("z_m,g_mps2,comment\n# note\n0,9.81,a\n1.5, 9.80999 ,b\n\n3,9.8099\n");
  CHECK(s.z.size() == 3);
  CHECK(s.z(1) == 1.5);
  CHECK(s.g(1) == 9.80999);

  CHECK_THROWS_AS(parse_profile_csv("z,g\n0,1\n1,2\n"), InputError);
  CHECK_THROWS_AS(parse_profile_csv("z_m,g_mps2\n0,1\n0,2\n"), InputError);
  CHECK_THROWS_AS(parse_profile_csv("z_m,g_mps2\n0,1\n1,x\n"), InputError);
  CHECK_THROWS_AS(parse_profile_csv("z_m,g_mps2\n0,1\n"), InputError);
  CHECK_THROWS_AS(parse_profile_csv(""), InputError);
  CHECK_THROWS_AS(read_profile_csv("/nonexistent/profile.csv"), InputError);
  try {
    parse_profile_csv("z_m,g_mps2\n0,1\n1,oops\n");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("profile CSV from a file") {
  const std::string path = "test_potential_profile.csv";
  {
    std::ofstream f(path);
    f << std::setprecision(17) << "z_m,g_mps2\n";
    for (int i = 0; i <= 20; ++i) f << i * 0.5 << ',' << 9.81 - 3e-6 * i * 0.5 << '\n';
  }
  const auto s = read_profile_csv(path);
  CHECK(s.z.size() == 21);
  const auto m = PotentialModel::sampled(s.z, s.g, 2);
  CHECK(m.gradient(4.0) == doctest::Approx(-3e-6).epsilon(1e-8));
  std::remove(path.c_str());
}
