#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cgi/cli/commands.hpp"
#include "cgi/cli/config.hpp"
#include "cgi/cli/csv.hpp"
#include "cgi/errors.hpp"
#include "cgi/interferometer.hpp"

using namespace cgi;
using namespace cgi::cli;

namespace {

std::string run(std::string_view command, const RunConfig& cfg, int expected = exit_ok) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = dispatch(command, cfg, out, err);
  CHECK_MESSAGE(code == expected, err.str());
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int data_rows(const std::string& csv) {
  int n = 0;
  for (const auto& l : lines(csv)) n += !l.empty() && l[0] != '#';
  return n - 1;
}

std::string error_of(const std::string& ini, const Overrides& o = {}) {
  try {
    parse_config_text(ini, o);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, -1.3623081147670746e-2, 28252749.132087965, 5e-324, 1e300, 0.0}) {
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("csv writer enforces the header width") {
  std::ostringstream out;
  CsvWriter csv(out, {"a", "b"});
  csv.row({1.0, 2.0});
  CHECK_THROWS(csv.row({1.0}));
  csv.comment("rms", 0.25);
  CHECK(out.str() == "a,b\n1,2\n# rms=0.25\n");
}

TEST_CASE("ranges") {
  const auto r = parse_range("0.1:0.6:0.05");
  CHECK(r.values().size() == 11);
  CHECK(r.values().back() == doctest::Approx(0.6));
  CHECK(parse_range("2.5").values() == std::vector<double>{2.5});
  CHECK_THROWS_AS(parse_range("1:2"), InputError);
  CHECK_THROWS_AS(parse_range("1:0:0.1"), InputError);
  CHECK_THROWS_AS(parse_range("1:2:0"), InputError);
  CHECK_THROWS_AS(parse_range("a:b:c"), InputError);
}

TEST_CASE("flags override file values") {
  Overrides o;
  o.N = 2;
  const auto cfg = parse_config_text("[laser]\nk = 4e6\nN = 1\n[potential]\ng = 9.81\ngamma0 = -2.7e-6\n", o);
  CHECK(cfg.laser.N == 2);
  CHECK(cfg.laser.k == 4e6);
  CHECK(cfg.potential.kind == PotentialKind::Ideal);
}

TEST_CASE("full configuration") {
  const auto cfg = parse_config_text(R"(
; comment
[constants]
c = inf
[atom]
mass_amu = 133
[laser]
omega_R = 2e7
z_upper = 12
z_lower = -1
mirror_detuning = 1e-9
[run]
z0 = 1.5
v0 = +3
T_R = 0.4
n_steps = 1000
delta_h = 2
tr = 0.2:0.4:0.1
z0_range = 1:2:0.5
launch = true
threads = 3
[potential]
synth = default
bumps = 2:1:1e-8, 5:1.5:-2e-8
roi = 0:9
degree = 12
)");
  CHECK(cfg.consts.has_infinite_c());
  CHECK(cfg.atom.mass == doctest::Approx(133 * cfg.consts.amu));
  CHECK(cfg.laser.z_lower == -1.0);
  CHECK(cfg.params.v0 == 3.0);
  CHECK(cfg.params.n_steps == 1000);
  CHECK(cfg.tr.values().size() == 3);
  CHECK(cfg.z0_range->values().size() == 3);
  CHECK(cfg.launch);
  CHECK(cfg.threads == 3);
  CHECK(cfg.potential.kind == PotentialKind::Synth);
  CHECK(cfg.potential.synth.bumps.size() == 2);
  CHECK(cfg.potential.synth.roi.z_max == 9.0);
  CHECK(cfg.potential.synth.fit_degree == 12);
}

TEST_CASE("configuration errors") {
  CHECK(error_of("[laser]\nN = 1\n") == "no potential selected");
  CHECK(error_of("") == "no potential selected");
  CHECK(error_of("[potential]\nroi = 0:1\n") == "no potential selected");
  CHECK(error_of("[potential]\ng = 9.81\ncsv = x.csv\n").find("conflicting") != std::string::npos);
  CHECK(error_of("[laser]\nwavelength = 780e-9\n[potential]\ng = 1\n").find("config line 2") != std::string::npos);
  CHECK(error_of("[laser]\nwavelength = 780e-9\n[potential]\ng = 1\n").find("unknown key") != std::string::npos);
  CHECK(error_of("[lasers]\nN = 1\n[potential]\ng = 1\n").find("unknown section") != std::string::npos);
  CHECK(error_of("[laser]\nN = two\n[potential]\ng = 1\n").find("config line 2") != std::string::npos);
  CHECK(error_of("[laser]\nN = 1\nN = 2\n[potential]\ng = 1\n").find("config line 3") != std::string::npos);
  CHECK(error_of("[potential]\ng = 1\nroi = 0:1\n").find("not used") != std::string::npos);
  CHECK(error_of("[potential]\ncsv = /nonexistent/profile.csv\n").find("not found") != std::string::npos);
  CHECK(error_of("[potential]\ncoeffs = 0, 9.81, x\n").find("expected a number") != std::string::npos);
  Overrides bad;
  bad.potential = "magic";
  CHECK(error_of("", bad).find("unknown potential") != std::string::npos);
  CHECK_THROWS_AS(parse_config_text("[run]\nn_steps = 3\n[potential]\ng = 1\n"), DomainError);
}

TEST_CASE("--potential selects a family and ignores the others' keys") {
  Overrides o;
  o.potential = "ideal";
  const auto cfg = parse_config_text("[potential]\ncsv = /nonexistent.csv\ndegree = 4\n", o);
  CHECK(cfg.potential.kind == PotentialKind::Ideal);
  Overrides only;
  only.potential = "synth";
  CHECK(parse_config_text("", only).potential.kind == PotentialKind::Synth);
}

TEST_CASE("csv potential is fitted at the requested degree") {
  const std::string dir = ".";
  {
    std::ofstream f("test_cli_profile.csv");
    f << std::setprecision(17) << "z_m,g_mps2\n";
    for (int i = 0; i <= 40; ++i) f << 0.25 * i << ',' << 9.81 - 3e-6 * 0.25 * i << '\n';
  }
  {
    std::ofstream f("test_cli.ini");
    f << "[potential]\ncsv = test_cli_profile.csv\ndegree = 8\n";
  }
  const auto cfg = parse_config(std::filesystem::path("test_cli.ini"));
  CHECK(cfg.potential.kind == PotentialKind::Csv);
  const auto model = build_potential(cfg.potential);
  CHECK(model.kind() == FieldKind::Sampled);
  CHECK(model.degree() == 9);
  CHECK(model.gradient(5.0) == doctest::Approx(-3e-6).epsilon(1e-6));
  std::remove("test_cli_profile.csv");
  std::remove("test_cli.ini");
  CHECK_THROWS_AS(parse_config(std::filesystem::path("/nonexistent/config.ini")), InputError);
}

TEST_CASE("thread cap from the environment") {
  setenv("CGI_SIM_THREADS", "2", 1);
  CHECK(effective_threads(8) == 2);
  CHECK(effective_threads(1) == 1);
  unsetenv("CGI_SIM_THREADS");
  CHECK(effective_threads(8) == 8);
  CHECK(effective_threads(0) == 1);
}

TEST_CASE("cgi command") {
  Overrides o;
  o.potential = "ideal";
  o.z0 = "5";
  o.v0 = 6.0;
  const auto cfg = parse_config_text("", o);
  const auto out = lines(run("cgi", cfg));
  REQUIRE(out.size() == 2);
  CHECK(out[0] ==
        "mzi_total_rad,sddi_total_rad,differential_rad,mzi_prop_rad,mzi_kick_rad,mzi_sep_rad,"
        "sddi_prop_rad,sddi_kick_rad,sddi_sep_rad,mzi_dz_m,sddi_dz_m");
  const auto result = run_cgi(cfg.laser, cfg.atom, cfg.params, build_potential(cfg.potential), cfg.consts);
  CHECK(out[1].rfind(format_number(result.mzi.total) + "," + format_number(result.sddi.total) + "," +
                         format_number(result.differential) + ",", 0) == 0);
}

TEST_CASE("table1 command") {
  Overrides o;
  o.potential = "ideal";
  const auto out = run("table1", parse_config_text("", o));
  CHECK(data_rows(out) == 10);
  CHECK(lines(out)[0] == "id,expr,pref_mzi,pref_sddi,pref_diff,value_rad");
  CHECK(lines(out)[4].find("gradient_gravity,N k g Gamma0 T_R^4,-7/6,-7/6,0,") == 0);
}

TEST_CASE("sweep-tr command") {
  Overrides o;
  o.potential = "ideal";
  o.tr = "0.1:0.6:0.05";
  o.steps = 2000;
  auto cfg = parse_config_text("", o);
  const auto out = run("sweep-tr", cfg);
  CHECK(data_rows(out) == 11);
  CHECK(out.find("# quartic_c4=") != std::string::npos);
  CHECK(out.find("# quartic_residual_rms_rad=") != std::string::npos);
  cfg.threads = 1;
  const auto serial = run("sweep-tr", cfg);
  cfg.threads = 4;
  CHECK(run("sweep-tr", cfg) == serial);

  o.tr = "0.1:0.3:0.1";
  run("sweep-tr", parse_config_text("", o), exit_config);
}

TEST_CASE("sweep-z0, estimate, simulate, synth-profile, fsl-detuning") {
  Overrides o;
  o.potential = "synth";
  o.steps = 1000;
  o.z0 = "1:3:1";
  o.T_R = 0.3;
  o.v0 = 3.0;
  auto cfg = parse_config_text("", o);
  CHECK(data_rows(run("sweep-z0", cfg)) == 3);

  const auto est = run("estimate", cfg);
  CHECK(lines(est)[0] == "z_eval_m,gamma_hat_si,gamma_true_si,phase_rad,z_launch_m");
  CHECK(data_rows(est) == 3);
  CHECK(est.find("# rms_error=") != std::string::npos);

  cfg.decimate = 100;
  const auto sim = run("simulate", cfg);
  CHECK(data_rows(sim) == 11);
  CHECK(lines(sim)[0] == "t_s,mzi_up_m,mzi_low_m,sddi_up_m,sddi_low_m");

  const auto prof = run("synth-profile", cfg);
  CHECK(lines(prof)[0] == "z_m,g_mps2,gamma_si");
  CHECK(data_rows(prof) == cfg.potential.synth.samples);
  const auto samples = parse_profile_csv(prof);
  CHECK(samples.z.size() == cfg.potential.synth.samples);

  Overrides f;
  f.potential = "ideal";
  f.v0 = 5.0;
  f.tr = "0.2";
  const auto fsl = lines(run("fsl-detuning", parse_config_text("", f)));
  CHECK(fsl[0].rfind("t_r_s,delta_det,nu_det_hz,pole_t_r_s", 0) == 0);
  CHECK(fsl.size() == 2);
}

TEST_CASE("exit codes") {
  Overrides o;
  o.potential = "synth";
  o.z0 = "7.9";
  o.v0 = 6.0;
  o.steps = 1000;
  run("cgi", parse_config_text("", o), exit_region);

  Overrides ideal;
  ideal.potential = "ideal";
  ideal.v0 = 5.0;
  auto cfg = parse_config_text("", ideal);
  const double pole = (5.0 + recoil_quantities(cfg.laser, cfg.atom).v_rec) / 9.81;
  cfg.tr = {pole, pole, 1.0};
  run("fsl-detuning", cfg, exit_region);

  run("no-such-command", cfg, exit_config);
  cfg.z0_range.reset();
  run("sweep-z0", cfg, exit_config);
  run("synth-profile", cfg, exit_config);

  CHECK(exit_code_for(InputError("x")) == exit_config);
  CHECK(exit_code_for(SingularityError("x", 0.5)) == exit_region);
  CHECK(exit_code_for(std::runtime_error("x")) == exit_failure);
}

TEST_CASE("output file is written only on success") {
  Overrides o;
  o.potential = "ideal";
  o.out = "test_cli_out.csv";
  const auto cfg = parse_config_text("", o);
  CHECK(run("table1", cfg).empty());
  std::ifstream in("test_cli_out.csv");
  std::stringstream text;
  text << in.rdbuf();
  CHECK(data_rows(text.str()) == 10);
  std::remove("test_cli_out.csv");
}
