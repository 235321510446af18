#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cgi/cli/commands.hpp"
#include "cgi/cli/config.hpp"

int main(int argc, char** argv) {
  using namespace cgi::cli;

  CLI::App app{"Co-located gradiometric atom interferometer simulator"};
  app.set_version_flag("--version", "cgi-sim 1.0");

  std::string command;
  std::string config_path;
  Overrides o;

  std::vector<std::string> names(command_names().begin(), command_names().end());
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--N", o.N, "Momentum quanta per beam splitter");
  app.add_option("--k", o.k, "Effective wave number, 1/m");
  app.add_option("--tr", o.tr, "T_R in s, or START:STOP:STEP");
  app.add_option("--z0", o.z0, "Initial height in m, or START:STOP:STEP");
  app.add_option("--delta-h", o.delta_h, "Launch height for the estimator, m");
  app.add_option("--potential", o.potential, "Field model")
      ->check(CLI::IsMember({"ideal", "poly", "csv", "synth"}));
  app.add_option("--out", o.out, "Write the CSV here instead of standard output");
  app.add_option("--T-R", o.T_R, "Pulse separation, s");
  app.add_option("--v0", o.v0, "Initial velocity, m/s");
  app.add_option("--steps", o.steps, "Integration steps over 2 T_R (even)");
  app.add_option("--threads", o.threads, "Worker threads (capped by CGI_SIM_THREADS)");
  app.add_option("--g", o.g, "Ideal field: g, m/s^2");
  app.add_option("--gamma0", o.gamma0, "Ideal field: gradient, 1/s^2");
  app.add_option("--c", o.c, "Speed of light, m/s (inf for the nonrelativistic limit)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  RunConfig cfg;
  try {
    cfg = parse_config(config_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(config_path), o);
  } catch (const std::exception& e) {
    std::cerr << "cgi-sim: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return dispatch(command, cfg, std::cout, std::cerr);
}
