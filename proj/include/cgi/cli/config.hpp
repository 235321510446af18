#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cgi/core_model.hpp"
#include "cgi/potential.hpp"
#include "cgi/sweep.hpp"

namespace cgi::cli {

enum class PotentialKind { Ideal, Poly, Csv, Synth };

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view name);

struct PotentialSelection {
  PotentialKind kind = PotentialKind::Ideal;
  // ideal
  double g = 9.81;
  double gamma0 = -2.7e-6;
  // poly
  std::vector<double> coeffs;
  double origin = 0.0;
  std::optional<Region> roi;
  // csv
  std::filesystem::path csv_path;
  int degree = 8;
  // synth
  ProfileSpec synth = default_profile_spec();
};

/// Builds the field model; reads and fits the CSV profile when one is selected.
PotentialModel build_potential(const PotentialSelection& sel);

/*
  Everything a command needs. Every field has a default except the potential
  selection, which must come from the [potential] section or --potential.
*/
struct RunConfig {
  PhysicalConstants consts{};
  AtomSpecies atom{};
  LaserConfig laser{};
  ExperimentParams params{};
  PotentialSelection potential{};

  SweepRange tr{0.1, 0.6, 0.05};
  std::optional<SweepRange> z0_range;  // sweep-z0, estimate
  double delta_h = 1.0;                // m
  double spacing = 0.1;                // m, default estimator grid
  bool launch = false;                 // derive v0 from g(z0) T_R
  int decimate = 100;                  // simulate: keep every n-th node
  unsigned threads = 1;

  std::optional<std::filesystem::path> out;
};

/// Command-line values; each one present replaces the file value.
struct Overrides {
  std::optional<int> N;
  std::optional<double> k;
  std::optional<std::string> tr;  // START:STOP:STEP or a single T_R
  std::optional<std::string> z0;  // START:STOP:STEP or a single z0
  std::optional<double> delta_h;
  std::optional<std::string> potential;
  std::optional<std::string> out;
  std::optional<double> T_R;
  std::optional<double> v0;
  std::optional<int> steps;
  std::optional<unsigned> threads;
  std::optional<double> g;
  std::optional<double> gamma0;
  std::optional<double> c;
};

/// `a:b:s` or a single value `a` (giving the one-point range a:a:1).
SweepRange parse_range(std::string_view text);

/// Parses INI text. `base_dir` resolves relative file references.
RunConfig parse_config_text(const std::string& text, const Overrides& overrides = {},
                            const std::filesystem::path& base_dir = ".");

/// Reads the INI file (if any) and applies the overrides.
RunConfig parse_config(const std::optional<std::filesystem::path>& path,
                       const Overrides& overrides = {});

/// Worker count after the CGI_SIM_THREADS cap.
unsigned effective_threads(unsigned requested);

}  // namespace cgi::cli
