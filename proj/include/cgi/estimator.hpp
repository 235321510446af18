#pragma once

#include <vector>

#include "cgi/core_model.hpp"
#include "cgi/dynamics.hpp"
#include "cgi/potential.hpp"

namespace cgi {

/// ((1/2T) int_0^{2T} |z(t) - z(0)|^3 dt)^(1/3).
double cubic_mean(const Trajectory& traj);

/// f = 2 N^2 hbar k^2 T_R^3 / m, converting the CGI phase to a gradient.
double scale_factor(const LaserConfig& laser, const AtomSpecies& atom, double T_R,
                    const PhysicalConstants& consts = {});

struct EstimatorOptions {
  int n_steps = 20000;
  PhysicalConstants consts{};
  int max_iterations = 20;
  double launch_tolerance = 1e-12;  // m, on the self-consistent launch height
  unsigned threads = 1;
};

struct GammaEstimate {
  double gamma_hat;   // 1/s^2
  double phase;       // CGI differential, rad
  double z_launch;    // m
  double cubic_mean;  // m
  double T_R;         // s
  double v0;          // m/s
};

/*
  Gradient estimate attributed to height z_eval: the CGI is launched in launch
  mode from z_launch = z_eval - ||z||_3, where the cubic mean is that of the
  unkicked path from z_launch itself (solved by fixed-point iteration). T_R and
  v0 follow from delta_h and g(z_launch). Returns phase / f with the
  ideal-potential f.
*/
GammaEstimate estimate_gamma(const PotentialModel& model, const LaserConfig& laser,
                             const AtomSpecies& atom, double z_eval, double delta_h,
                             const EstimatorOptions& options = {});

struct ProfileRow {
  double z_eval;
  double gamma_hat;
  double gamma_true;
  double phase;
  double z_launch;
};

struct ProfileEstimate {
  std::vector<ProfileRow> rows;
  double delta_h = 0.0;
  double rms_error = 0.0;       // sqrt(mean((gamma_hat - gamma_true)^2))
  double mean_abs_phase = 0.0;  // signal strength
};

ProfileEstimate sweep_estimate(const PotentialModel& model, const LaserConfig& laser,
                               const AtomSpecies& atom, const std::vector<double>& z_evals,
                               double delta_h, const EstimatorOptions& options = {});

/// Evaluation heights on a `spacing` grid whose CGI paths fit inside the region of interest.
std::vector<double> default_eval_heights(const PotentialModel& model, const LaserConfig& laser,
                                         const AtomSpecies& atom, double delta_h,
                                         double spacing = 0.1, const PhysicalConstants& consts = {});

struct SamplingPlan {
  double T_R_min;      // s, smallest T_R resolving gamma_scale at phase_resolution
  double nu_max;       // Hz, from nu^-1 > 2 T_R
  double delta_h_min;  // m
};

SamplingPlan plan_sampling(const LaserConfig& laser, const AtomSpecies& atom, double gamma_scale,
                           double phase_resolution, double g_local,
                           const PhysicalConstants& consts = {});

}  // namespace cgi
