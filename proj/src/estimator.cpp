#include "cgi/estimator.hpp"

#include <cmath>
#include <limits>

#include "cgi/errors.hpp"
#include "cgi/interferometer.hpp"
#include "cgi/sweep.hpp"

namespace cgi {

namespace {

// Cubic mean of the apex-at-T_R parabola in units of its rise height.
const double launch_cubic_mean_ratio = std::cbrt(16.0 / 35.0);

constexpr double region_margin = 1e-3;  // m

}  // namespace

double cubic_mean(const Trajectory& traj) {
  const double z0 = traj.z(0);
  const double h = traj.grid.step();
  const double integral = simpson(0, traj.last(), h, [&](Eigen::Index j) {
    const double d = std::abs(traj.z(j) - z0);
    return d * d * d;
  });
  return std::cbrt(integral / traj.grid.t_end);
}

double scale_factor(const LaserConfig& laser, const AtomSpecies& atom, double T_R,
                    const PhysicalConstants& consts) {
  const double N = laser.N;
  return 2.0 * N * N * consts.hbar * laser.k * laser.k * T_R * T_R * T_R / atom.mass;
}

GammaEstimate estimate_gamma(const PotentialModel& model, const LaserConfig& laser,
                             const AtomSpecies& atom, double z_eval, double delta_h,
                             const EstimatorOptions& options) {
  if (!(delta_h > 0.0)) throw DomainError("baseline delta_h must be positive");
  const double vq = recoil_quantities(laser, atom, options.consts).v_rec;

  double cm = launch_cubic_mean_ratio * delta_h;
  LaunchKinematics launch{};
  double z_launch = z_eval - cm;
  for (int it = 0; it < options.max_iterations; ++it) {
    z_launch = z_eval - cm;
    launch = launch_from_height(delta_h, model.eval(z_launch).g);
    const ExperimentParams free_fall{z_launch, launch.v0, launch.T_R, options.n_steps};
    const double next = cubic_mean(propagate_arm(model, {z_launch, launch.v0, vq, {}}, free_fall));
    const bool converged = std::abs(next - cm) <= options.launch_tolerance;
    cm = next;
    if (converged) break;
  }
  z_launch = z_eval - cm;
  launch = launch_from_height(delta_h, model.eval(z_launch).g);

  const ExperimentParams params{z_launch, launch.v0, launch.T_R, options.n_steps};
  const double phase = run_cgi(laser, atom, params, model, options.consts).differential;
  const double f = scale_factor(laser, atom, launch.T_R, options.consts);
  return {phase / f, phase, z_launch, cm, launch.T_R, launch.v0};
}

ProfileEstimate sweep_estimate(const PotentialModel& model, const LaserConfig& laser,
                               const AtomSpecies& atom, const std::vector<double>& z_evals,
                               double delta_h, const EstimatorOptions& options) {
  if (z_evals.empty()) throw DomainError("empty height range: RMS error undefined");

  ProfileEstimate out;
  out.delta_h = delta_h;
  out.rows = parallel_map(z_evals, options.threads, [&](double z_eval) {
    const GammaEstimate e = estimate_gamma(model, laser, atom, z_eval, delta_h, options);
    return ProfileRow{z_eval, e.gamma_hat, model.eval(z_eval).gamma, e.phase, e.z_launch};
  });

  CompensatedSum<double> sq;
  CompensatedSum<double> abs_phase;
  for (const ProfileRow& r : out.rows) {
    const double err = r.gamma_hat - r.gamma_true;
    sq += err * err;
    abs_phase += std::abs(r.phase);
  }
  const auto n = static_cast<double>(out.rows.size());
  out.rms_error = std::sqrt(sq.value() / n);
  out.mean_abs_phase = abs_phase.value() / n;
  return out;
}

std::vector<double> default_eval_heights(const PotentialModel& model, const LaserConfig& laser,
                                         const AtomSpecies& atom, double delta_h, double spacing,
                                         const PhysicalConstants& consts) {
  const auto& roi = model.region();
  if (!roi) throw DomainError("unbounded field: give the evaluation range explicitly");
  if (!(spacing > 0.0) || !(delta_h > 0.0)) throw DomainError("spacing and delta_h must be positive");

  const double T = launch_from_height(delta_h, model.gravity(roi->center())).T_R;
  const double arm_excursion = 2.0 * laser.N * recoil_quantities(laser, atom, consts).v_rec * T;
  const double cm = launch_cubic_mean_ratio * delta_h;
  const double lo = roi->z_min + region_margin + cm;
  const double hi = roi->z_max - delta_h - arm_excursion - region_margin + cm;

  std::vector<double> out;
  for (auto i = static_cast<long>(std::ceil(lo / spacing - 1e-9)); i * spacing <= hi; ++i) {
    out.push_back(static_cast<double>(i) * spacing);
  }
  return out;
}

SamplingPlan plan_sampling(const LaserConfig& laser, const AtomSpecies& atom, double gamma_scale,
                           double phase_resolution, double g_local,
                           const PhysicalConstants& consts) {
  if (!(phase_resolution >= 0.0) || gamma_scale == 0.0 || !(g_local > 0.0)) {
    throw DomainError("sampling plan needs phase_resolution >= 0, gamma_scale != 0, g > 0");
  }
  // f(T) |gamma| = resolution with f(T) = f(1 s) T^3.
  const double f_unit = scale_factor(laser, atom, 1.0, consts);
  const double T = std::cbrt(phase_resolution / (f_unit * std::abs(gamma_scale)));
  const double nu = T > 0.0 ? 1.0 / (2.0 * T) : std::numeric_limits<double>::infinity();
  return {T, nu, 0.5 * g_local * T * T};
}

}  // namespace cgi
