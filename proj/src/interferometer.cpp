#include "cgi/interferometer.hpp"

#include <cmath>

#include "cgi/errors.hpp"

namespace cgi {

std::string_view to_string(GeometryKind kind) {
  return kind == GeometryKind::MZI ? "MZI" : "SDDI";
}

GeometrySpec build_geometry(GeometryKind kind, const LaserConfig& laser, const AtomSpecies& atom,
                            const ExperimentParams& params, const PhysicalConstants& consts) {
  const double T = params.T_R;
  const int N = laser.N;
  const double mirror = laser.mirror_detuning;
  const double last = laser.final_detuning;
  const double vq = recoil_quantities(laser, atom, consts).v_rec;

  GeometrySpec geom{kind, {params.z0, params.v0, vq, {}}, {params.z0, params.v0, vq, {}},
                    laser, atom, params, consts};
  if (kind == GeometryKind::MZI) {
    geom.arm_up.kicks = {{0.0, 2 * N, 0.0}, {T, -2 * N, mirror}};
    geom.arm_low.kicks = {{T, 2 * N, mirror}, {2.0 * T, -2 * N, last}};
  } else {
    geom.arm_up.kicks = {{0.0, N, 0.0}, {T, -2 * N, mirror}, {2.0 * T, N, last}};
    geom.arm_low.kicks = {{0.0, -N, 0.0}, {T, 2 * N, mirror}, {2.0 * T, -N, last}};
  }
  return geom;
}

GeometryRun propagate_geometry(const GeometrySpec& geom, const PotentialModel& model) {
  return {geom, propagate_arm(model, geom.arm_up, geom.params),
          propagate_arm(model, geom.arm_low, geom.params)};
}

double propagation_phase(const GeometryRun& run, const PotentialModel& model) {
  const Trajectory& up = run.up;
  const Trajectory& low = run.low;
  const auto breaks = shared_breakpoints(up, low);
  const double h = up.grid.step();
  const double m_over_hbar = run.spec.atom.mass / run.spec.consts.hbar;

  // Lagrangian difference per unit mass; side selects the velocity limit at piece ends.
  auto density = [&](Eigen::Index j, bool leaving) {
    const CompensatedSeries& vu = leaving ? up.v_out : up.v_in;
    const CompensatedSeries& vl = leaving ? low.v_out : low.v_in;
    const double dv = difference(vu.hi(j), vu.lo(j), vl.hi(j), vl.lo(j));
    const double dz = difference(up.z.hi(j), up.z.lo(j), low.z.hi(j), low.z.lo(j));
    const double kinetic = 0.5 * dv * (vu(j) + vl(j));
    const double potential = dz * model.potential_slope(up.z(j), low.z(j));
    return kinetic - potential;
  };

  CompensatedSum<double> action;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const Eigen::Index first = breaks[p];
    const Eigen::Index last = breaks[p + 1];
    action += simpson(first, last, h, [&](Eigen::Index j) {
      if (j == first) return density(j, true);
      if (j == last) return density(j, false);
      return density(j, true);
    });
  }
  return -m_over_hbar * action.value();
}

double kick_phase(const GeometryRun& run) {
  const double k = run.spec.laser.k;
  CompensatedSum<double> phase;
  auto imprint = [&](const ArmSpec& arm, const Trajectory& traj, double sign) {
    for (const KickEvent& kick : arm.kicks) {
      const Eigen::Index j = traj.grid.node_of(kick.time);
      const double weight = sign * kick.delta_p_quanta * (1.0 + kick.k_scale) * k;
      phase += weight * traj.z.hi(j);
      phase += weight * traj.z.lo(j);
    }
  };
  imprint(run.spec.arm_low, run.low, 1.0);
  imprint(run.spec.arm_up, run.up, -1.0);
  return phase.value();
}

double separation_phase(const GeometryRun& run) {
  const Eigen::Index j = run.up.last();
  const double dz = difference(run.up.z.hi(j), run.up.z.lo(j), run.low.z.hi(j), run.low.z.lo(j));
  const double v_aver = 0.5 * (run.up.v_out(j) + run.low.v_out(j));
  return run.spec.atom.mass / run.spec.consts.hbar * dz * v_aver;
}

PhaseBreakdown run_geometry(const GeometryRun& run, const PotentialModel& model) {
  PhaseBreakdown out;
  out.propagation = propagation_phase(run, model);
  out.kick = kick_phase(run);
  out.separation = separation_phase(run);
  out.total = out.propagation + out.kick + out.separation;
  const Eigen::Index j = run.up.last();
  out.output_separation_dz =
      difference(run.up.z.hi(j), run.up.z.lo(j), run.low.z.hi(j), run.low.z.lo(j));
  out.output_dv =
      difference(run.up.v_out.hi(j), run.up.v_out.lo(j), run.low.v_out.hi(j), run.low.v_out.lo(j));
  out.closure_warning = std::abs(out.output_separation_dz) > closure_warning_threshold;
  return out;
}

PhaseBreakdown run_geometry(const GeometrySpec& geom, const PotentialModel& model) {
  return run_geometry(propagate_geometry(geom, model), model);
}

CGIRuns propagate_cgi(const LaserConfig& laser, const AtomSpecies& atom,
                      const ExperimentParams& params, const PotentialModel& model,
                      const PhysicalConstants& consts) {
  return {propagate_geometry(build_geometry(GeometryKind::MZI, laser, atom, params, consts), model),
          propagate_geometry(build_geometry(GeometryKind::SDDI, laser, atom, params, consts), model)};
}

CGIResult run_cgi(const CGIRuns& runs, const PotentialModel& model) {
  CGIResult out;
  out.mzi = run_geometry(runs.mzi, model);
  out.sddi = run_geometry(runs.sddi, model);
  out.differential = out.mzi.total - out.sddi.total;
  return out;
}

CGIResult run_cgi(const LaserConfig& laser, const AtomSpecies& atom, const ExperimentParams& params,
                  const PotentialModel& model, const PhysicalConstants& consts) {
  return run_cgi(propagate_cgi(laser, atom, params, model, consts), model);
}

double curvature_phase_series(const PotentialModel& model, const CGIRuns& runs, int n_max) {
  if (n_max > model.degree()) {
    throw DomainError("series order " + std::to_string(n_max) + " exceeds polynomial degree " +
                      std::to_string(model.degree()));
  }
  const double o = model.origin();
  const auto& coeffs = model.coefficients();
  CompensatedSum<double> sum;
  for (int n = 2; n <= n_max; ++n) {
    const double a_mzi = moment_integral(runs.mzi.up, runs.mzi.low, n, o);
    const double a_sddi = moment_integral(runs.sddi.up, runs.sddi.low, n, o);
    sum += coeffs(n) * (a_mzi - a_sddi);
  }
  const auto& spec = runs.mzi.spec;
  return spec.atom.mass / spec.consts.hbar * sum.value();
}

}  // namespace cgi
