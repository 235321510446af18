#include "cgi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgi/errors.hpp"

namespace cgi {

Eigen::Index TimeGrid::node_of(double t) const {
  const double scaled = t / t_end * static_cast<double>(intervals);
  const auto j = static_cast<Eigen::Index>(std::llround(scaled));
  if (j < 0 || j > intervals || std::abs(time(j) - t) > 1e-9 * t_end) {
    throw DomainError("time " + std::to_string(t) + " s is not a node of the integration grid");
  }
  return j;
}

PathPoint ideal_trajectory(double t, int N, double k, double z0, double v0, double g,
                           double gamma0, const AtomSpecies& atom,
                           const PhysicalConstants& consts) {
  const double u = v0 + N * consts.hbar * k / atom.mass;
  const double t2 = t * t;
  const double z = z0 + u * t - 0.5 * g * t2 -
                   0.5 * gamma0 * (z0 * t2 + u * t2 * t / 3.0 - g * t2 * t2 / 12.0);
  const double v = u - g * t - 0.5 * gamma0 * (2.0 * z0 * t + u * t2 - g * t2 * t / 3.0);
  return {z, v};
}

Trajectory propagate_arm(const PotentialModel& model, const ArmSpec& arm,
                         const ExperimentParams& params) {
  params.validate();
  Trajectory traj;
  traj.grid = TimeGrid{2.0 * params.T_R, params.n_steps};
  const TimeGrid& grid = traj.grid;
  const Eigen::Index n = grid.intervals;
  const double h = grid.step();

  // Velocity jump per node, kicks merged in order.
  std::vector<std::pair<Eigen::Index, double>> jumps;
  for (std::size_t i = 0; i < arm.kicks.size(); ++i) {
    const KickEvent& kick = arm.kicks[i];
    if (i > 0 && !(kick.time > arm.kicks[i - 1].time)) {
      throw DomainError("kick times must be strictly increasing");
    }
    jumps.emplace_back(grid.node_of(kick.time), arm.velocity_change(kick));
    traj.kick_nodes.push_back(jumps.back().first);
  }

  traj.z.resize(grid.nodes());
  traj.v_in.resize(grid.nodes());
  traj.v_out.resize(grid.nodes());

  auto acceleration = [&](double z, double t) {
    if (!model.contains(z)) throw PropagationError(t, z);
    return -model.gravity(z);
  };

  CompensatedSum<double> z(arm.z0);
  CompensatedSum<double> v(arm.v0);
  if (!model.contains(arm.z0)) throw PropagationError(0.0, arm.z0);

  auto next_jump = jumps.begin();
  auto record = [&](Eigen::Index j) {
    traj.z.set(j, z);
    traj.v_in.set(j, v);
    if (next_jump != jumps.end() && next_jump->first == j) {
      v += next_jump->second;
      ++next_jump;
    }
    traj.v_out.set(j, v);
  };

  record(0);
  const double half_h = 0.5 * h;
  const double h2 = h * h;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = grid.time(j);
    const double zc = z.value();
    const double vc = v.value();
    const double a1 = acceleration(zc, t);
    const double a2 = acceleration(zc + half_h * vc, t + half_h);
    const double a3 = acceleration(zc + half_h * vc + 0.25 * h2 * a1, t + half_h);
    const double a4 = acceleration(zc + h * vc + 0.5 * h2 * a2, t + h);

    // z += h v + h^2 (a1 + a2 + a3) / 6, with h * v.hi split exactly.
    const auto [p, e] = two_product(h, v.hi);
    z += p;
    z += e + h * v.lo + h2 * (a1 + a2 + a3) / 6.0;
    v += h * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0;

    if (!model.contains(z.value())) throw PropagationError(grid.time(j + 1), z.value());
    record(j + 1);
  }
  return traj;
}

std::vector<Eigen::Index> shared_breakpoints(const Trajectory& a, const Trajectory& b) {
  if (!(a.grid == b.grid)) throw GridMismatchError("trajectories do not share a time grid");
  std::vector<Eigen::Index> points{0, a.last()};
  points.insert(points.end(), a.kick_nodes.begin(), a.kick_nodes.end());
  points.insert(points.end(), b.kick_nodes.begin(), b.kick_nodes.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double moment_integral(const Trajectory& up, const Trajectory& low, int n, double origin) {
  if (n < 0) throw DomainError("moment order must be non-negative");
  const auto breaks = shared_breakpoints(up, low);
  if (n == 0) return 0.0;
  const double h = up.grid.step();

  // (a^n - b^n) = (a - b) * sum_j a^j b^(n-1-j), the separation taken compensated.
  auto integrand = [&](Eigen::Index j) {
    const double sep = difference(up.z.hi(j), up.z.lo(j), low.z.hi(j), low.z.lo(j));
    const double a = up.z(j) - origin;
    const double b = low.z(j) - origin;
    double pa = 1.0;
    double dd = 0.0;
    for (int i = 0; i < n; ++i) {
      dd = pa + b * dd;
      pa *= a;
    }
    return sep * dd;
  };

  CompensatedSum<double> total;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    total += simpson(breaks[p], breaks[p + 1], h, integrand);
  }
  return total.value();
}

}  // namespace cgi
