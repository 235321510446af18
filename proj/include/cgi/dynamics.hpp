#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cgi/compensated.hpp"
#include "cgi/core_model.hpp"
#include "cgi/potential.hpp"

namespace cgi {

/// Instantaneous momentum transfer of delta_p_quanta * (1 + k_scale) * hbar k.
struct KickEvent {
  double time;
  int delta_p_quanta;
  double k_scale = 0.0;
};

struct ArmSpec {
  double z0;
  double v0;
  double quantum_velocity;  // hbar k / m
  std::vector<KickEvent> kicks;

  double velocity_change(const KickEvent& kick) const {
    return kick.delta_p_quanta * (1.0 + kick.k_scale) * quantum_velocity;
  }
};

/// Uniform nodes t_j = j * t_end / intervals, j = 0..intervals.
struct TimeGrid {
  double t_end;
  Eigen::Index intervals;

  double step() const { return t_end / static_cast<double>(intervals); }
  double time(Eigen::Index j) const {
    return t_end * static_cast<double>(j) / static_cast<double>(intervals);
  }
  Eigen::Index nodes() const { return intervals + 1; }
  /// Node index of t; throws DomainError when t is not on the grid.
  Eigen::Index node_of(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Per-node samples of a compensated quantity: value_j = hi_j + lo_j.
struct CompensatedSeries {
  Eigen::VectorXd hi;
  Eigen::VectorXd lo;

  void resize(Eigen::Index n) {
    hi.resize(n);
    lo.resize(n);
  }
  void set(Eigen::Index j, const CompensatedSum<double>& s) {
    hi(j) = s.hi;
    lo(j) = s.lo;
  }
  double operator()(Eigen::Index j) const { return hi(j) + lo(j); }
  Eigen::VectorXd values() const { return hi + lo; }
};

/*
  Piecewise classical path on a uniform grid covering [0, 2 T_R].

  Kicks sit on grid nodes, where the velocity has a left limit (v_in, arriving)
  and a right limit (v_out, leaving after the kick). Between kick nodes the two
  coincide. Positions and velocities are stored compensated so that the small
  separation between two arms can be recovered to well below one ulp of the
  absolute height.
*/
struct Trajectory {
  TimeGrid grid;
  CompensatedSeries z;
  CompensatedSeries v_in;
  CompensatedSeries v_out;
  std::vector<Eigen::Index> kick_nodes;  // strictly increasing

  Eigen::Index last() const { return grid.intervals; }
  Eigen::VectorXd positions() const { return z.values(); }
};

struct PathPoint {
  double z;
  double v;
};

/*
  First-order-in-Gamma0 solution in phi = g z + Gamma0 z^2 / 2 after an initial
  kick of N quanta:
    z = z0 + u t - g t^2/2 - (Gamma0/2)(z0 t^2 + u t^3/3 - g t^4/12),
  u = v0 + N hbar k / m.
*/
PathPoint ideal_trajectory(double t, int N, double k, double z0, double v0, double g,
                           double gamma0, const AtomSpecies& atom,
                           const PhysicalConstants& consts = {});

/*
  Integrates z'' = -dphi/dz with the classical fourth-order Runge-Kutta step,
  applying instantaneous velocity jumps at the kick nodes. The state is
  accumulated with error-free additions. Throws PropagationError if any stage
  leaves the model's region of interest.
*/
Trajectory propagate_arm(const PotentialModel& model, const ArmSpec& arm,
                         const ExperimentParams& params);

/// Common breakpoints of two trajectories (0, shared kicks, end) for piecewise quadrature.
std::vector<Eigen::Index> shared_breakpoints(const Trajectory& a, const Trajectory& b);

/*
  Composite Simpson sum over nodes [first, last] of f(j), with a 3/8 closing
  panel for odd interval counts. Uses compensated accumulation.
*/
template <typename Fn>
double simpson(Eigen::Index first, Eigen::Index last, double h, Fn&& f) {
  const Eigen::Index m = last - first;
  if (m <= 0) return 0.0;
  if (m == 1) return 0.5 * h * (f(first) + f(last));
  CompensatedSum<double> acc;
  Eigen::Index simpson_end = (m % 2 == 0) ? last : last - 3;
  if (simpson_end > first) {
    acc += f(first);
    acc += f(simpson_end);
    for (Eigen::Index j = first + 1; j < simpson_end; ++j) acc += ((j - first) % 2 == 1 ? 4.0 : 2.0) * f(j);
  }
  double total = acc.value() * h / 3.0;
  if (simpson_end != last) {
    const Eigen::Index s = simpson_end;
    total += 3.0 * h / 8.0 * (f(s) + 3.0 * f(s + 1) + 3.0 * f(s + 2) + f(s + 3));
  }
  return total;
}

/*
  Geometry moment A(n) = int_0^{2T_R} ((z_up - o)^n - (z_low - o)^n) dt about
  the expansion origin o, integrated piecewise over the shared breakpoints.
  Throws GridMismatchError for different grids.
*/
double moment_integral(const Trajectory& up, const Trajectory& low, int n, double origin = 0.0);

}  // namespace cgi
