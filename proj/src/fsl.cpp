#include "cgi/fsl.hpp"

#include <cmath>

#include "cgi/errors.hpp"

namespace cgi {

FslConfig FslConfig::from(const LaserConfig& laser, const ExperimentParams& params) {
  return {laser.z_upper, laser.z_lower, params.v0, params.T_R, laser.N, laser.k};
}

void FslConfig::validate() const {
  if (!(z_upper > z_lower)) throw DomainError("laser height must exceed mirror height");
}

FslPhase fsl_phase(const FslConfig& cfg, double z0, double g, const AtomSpecies& atom,
                   const PhysicalConstants& consts) {
  cfg.validate();
  const double N = cfg.N;
  const double vq = consts.hbar * cfg.k / atom.mass;
  const double launch_velocity = cfg.v0 + cfg.N * vq;
  // hbar N^2 k^2 / (m c) = N^2 k vq / c
  const double unit = N * N * cfg.k * vq * consts.inverse_c();
  return {4.0 * unit * cfg.T_R * (4.0 * g * cfg.T_R - launch_velocity),
          2.0 * unit * (2.0 * cfg.z_lower - z0 - cfg.z_upper)};
}

double detuning_phase(const FslConfig& cfg, double delta_det, double g, const AtomSpecies& atom,
                      const PhysicalConstants& consts) {
  const double vq = consts.hbar * cfg.k / atom.mass;
  return 2.0 * cfg.N * cfg.k * cfg.T_R * delta_det * (cfg.v0 + cfg.N * vq - g * cfg.T_R);
}

OptimalDetuning optimal_detuning(const FslConfig& cfg, double g, const AtomSpecies& atom,
                                 const PhysicalConstants& consts) {
  const double vq = consts.hbar * cfg.k / atom.mass;
  const double launch_velocity = cfg.v0 + cfg.N * vq;
  const double pole = launch_velocity / g;
  if (std::abs(cfg.T_R - pole) < detuning_pole_tolerance) {
    throw SingularityError("optimal detuning diverges: v0 + N hbar k / m = g T_R", pole);
  }
  const double delta = 2.0 * cfg.N * (launch_velocity - 4.0 * g * cfg.T_R) /
                       (launch_velocity - g * cfg.T_R) * vq * consts.inverse_c();
  return {delta, consts.c * cfg.k * delta, pole};
}

}  // namespace cgi
