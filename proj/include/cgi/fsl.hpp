#pragma once

#include "cgi/core_model.hpp"

namespace cgi {

/// Geometry entering the finite-speed-of-light phase of two-photon Bragg pulses.
struct FslConfig {
  double z_upper;  // laser height, m
  double z_lower;  // retro-mirror height, m
  double v0;       // m/s
  double T_R;      // s
  int N;
  double k;        // 1/m

  static FslConfig from(const LaserConfig& laser, const ExperimentParams& params);
  void validate() const;
};

struct FslPhase {
  double time_dependent;  // (4 hbar N^2 k^2 T_R / m c)(4 g T_R - v0 - N hbar k / m)
  double static_part;     // (2 hbar N^2 k^2 / m c)(2 z_L - z0 - z_U)
};

/// Both parts vanish for infinite c.
FslPhase fsl_phase(const FslConfig& cfg, double z0, double g, const AtomSpecies& atom,
                   const PhysicalConstants& consts = {});

/// Phase added by scaling the final pulse k -> (1 + delta_det) k:
/// 2 N k T_R delta_det (v0 + N hbar k / m - g T_R).
double detuning_phase(const FslConfig& cfg, double delta_det, double g, const AtomSpecies& atom,
                      const PhysicalConstants& consts = {});

struct OptimalDetuning {
  double delta_det;  // dimensionless
  double nu_det;     // c k delta_det, Hz
  double pole_T_R;   // (v0 + N hbar k / m) / g, s
};

/// Tolerance on |T_R - pole_T_R| below which optimal_detuning refuses to evaluate.
inline constexpr double detuning_pole_tolerance = 1e-6;  // s

/*
  Final-pulse detuning whose added phase cancels the time-dependent FSL phase:
    delta_det = 2 N (v0 + N vq - 4 g T_R) / (v0 + N vq - g T_R) * hbar k / (m c),
  vq = hbar k / m. For N = 1 this is the single-interaction form.
  Throws SingularityError within detuning_pole_tolerance of the pole.
*/
OptimalDetuning optimal_detuning(const FslConfig& cfg, double g, const AtomSpecies& atom,
                                 const PhysicalConstants& consts = {});

}  // namespace cgi
