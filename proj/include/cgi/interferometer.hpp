#pragma once

#include <string_view>

#include "cgi/core_model.hpp"
#include "cgi/dynamics.hpp"
#include "cgi/potential.hpp"

namespace cgi {

enum class GeometryKind { MZI, SDDI };

std::string_view to_string(GeometryKind kind);

/*
  Pulse schedule of one interferometer, pulses at 0, T_R and 2 T_R.

    MZI   up:  +2N, -2N        low:      +2N, -2N
    SDDI  up:  +N,  -2N, +N    low: -N,  +2N, -N

  Both arms of both geometries start from (z0, v0) and leave in the unkicked
  momentum state. The mirror pulse carries laser.mirror_detuning, the final
  pulse laser.final_detuning.
*/
struct GeometrySpec {
  GeometryKind kind;
  ArmSpec arm_up;
  ArmSpec arm_low;
  LaserConfig laser;
  AtomSpecies atom;
  ExperimentParams params;
  PhysicalConstants consts;
};

/// Arms further apart than this at the output port are flagged.
inline constexpr double closure_warning_threshold = 1e-6;  // m

struct PhaseBreakdown {
  double propagation = 0.0;  // rad
  double kick = 0.0;
  double separation = 0.0;
  double total = 0.0;
  double output_separation_dz = 0.0;  // z_up - z_low at 2 T_R, m
  double output_dv = 0.0;             // v_up - v_low after the final pulse, m/s
  bool closure_warning = false;
};

struct CGIResult {
  PhaseBreakdown mzi;
  PhaseBreakdown sddi;
  double differential = 0.0;  // mzi.total - sddi.total
};

GeometrySpec build_geometry(GeometryKind kind, const LaserConfig& laser, const AtomSpecies& atom,
                            const ExperimentParams& params, const PhysicalConstants& consts = {});

/// A geometry with both arms propagated on the shared grid.
struct GeometryRun {
  GeometrySpec spec;
  Trajectory up;
  Trajectory low;
};

GeometryRun propagate_geometry(const GeometrySpec& geom, const PotentialModel& model);

/*
  -(1/hbar) int (L(z_up) - L(z_low)) dt with L = m v^2 / 2 - m phi(z). The
  integrand is formed per node as a difference, kinetic part as
  dv (v_up + v_low) / 2 and potential part as dz * divided difference of phi.
*/
double propagation_phase(const GeometryRun& run, const PotentialModel& model);

/*
  Laser phase imprinted at the vertices: each pulse contributes
  q (1 + k_scale) k z(t_pulse) with the sign of the momentum change q, summed
  as (lower arm) - (upper arm) to match the overall sign of the propagation
  phase. Optical frequency terms are common to both arms and omitted.
*/
double kick_phase(const GeometryRun& run);

/// (m/hbar) * dz * v_aver at the output port, after the final pulse.
double separation_phase(const GeometryRun& run);

PhaseBreakdown run_geometry(const GeometryRun& run, const PotentialModel& model);
PhaseBreakdown run_geometry(const GeometrySpec& geom, const PotentialModel& model);

/// Both runs of a co-located pair, kept for inspection (series, plots).
struct CGIRuns {
  GeometryRun mzi;
  GeometryRun sddi;
};

CGIRuns propagate_cgi(const LaserConfig& laser, const AtomSpecies& atom,
                      const ExperimentParams& params, const PotentialModel& model,
                      const PhysicalConstants& consts = {});

CGIResult run_cgi(const CGIRuns& runs, const PotentialModel& model);
CGIResult run_cgi(const LaserConfig& laser, const AtomSpecies& atom, const ExperimentParams& params,
                  const PotentialModel& model, const PhysicalConstants& consts = {});

/*
  (m/hbar) sum_{n=2}^{n_max} (phi^(n)/n!) [A_MZI(n) - A_SDDI(n)], moments taken
  about the model's expansion origin. Positive sign: with the propagation phase
  defined as above, the quadratic term reproduces +f Gamma0.
  Throws DomainError when n_max exceeds the polynomial degree.
*/
double curvature_phase_series(const PotentialModel& model, const CGIRuns& runs, int n_max);

}  // namespace cgi
