#pragma once

#include <limits>

namespace cgi {

/// Physical constants in SI units. Defaults are CODATA 2018.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;    // J s
  double c = 299792458.0;           // m/s; +inf for idealized runs
  double amu = 1.66053906660e-27;   // kg

  static constexpr double infinite_c = std::numeric_limits<double>::infinity();

  static PhysicalConstants codata2018() { return {}; }
  static PhysicalConstants with_infinite_c() {
    PhysicalConstants pc;
    pc.c = infinite_c;
    return pc;
  }

  bool has_infinite_c() const { return c == infinite_c; }
  /// 1/c, exactly zero for the infinite sentinel.
  double inverse_c() const { return 1.0 / c; }

  void validate() const;
};

struct AtomSpecies {
  double mass = 87.0 * PhysicalConstants{}.amu;  // kg

  static AtomSpecies from_amu(double mass_amu, const PhysicalConstants& consts = {});
  void validate() const;
};

struct LaserConfig {
  double k = 4.0e6;              // effective wave number per momentum quantum, 1/m
  int N = 1;                     // momentum quanta per beam splitter
  double omega_R = 1.0e7;        // recoil frequency used by the analytic catalogue, rad/s
  double z_upper = 10.0;         // laser height, m
  double z_lower = 0.0;          // retro-mirror height, m
  double mirror_detuning = 0.0;  // fractional wave-number shift at the mirror pulse
  double final_detuning = 0.0;   // fractional wave-number shift at the final pulse

  void validate() const;
};

struct ExperimentParams {
  double z0 = 0.0;    // m
  double v0 = 0.0;    // m/s
  double T_R = 0.6;   // s
  int n_steps = 20000;

  void validate() const;
};

struct RecoilQuantities {
  double v_rec;            // hbar k / m, m/s
  double omega_R_derived;  // hbar k^2 / (2 m), rad/s
};

/// Single-quantum recoil velocity and the recoil frequency implied by k and m.
/// LaserConfig::omega_R is left untouched; the catalogue treats it as independent.
RecoilQuantities recoil_quantities(const LaserConfig& laser, const AtomSpecies& atom,
                                   const PhysicalConstants& consts = {});

struct LaunchKinematics {
  double T_R;
  double v0;
};

/// Launch-mode kinematics: apex reached at t = T_R after rising delta_h.
LaunchKinematics launch_from_height(double delta_h, double g_local);

}  // namespace cgi
