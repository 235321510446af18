#include "cgi/analytic.hpp"

#include <cmath>

namespace cgi {

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

// Monomials of the ideal-potential phase expansion, signed.
struct Monomials {
  double gravity;        // N k g T^2
  double height;         // N k z0 G T^2
  double velocity;       // N k v0 G T^3
  double gravity_grad;   // N k g G T^4
  double recoil_grad;    // N^2 hbar k^2 G T^3 / m
  double doppler_gg;     // N wR g^2 T^3 / c^2
  double doppler_gv;     // N wR g v0 T^2 / c^2
  double recoil_g;       // N^2 wR hbar k g T^2 / (m c^2)
  double recoil_v;       // N^2 wR hbar k v0 T / (m c^2)
  double recoil_recoil;  // N^3 wR hbar^2 k^2 T / (m^2 c^2)
};

Monomials monomials(const LaserConfig& laser, const AtomSpecies& atom,
                    const ExperimentParams& params, double g, double G,
                    const PhysicalConstants& consts) {
  const double N = laser.N;
  const double k = laser.k;
  const double T = params.T_R;
  const double v = params.v0;
  const double wR = laser.omega_R;
  const double ic = consts.inverse_c();
  const double ic2 = ic * ic;
  const double vq = consts.hbar * k / atom.mass;  // recoil velocity
  return {N * k * g * T * T,
          N * k * params.z0 * G * T * T,
          N * k * v * G * T * T * T,
          N * k * g * G * T * T * T * T,
          N * N * vq * k * G * T * T * T,
          N * wR * g * g * T * T * T * ic2,
          N * wR * g * v * T * T * ic2,
          N * N * wR * vq * g * T * T * ic2,
          N * N * wR * vq * v * T * ic2,
          N * N * N * wR * vq * vq * T * ic2};
}

}  // namespace

std::vector<AnalyticTerm> table1_catalog(const LaserConfig& laser, const AtomSpecies& atom,
                                         const ExperimentParams& params, double g, double gamma0,
                                         const PhysicalConstants& consts) {
  const Monomials m = monomials(laser, atom, params, g, gamma0, consts);
  struct Row {
    const char* id;
    const char* expr;
    Rational mzi;
    Rational sddi;
    double monomial;
  };
  const Row rows[] = {
      {"gravity", "N k g T_R^2", 2, 2, m.gravity},
      {"gradient_height", "N k z0 Gamma0 T_R^2", 2, 2, m.height},
      {"gradient_velocity", "N k v0 Gamma0 T_R^3", 2, 2, m.velocity},
      {"gradient_gravity", "N k g Gamma0 T_R^4", {-7, 6}, {-7, 6}, m.gravity_grad},
      {"gradient_recoil", "N^2 hbar k^2 Gamma0 T_R^3 / m", 2, 0, m.recoil_grad},
      {"doppler_gravity", "N omega_R g^2 T_R^3 / c^2", -6, -6, m.doppler_gg},
      {"doppler_velocity", "N omega_R g v0 T_R^2 / c^2", 6, 6, m.doppler_gv},
      {"recoil_gravity", "N^2 omega_R hbar k g T_R^2 / (m c^2)", 10, 0, m.recoil_g},
      {"recoil_velocity", "N^2 omega_R hbar k v0 T_R / (m c^2)", -4, 0, m.recoil_v},
      {"recoil_recoil", "N^3 omega_R hbar^2 k^2 T_R / (m^2 c^2)", 0, 4, m.recoil_recoil},
  };
  std::vector<AnalyticTerm> out;
  out.reserve(std::size(rows));
  for (const Row& r : rows) {
    out.push_back({r.id, r.expr, r.mzi, r.sddi, r.mzi - r.sddi, r.monomial, std::abs(r.monomial)});
  }
  return out;
}

PhaseBreakdown closed_form_breakdown(GeometryKind kind, const LaserConfig& laser,
                                     const AtomSpecies& atom, const ExperimentParams& params,
                                     double g, double gamma0, const PhysicalConstants& consts,
                                     bool include_disputed_sddi_term) {
  const Monomials m = monomials(laser, atom, params, g, gamma0, consts);
  const bool mzi = kind == GeometryKind::MZI;

  PhaseBreakdown out;
  out.separation = -2.0 * m.velocity + 4.0 * m.gravity_grad + 8.0 * m.doppler_gg - 4.0 * m.doppler_gv;
  out.kick = 2.0 * m.gravity + 2.0 * m.height + 2.0 * m.velocity - 7.0 / 6.0 * m.gravity_grad -
             6.0 * m.doppler_gg + 6.0 * m.doppler_gv;
  out.propagation = -4.0 * m.gravity_grad + 2.0 * m.velocity - 8.0 * m.doppler_gg + 4.0 * m.doppler_gv;
  if (mzi) {
    out.separation += 4.0 * m.recoil_v - 8.0 * m.recoil_g;
    out.kick += 6.0 * m.recoil_g - 4.0 * m.recoil_v;
    out.propagation += 2.0 * m.recoil_grad + 12.0 * m.recoil_g - 4.0 * m.recoil_v;
  } else {
    out.propagation += 4.0 * m.recoil_recoil;
    if (include_disputed_sddi_term) out.propagation -= 2.0 * m.recoil_grad;
  }
  out.total = out.propagation + out.kick + out.separation;

  // First order in Gamma0: both geometries open by -w Gamma0 T^3 with w = 2 N hbar k / m.
  const double w = 2.0 * laser.N * consts.hbar * laser.k / atom.mass;
  const double T = params.T_R;
  out.output_separation_dz = -w * gamma0 * T * T * T;
  out.output_dv = -w * gamma0 * T * T;
  out.closure_warning = std::abs(out.output_separation_dz) > closure_warning_threshold;
  return out;
}

double ideal_cgi_phase(const LaserConfig& laser, const AtomSpecies& atom, double T_R,
                       double gamma0, const PhysicalConstants& consts) {
  const double N = laser.N;
  const double f = 2.0 * N * N * consts.hbar * laser.k * laser.k * T_R * T_R * T_R / atom.mass;
  return f * gamma0;
}

}  // namespace cgi
