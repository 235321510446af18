#include "cgi/core_model.hpp"

#include <cmath>
#include <string>

#include "cgi/errors.hpp"

namespace cgi {

ExtrapolationError::ExtrapolationError(double height, double z_min, double z_max)
    : RegionError("height " + std::to_string(height) + " m outside region of interest [" +
                  std::to_string(z_min) + ", " + std::to_string(z_max) + "] m"),
      height_(height) {}

PropagationError::PropagationError(double time, double height)
    : RegionError("trajectory left the region of interest at t = " + std::to_string(time) +
                  " s, z = " + std::to_string(height) + " m"),
      time_(time),
      height_(height) {}

SingularityError::SingularityError(const std::string& what, double pole)
    : RegionError(what + " (pole at T_R = " + std::to_string(pole) + " s)"), pole_(pole) {}

void PhysicalConstants::validate() const {
  if (!(hbar > 0.0) || !(c > 0.0) || !(amu > 0.0)) {
    throw DomainError("physical constants must be strictly positive");
  }
}

AtomSpecies AtomSpecies::from_amu(double mass_amu, const PhysicalConstants& consts) {
  AtomSpecies atom{mass_amu * consts.amu};
  atom.validate();
  return atom;
}

void AtomSpecies::validate() const {
  if (!(mass > 0.0)) throw DomainError("atomic mass must be positive");
}

void LaserConfig::validate() const {
  if (!(k > 0.0)) throw DomainError("laser wave number k must be positive");
  if (N < 1) throw DomainError("momentum multiplier N must be >= 1");
  if (!(z_upper > z_lower)) throw DomainError("laser height must exceed mirror height");
  if (!(std::abs(mirror_detuning) < 1.0) || !(std::abs(final_detuning) < 1.0)) {
    throw DomainError("pulse detunings must satisfy |detuning| < 1");
  }
}

void ExperimentParams::validate() const {
  if (!(T_R > 0.0)) throw DomainError("T_R must be positive");
  if (n_steps < 2 || n_steps % 2 != 0) throw DomainError("n_steps must be even and >= 2");
}

RecoilQuantities recoil_quantities(const LaserConfig& laser, const AtomSpecies& atom,
                                   const PhysicalConstants& consts) {
  const double v_rec = consts.hbar * laser.k / atom.mass;
  return {v_rec, 0.5 * v_rec * laser.k};
}

LaunchKinematics launch_from_height(double delta_h, double g_local) {
  if (!(delta_h > 0.0) || !(g_local > 0.0)) {
    throw DomainError("launch height and local gravity must be positive");
  }
  const double T_R = std::sqrt(2.0 * delta_h / g_local);
  return {T_R, g_local * T_R};
}

}  // namespace cgi
