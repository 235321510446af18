#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "cgi/core_model.hpp"
#include "cgi/interferometer.hpp"

namespace cgi {

/// Exact rational prefactor, kept normalized (den > 0, gcd 1).
class Rational {
 public:
  constexpr Rational(long num = 0, long den = 1) : num_(num), den_(den) { normalize(); }

  constexpr long num() const { return num_; }
  constexpr long den() const { return den_; }
  constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend constexpr Rational operator-(Rational a, Rational b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr bool operator==(Rational a, Rational b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  constexpr void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long num_;
  long den_;
};

/// One monomial of the MZI / SDDI phase comparison.
struct AnalyticTerm {
  std::string id;
  std::string expression;
  Rational prefactor_mzi;
  Rational prefactor_sddi;
  Rational prefactor_diff;  // prefactor_mzi - prefactor_sddi
  double monomial = 0.0;    // signed value of the expression, rad
  double value = 0.0;       // |monomial|, rad
};

/*
  The ten catalogue rows in the ideal potential: five non-relativistic
  monomials and five 1/c^2 monomials in omega_R. omega_R is read from
  LaserConfig, not derived from k and m.
*/
std::vector<AnalyticTerm> table1_catalog(const LaserConfig& laser, const AtomSpecies& atom,
                                         const ExperimentParams& params, double g, double gamma0,
                                         const PhysicalConstants& consts = {});

/*
  Closed-form propagation, kick and separation phases in the ideal potential,
  including the 1/c^2 recoil-frequency terms. The SDDI propagation phase can
  optionally carry the -2 Gamma0 N^2 hbar k^2 T^3 / m term, which is not
  supported by direct integration of the piecewise trajectories.
*/
PhaseBreakdown closed_form_breakdown(GeometryKind kind, const LaserConfig& laser,
                                     const AtomSpecies& atom, const ExperimentParams& params,
                                     double g, double gamma0, const PhysicalConstants& consts = {},
                                     bool include_disputed_sddi_term = false);

/// f Gamma0 with f = 2 N^2 hbar k^2 T_R^3 / m.
double ideal_cgi_phase(const LaserConfig& laser, const AtomSpecies& atom, double T_R,
                       double gamma0, const PhysicalConstants& consts = {});

}  // namespace cgi
