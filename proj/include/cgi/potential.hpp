#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace cgi {

/// Closed height interval over which a field model may be evaluated.
struct Region {
  double z_min;
  double z_max;

  bool contains(double z) const { return z >= z_min && z <= z_max; }
  double width() const { return z_max - z_min; }
  double center() const { return 0.5 * (z_min + z_max); }
};

/// phi(z) = g z + gamma0 z^2 / 2, unbounded.
struct IdealField {
  double g;
  double gamma0;
};

/// phi(z) = sum_n coeffs[n] (z - origin)^n, coeffs[n] = phi^(n) / n!.
struct PolynomialField {
  Eigen::VectorXd coeffs;
  double origin = 0.0;
};

/// Tabulated g(z); always replaced by a least-squares polynomial before use.
struct SampledField {
  Eigen::VectorXd z;
  Eigen::VectorXd g;
  int fit_degree = 8;
};

struct FieldValues {
  double phi;    // m^2/s^2
  double g;      // m/s^2
  double gamma;  // 1/s^2
};

enum class FieldKind { Ideal, Polynomial, Sampled };

/*
  One-dimensional gravitational field phi(z) with g = dphi/dz and
  Gamma = d^2phi/dz^2.

  Every variant is held internally as Taylor coefficients phi^(n)/n! about an
  expansion origin, so evaluation, the divided differences used by the phase
  integrals and the curvature series all read the same numbers. Fitted models
  carry a region of interest; evaluating outside it throws ExtrapolationError.
*/
class PotentialModel {
 public:
  using Source = std::variant<IdealField, PolynomialField, SampledField>;

  static PotentialModel ideal(double g, double gamma0);
  static PotentialModel polynomial(Eigen::VectorXd coeffs, double origin = 0.0,
                                   std::optional<Region> roi = std::nullopt);
  /// Fits g(z) at the requested degree; see fit_polynomial.
  static PotentialModel sampled(Eigen::VectorXd z, Eigen::VectorXd g, int fit_degree = 8);

  FieldKind kind() const;
  const Source& source() const { return source_; }

  const Eigen::VectorXd& coefficients() const { return phi_; }
  double origin() const { return origin_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const std::optional<Region>& region() const { return roi_; }
  double fit_residual_rms() const { return residual_rms_; }

  bool contains(double z) const { return !roi_ || roi_->contains(z); }

  /// Range-checked evaluation of phi, g and Gamma.
  FieldValues eval(double z) const;

  // Unchecked hot-path accessors.
  double potential(double z) const;
  double gravity(double z) const;
  double gradient(double z) const;
  /// (phi(a) - phi(b)) / (a - b); finite and accurate as a -> b.
  double potential_slope(double a, double b) const;

 private:
  PotentialModel(Source source, Eigen::VectorXd phi, double origin, std::optional<Region> roi,
                 double residual_rms);

  Source source_;
  Eigen::VectorXd phi_;
  Eigen::VectorXd g_;
  Eigen::VectorXd gamma_;
  double origin_ = 0.0;
  std::optional<Region> roi_;
  double residual_rms_ = 0.0;
};

struct FitResult {
  PotentialModel model;
  double residual_rms;
};

/*
  Least-squares polynomial fit of g(z). The potential is the analytic
  antiderivative with phi(z_min) = 0 and Gamma its analytic derivative. The
  returned model is valid on [min z_i, max z_i].
*/
FitResult fit_polynomial(const Eigen::VectorXd& z, const Eigen::VectorXd& g, int degree);

struct GaussianBump {
  double center;     // m
  double width;      // m
  double amplitude;  // 1/s^2
};

struct ProfileSpec {
  double g_ref = 9.812;         // g at roi.z_min
  double gamma_base = -2.75e-6;
  std::vector<GaussianBump> bumps;
  Region roi{0.0, 8.0};
  int fit_degree = 16;
  int samples = 801;

  void validate() const;
};

/// Gradient profile of a tall shaft: a few metre-scale features of ~1e-7 1/s^2
/// on top of the mean vertical gradient.
ProfileSpec default_profile_spec();

/// Exact target field of the spec, before the polynomial fit.
double target_gamma(const ProfileSpec& spec, double z);
double target_gravity(const ProfileSpec& spec, double z);

/// Samples g(z) of the target on a uniform grid and fits it.
PotentialModel synthesize_profile(const ProfileSpec& spec);

struct ProfileSamples {
  Eigen::VectorXd z;
  Eigen::VectorXd g;
};

/// Reads `z_m,g_mps2` CSV (extra trailing columns ignored, `#` lines skipped); z strictly increasing.
ProfileSamples read_profile_csv(const std::string& path);
ProfileSamples parse_profile_csv(const std::string& text);

}  // namespace cgi
