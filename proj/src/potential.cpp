#include "cgi/potential.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>

#include "cgi/errors.hpp"
#include "cgi/polynomial.hpp"

namespace cgi {

PotentialModel::PotentialModel(Source source, Eigen::VectorXd phi, double origin,
                               std::optional<Region> roi, double residual_rms)
    : source_(std::move(source)),
      phi_(std::move(phi)),
      g_(derivative_coefficients(phi_)),
      gamma_(derivative_coefficients(g_)),
      origin_(origin),
      roi_(roi),
      residual_rms_(residual_rms) {}

PotentialModel PotentialModel::ideal(double g, double gamma0) {
  Eigen::VectorXd phi(3);
  phi << 0.0, g, 0.5 * gamma0;
  return PotentialModel(IdealField{g, gamma0}, std::move(phi), 0.0, std::nullopt, 0.0);
}

PotentialModel PotentialModel::polynomial(Eigen::VectorXd coeffs, double origin,
                                          std::optional<Region> roi) {
  if (coeffs.size() == 0) coeffs = Eigen::VectorXd::Zero(1);
  if (roi && !(roi->z_max > roi->z_min)) throw DomainError("degenerate region of interest");
  PolynomialField field{coeffs, origin};
  return PotentialModel(std::move(field), std::move(coeffs), origin, roi, 0.0);
}

PotentialModel PotentialModel::sampled(Eigen::VectorXd z, Eigen::VectorXd g, int fit_degree) {
  FitResult fit = fit_polynomial(z, g, fit_degree);
  const PotentialModel& m = fit.model;
  return PotentialModel(SampledField{std::move(z), std::move(g), fit_degree}, m.phi_, m.origin_,
                        m.roi_, fit.residual_rms);
}

FieldKind PotentialModel::kind() const {
  return static_cast<FieldKind>(source_.index());
}

FieldValues PotentialModel::eval(double z) const {
  if (!contains(z)) throw ExtrapolationError(z, roi_->z_min, roi_->z_max);
  return {potential(z), gravity(z), gradient(z)};
}

double PotentialModel::potential(double z) const { return horner(phi_, z - origin_); }
double PotentialModel::gravity(double z) const { return horner(g_, z - origin_); }
double PotentialModel::gradient(double z) const { return horner(gamma_, z - origin_); }

double PotentialModel::potential_slope(double a, double b) const {
  return divided_difference(phi_, a - origin_, b - origin_);
}

FitResult fit_polynomial(const Eigen::VectorXd& z, const Eigen::VectorXd& g, int degree) {
  const PowerSeriesFit fit = fit_power_series(z, g, degree);
  const Region roi{z.minCoeff(), z.maxCoeff()};

  // phi in powers of (z - center), shifted so that phi(z_min) = 0.
  Eigen::VectorXd phi = antiderivative_coefficients(fit.coeffs);
  phi(0) = -horner(phi, roi.z_min - fit.center);

  auto model = PotentialModel::polynomial(std::move(phi), fit.center, roi);
  return {std::move(model), fit.residual_rms};
}

void ProfileSpec::validate() const {
  if (!(roi.z_max > roi.z_min)) throw DomainError("degenerate region of interest");
  for (const auto& b : bumps) {
    if (!(b.width > 0.0)) throw DomainError("bump widths must be positive");
  }
  if (fit_degree < 0 || samples <= fit_degree) throw DomainError("too few profile samples");
}

ProfileSpec default_profile_spec() {
  ProfileSpec spec;
  spec.bumps = {{1.8, 1.0, 5.0e-8}, {4.3, 1.4, -7.0e-8}, {6.6, 1.2, 4.0e-8}};
  return spec;
}

double target_gamma(const ProfileSpec& spec, double z) {
  double gamma = spec.gamma_base;
  for (const auto& b : spec.bumps) {
    const double u = (z - b.center) / b.width;
    gamma += b.amplitude * std::exp(-0.5 * u * u);
  }
  return gamma;
}

double target_gravity(const ProfileSpec& spec, double z) {
  const double z_ref = spec.roi.z_min;
  double g = spec.g_ref + spec.gamma_base * (z - z_ref);
  const double root_half_pi = std::sqrt(0.5 * std::numbers::pi);
  for (const auto& b : spec.bumps) {
    const double s = std::numbers::sqrt2 * b.width;
    g += b.amplitude * b.width * root_half_pi *
         (std::erf((z - b.center) / s) - std::erf((z_ref - b.center) / s));
  }
  return g;
}

PotentialModel synthesize_profile(const ProfileSpec& spec) {
  spec.validate();
  Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(spec.samples, spec.roi.z_min, spec.roi.z_max);
  Eigen::VectorXd g = z.unaryExpr([&](double zi) { return target_gravity(spec, zi); });
  return fit_polynomial(z, g, spec.fit_degree).model;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, int line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InputError("profile CSV line " + std::to_string(line) + ": bad number '" +
                     std::string(field) + "'");
  }
  return value;
}

}  // namespace

ProfileSamples parse_profile_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool header_seen = false;
  std::vector<double> zs, gs;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto c1 = line.find(',');
    if (c1 == std::string_view::npos) {
      throw InputError("profile CSV line " + std::to_string(line_no) + ": expected two columns");
    }
    const auto c2 = line.find(',', c1 + 1);
    const std::string_view first = trim(line.substr(0, c1));
    const std::string_view second =
        trim(line.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1));
    if (!header_seen) {
      if (first != "z_m" || second != "g_mps2") {
        throw InputError("profile CSV must start with header 'z_m,g_mps2'");
      }
      header_seen = true;
      continue;
    }
    const double z = parse_double(first, line_no);
    const double g = parse_double(second, line_no);
    if (!zs.empty() && !(z > zs.back())) {
      throw InputError("profile CSV line " + std::to_string(line_no) +
                       ": heights must be strictly increasing");
    }
    zs.push_back(z);
    gs.push_back(g);
  }
  if (!header_seen) throw InputError("profile CSV is empty");
  if (zs.size() < 2) throw InputError("profile CSV needs at least two samples");
  return {Eigen::Map<Eigen::VectorXd>(zs.data(), static_cast<Eigen::Index>(zs.size())),
          Eigen::Map<Eigen::VectorXd>(gs.data(), static_cast<Eigen::Index>(gs.size()))};
}

ProfileSamples read_profile_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot open profile CSV '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_profile_csv(buf.str());
}

}  // namespace cgi
