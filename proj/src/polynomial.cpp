#include "cgi/polynomial.hpp"

#include <cmath>

#include "cgi/errors.hpp"

namespace cgi {

PowerSeriesFit fit_power_series(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int degree) {
  if (degree < 0) throw FitError("polynomial degree must be non-negative");
  if (x.size() != y.size()) throw FitError("abscissa and ordinate sizes differ");
  const Eigen::Index n = x.size();
  const Eigen::Index terms = degree + 1;
  if (n <= degree) throw FitError("need more samples than the polynomial degree");

  const double lo = x.minCoeff();
  const double hi = x.maxCoeff();
  const double center = 0.5 * (lo + hi);
  const double half_width = 0.5 * (hi - lo) > 0.0 ? 0.5 * (hi - lo) : 1.0;

  Eigen::MatrixXd design(n, terms);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = (x(i) - center) / half_width;
    double p = 1.0;
    for (Eigen::Index j = 0; j < terms; ++j) {
      design(i, j) = p;
      p *= s;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < terms) throw FitError("rank-deficient polynomial fit (repeated abscissae?)");
  const Eigen::VectorXd scaled = qr.solve(y);

  PowerSeriesFit fit;
  fit.center = center;
  fit.coeffs.resize(terms);
  double scale = 1.0;
  for (Eigen::Index j = 0; j < terms; ++j) {
    fit.coeffs(j) = scaled(j) / scale;
    scale *= half_width;
  }
  const Eigen::VectorXd residual = design * scaled - y;
  fit.residual_rms = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  return fit;
}

}  // namespace cgi
