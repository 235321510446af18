#pragma once

#include <Eigen/Dense>

namespace cgi {

/// Power series sum_n c[n] * s^n, evaluated by Horner's rule.
template <typename Derived, typename Scalar>
Scalar horner(const Eigen::DenseBase<Derived>& coeffs, Scalar s) {
  Scalar acc{0};
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) acc = acc * s + coeffs(n);
  return acc;
}

/*
  Divided difference (p(a) - p(b)) / (a - b) of the power series, without
  forming p(a) - p(b). With D_d = 0 and p_d = c_d, the recurrence
    D_k = p_{k+1}(a) + b * D_{k+1},   p_k(a) = a * p_{k+1}(a) + c_k
  runs alongside Horner's rule for p(a). Well-defined for a == b (gives p'(a)).
*/
template <typename Derived, typename Scalar>
Scalar divided_difference(const Eigen::DenseBase<Derived>& coeffs, Scalar a, Scalar b) {
  const Eigen::Index d = coeffs.size() - 1;
  if (d < 1) return Scalar{0};
  Scalar pa = coeffs(d);
  Scalar dd{0};
  for (Eigen::Index k = d - 1; k >= 0; --k) {
    dd = pa + b * dd;
    pa = pa * a + coeffs(k);
  }
  return dd;
}

/// Coefficients of d/ds of the power series.
inline Eigen::VectorXd derivative_coefficients(const Eigen::VectorXd& coeffs) {
  if (coeffs.size() <= 1) return Eigen::VectorXd::Zero(1);
  Eigen::VectorXd out(coeffs.size() - 1);
  for (Eigen::Index n = 1; n < coeffs.size(); ++n) out(n - 1) = static_cast<double>(n) * coeffs(n);
  return out;
}

/// Coefficients of the antiderivative vanishing at s = 0.
inline Eigen::VectorXd antiderivative_coefficients(const Eigen::VectorXd& coeffs) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(coeffs.size() + 1);
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) out(n + 1) = coeffs(n) / static_cast<double>(n + 1);
  return out;
}

struct PowerSeriesFit {
  Eigen::VectorXd coeffs;  // in powers of (x - center)
  double center = 0.0;
  double residual_rms = 0.0;
};

/*
  Least-squares power series of the given degree through (x_i, y_i).

  The design matrix is built in the scaled variable (x - center) / half_width so
  that its columns stay O(1); coefficients are returned in powers of
  (x - center). Throws FitError when the system is underdetermined or rank
  deficient.
*/
PowerSeriesFit fit_power_series(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int degree);

}  // namespace cgi
