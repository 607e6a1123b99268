#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace acv::quad {

/// Adaptive 15-point Gauss–Kronrod integral of f over [a, b]. The rule never
/// evaluates f at the endpoints, so integrable endpoint singularities are
/// tolerated (though they converge slowly; prefer a smoothing substitution).
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, double* error = nullptr) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  const double value = Rule::integrate(f, a, b, /*max_depth=*/30, tol, &err);
  if (error != nullptr) *error = err;
  return value;
}

}  // namespace acv::quad
