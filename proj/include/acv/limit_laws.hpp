#pragma once

// The three limit laws involved: the semicircle law on [-2, 2], its image
// under |x| (the quarter law, limit of the singular values of sqrt(T/p) X)
// and its image under x^2 (limit of the eigenvalues of A).

#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

#include "acv/quadrature.hpp"

namespace acv::laws {

enum class LimitLaw { Semicircle, Quarter, Squared };

std::string_view law_name(LimitLaw law);
std::optional<LimitLaw> parse_law(std::string_view name);

struct Support {
  double lo;
  double hi;
};

Support support(LimitLaw law);

/// Density; 0 outside the support and at x <= 0 for Squared (unbounded at 0+).
double law_pdf(LimitLaw law, double x);

/// Closed-form distribution function.
///   semicircle: H(u) = 1/2 + u sqrt(4 - u^2) / (4 pi) + asin(u/2) / pi
///   quarter:    G(x) = 2 H(x) - 1
///   squared:    F(x) = 2 H(sqrt x) - 1
double law_cdf(LimitLaw law, double x);

/// Bisection on law_cdf to absolute tolerance 1e-12. DomainError unless
/// 0 <= u <= 1.
double law_quantile(LimitLaw law, double u);

/// Squared: exact (1/k) C(2k, k-1) (the Catalan number; 1 at k = 0).
/// Quarter, Semicircle: adaptive quadrature to 1e-10.
double law_moment(LimitLaw law, int k);

/// int w(x) dLaw(x) by adaptive quadrature of the density over its support,
/// using x = 2 sin(theta) (semicircle/quarter) or x = 4 sin^2(theta) (squared)
/// to remove the endpoint square-root behaviour. Independent of law_cdf.
template <class W>
double integrate_against(LimitLaw law, W&& w, double tol = 1e-12) {
  constexpr double half_pi = 1.57079632679489661923;
  switch (law) {
    case LimitLaw::Semicircle:
      return quad::integrate(
          [&](double th) {
            const double x = 2.0 * std::sin(th);
            return w(x) * law_pdf(law, x) * 2.0 * std::cos(th);
          },
          -half_pi, half_pi, tol);
    case LimitLaw::Quarter:
      return quad::integrate(
          [&](double th) {
            const double x = 2.0 * std::sin(th);
            return w(x) * law_pdf(law, x) * 2.0 * std::cos(th);
          },
          0.0, half_pi, tol);
    case LimitLaw::Squared:
      return quad::integrate(
          [&](double th) {
            const double sn = std::sin(th);
            const double x = 4.0 * sn * sn;
            return w(x) * law_pdf(law, x) * 8.0 * sn * std::cos(th);
          },
          0.0, half_pi, tol);
  }
  return 0.0;
}

/// Stieltjes transform s(z) = int dF(x) / (x - z) of the Squared law, equal to
/// -1/2 + sqrt(1/4 - 1/z) on the branch with s(z) ~ -1/z at infinity.
/// DomainError for real z in [0, 4].
std::complex<double> stieltjes_squared(std::complex<double> z);

}  // namespace acv::laws
