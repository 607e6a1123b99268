// Cyclic Jacobi eigenvalue iteration. Deliberately shares no code with the
// Householder/QL path so the two can check each other.

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "acv/eigensolve.hpp"
#include "acv/error.hpp"

namespace acv::eigen {
namespace {

double off_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(const Matrix& m, double off_tol, int max_sweeps) {
  if (m.rows() != m.cols()) throw ContractError("jacobi: matrix is not square");
  const std::size_t n = m.rows();
  Matrix a = m;
  // Work on the exact symmetric part.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));

  double fro = 0.0;
  for (double x : a.data()) fro += x * x;
  const double target = off_tol * std::max(1.0, std::sqrt(fro));

  int sweep = 0;
  while (off_norm(a) >= target) {
    if (sweep++ == max_sweeps) {
      throw NonConvergenceError(fmt::format("jacobi: no convergence after {} sweeps", max_sweeps));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace acv::eigen
