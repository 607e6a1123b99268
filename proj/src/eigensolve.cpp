#include "acv/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "acv/error.hpp"
#include "acv/simd/kernels.hpp"

namespace acv::eigen {
namespace {

constexpr double kSymmetryTol = 1e-8;
constexpr double kPsdClampTol = 1e-10;

}  // namespace

double asymmetry(const Matrix& m) {
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double d = m(i, j) - m(j, i);
      diff += d * d;
      norm += m(i, j) * m(i, j);
    }
  }
  return norm == 0.0 ? 0.0 : std::sqrt(diff / norm);
}

TridiagonalForm tridiagonalize(const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractError("tridiagonalize: matrix is not square");
  if (const double a = asymmetry(m); a > kSymmetryTol) {
    throw ContractError(fmt::format("tridiagonalize: relative asymmetry {:.3g} exceeds 1e-8", a));
  }
  const std::size_t n = m.rows();
  TridiagonalForm out;
  out.diag.resize(n);
  out.offdiag.resize(n > 0 ? n - 1 : 0);
  if (n == 0) return out;

  const auto& k = simd::active();
  Matrix a = m;
  std::vector<double> v(n), w(n);

  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t start = col + 1;
    const std::size_t len = n - start;
    double tail = 0.0;
    for (std::size_t i = start + 1; i < n; ++i) tail += a(i, col) * a(i, col);
    const double head = a(start, col);
    out.diag[col] = a(col, col);
    if (tail == 0.0) {
      out.offdiag[col] = head;
      continue;
    }
    const double sigma = std::sqrt(head * head + tail);
    const double alpha = head > 0.0 ? -sigma : sigma;
    // v = x - alpha e1, reflector H = I - beta v v^T maps x to alpha e1.
    for (std::size_t i = 0; i < len; ++i) v[i] = a(start + i, col);
    v[0] -= alpha;
    const double vtv = v[0] * v[0] + tail;
    const double beta = 2.0 / vtv;

    // w = beta B v - (beta^2/2)(v^T B v) v; B <- B - v w^T - w v^T.
    for (std::size_t i = 0; i < len; ++i) {
      w[i] = beta * k.dot(a.row(start + i).data() + start, v.data(), len);
    }
    const double half = 0.5 * beta * k.dot(w.data(), v.data(), len);
    k.axpy(-half, v.data(), w.data(), len);
    for (std::size_t i = 0; i < len; ++i) {
      k.rank2(a.row(start + i).data() + start, v[i], w.data(), w[i], v.data(), len);
    }
    out.offdiag[col] = alpha;
  }
  if (n >= 2) {
    out.diag[n - 2] = a(n - 2, n - 2);
    out.offdiag[n - 2] = a(n - 1, n - 2);
  }
  out.diag[n - 1] = a(n - 1, n - 1);
  return out;
}

std::vector<double> eig_tridiagonal(TridiagonalForm t) {
  auto& d = t.diag;
  const std::size_t n = d.size();
  if (t.offdiag.size() + 1 != n && !(n == 0 && t.offdiag.empty())) {
    throw ContractError("eig_tridiagonal: offdiag must have n - 1 entries");
  }
  if (n <= 1) return d;
  std::vector<double> e(t.offdiag);
  e.push_back(0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kMaxQlIterations) {
        throw NonConvergenceError(
            fmt::format("QL iteration: eigenvalue {} not deflated after {} sweeps", l,
                        kMaxQlIterations));
      }
      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigvals_sym(const Matrix& m, Definiteness kind) {
  auto values = eig_tridiagonal(tridiagonalize(m));
  if (kind == Definiteness::PositiveSemidefinite && !values.empty()) {
    const double tol = kPsdClampTol * std::max(1.0, values.back());
    for (double& v : values) {
      if (v < -tol) {
        throw NumericalDegeneracyError(
            fmt::format("eigenvalue {:.6g} of a PSD matrix is below -{:.3g}", v, tol));
      }
      if (v < 0.0) v = 0.0;
    }
  }
  return values;
}

}  // namespace acv::eigen
