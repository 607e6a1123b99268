#pragma once

// Symmetric eigenvalues without external dependencies: Householder reduction
// to tridiagonal form, then implicit-shift QL. A cyclic Jacobi solver is kept
// alongside as an independent slow path for cross-checking.

#include <cstddef>
#include <vector>

#include "acv/matrix.hpp"

namespace acv::eigen {

struct TridiagonalForm {
  std::vector<double> diag;     // n
  std::vector<double> offdiag;  // n - 1 (empty when n <= 1)
};

/// Relative Frobenius asymmetry ||M - M^T||_F / ||M||_F (0 for the zero matrix).
double asymmetry(const Matrix& m);

/// Orthogonally similar tridiagonal form. Throws ContractError when m is not
/// square or its relative asymmetry exceeds 1e-8. Columns whose sub-diagonal
/// tail is already zero are passed through untouched.
TridiagonalForm tridiagonalize(const Matrix& m);

inline constexpr int kMaxQlIterations = 30;

/// All eigenvalues of the tridiagonal form, ascending. Throws
/// NonConvergenceError when one eigenvalue needs more than 30 QL sweeps.
std::vector<double> eig_tridiagonal(TridiagonalForm t);

enum class Definiteness { Indefinite, PositiveSemidefinite };

/// tridiagonalize + eig_tridiagonal. For PSD inputs, values in [-tol, 0) with
/// tol = 1e-10 * max(1, lambda_max) are clamped to 0; anything below -tol
/// raises NumericalDegeneracyError.
std::vector<double> eigvals_sym(const Matrix& m, Definiteness kind = Definiteness::Indefinite);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// off_tol * max(1, ||m||_F). Ascending eigenvalues. O(n^3) per sweep.
std::vector<double> jacobi_eigenvalues(const Matrix& m, double off_tol = 1e-14,
                                       int max_sweeps = 100);

}  // namespace acv::eigen
