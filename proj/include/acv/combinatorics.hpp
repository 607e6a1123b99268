#pragma once

// Exact integer counts behind the moment method. The J-vertex count is called
// sJ throughout to keep it apart from the time lag.

#include <boost/multiprecision/cpp_int.hpp>

namespace acv::combinatorics {

using BigInt = boost::multiprecision::cpp_int;

/// C(n, r); 0 when r < 0 or r > n.
BigInt binomial(int n, int r);

/// C(2k, k) / (k + 1).
BigInt catalan(int k);

/// (1/k) C(2k, k - 1), the k-th moment of the squared-semicircle law. k >= 1.
BigInt moment_formula(int k);

inline constexpr int kMaxDyckEnumeration = 14;

/// Counts +-1 paths of length 2k that stay >= 0 and end at 0 by explicit
/// backtracking. Throws BudgetError for k > 14.
BigInt count_dyck_paths(int k);

/// (1/k) C(2k, tI - 1) C(k, tI) for 1 <= tI <= k: the number of isomorphism
/// classes with tI distinct I-vertices. Exact as a class count at tI = k.
BigInt iso_class_count(int k, int tI);

/// iso_class_count(k, tI) * C(2k - tI, sJ - 1) for 2 <= tI <= k, 1 <= sJ <= 2k.
/// tI = 1 is rejected with DomainError; use iso_class_bound_t1.
BigInt iso_class_bound(int k, int tI, int sJ);

/// C(2k, 2k - sJ): the class bound when all I-indices coincide.
BigInt iso_class_bound_t1(int k, int sJ);

}  // namespace acv::combinatorics
