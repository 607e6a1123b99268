#include "acv/combinatorics.hpp"

#include <fmt/core.h>

#include "acv/error.hpp"

namespace acv::combinatorics {
namespace {

// Exact division, or ConsistencyError.
BigInt divide_exact(const BigInt& num, const BigInt& den, const char* what) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw ConsistencyError(fmt::format("{}: division is not exact", what));
  return q;
}

std::uint64_t dyck_walk(int remaining, int height) {
  if (height > remaining) return 0;
  if (remaining == 0) return 1;
  std::uint64_t n = dyck_walk(remaining - 1, height + 1);
  if (height > 0) n += dyck_walk(remaining - 1, height - 1);
  return n;
}

}  // namespace

BigInt binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt out = 1;
  for (int i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;  // exact: out is C(n - r + i, i) after this step
  }
  return out;
}

BigInt catalan(int k) {
  if (k < 0) throw DomainError("catalan: k must be >= 0");
  return divide_exact(binomial(2 * k, k), k + 1, "catalan");
}

BigInt moment_formula(int k) {
  if (k < 1) throw DomainError("moment_formula: k must be >= 1");
  return divide_exact(binomial(2 * k, k - 1), k, "moment_formula");
}

BigInt count_dyck_paths(int k) {
  if (k < 0) throw DomainError("count_dyck_paths: k must be >= 0");
  if (k > kMaxDyckEnumeration) {
    throw BudgetError(fmt::format("Dyck enumeration is capped at k = {} (asked for {})",
                                  kMaxDyckEnumeration, k));
  }
  return BigInt(dyck_walk(2 * k, 0));
}

BigInt iso_class_count(int k, int tI) {
  if (k < 1 || tI < 1 || tI > k) {
    throw DomainError(fmt::format("iso_class_count requires 1 <= tI <= k (k={}, tI={})", k, tI));
  }
  return divide_exact(binomial(2 * k, tI - 1) * binomial(k, tI), k, "iso_class_count");
}

BigInt iso_class_bound(int k, int tI, int sJ) {
  if (tI == 1) throw DomainError("iso_class_bound: tI = 1 uses iso_class_bound_t1");
  if (tI < 2 || tI > k || sJ < 1 || sJ > 2 * k) {
    throw DomainError(fmt::format(
        "iso_class_bound requires 2 <= tI <= k and 1 <= sJ <= 2k (k={}, tI={}, sJ={})", k, tI, sJ));
  }
  return iso_class_count(k, tI) * binomial(2 * k - tI, sJ - 1);
}

BigInt iso_class_bound_t1(int k, int sJ) {
  if (k < 1 || sJ < 1 || sJ > 2 * k) {
    throw DomainError(fmt::format("iso_class_bound_t1 requires 1 <= sJ <= 2k (k={}, sJ={})", k, sJ));
  }
  return binomial(2 * k, 2 * k - sJ);
}

}  // namespace acv::combinatorics
