#pragma once

// Lag-s sample autocovariance X = (1/T) sum_{t=s+1}^{s+T} e_t e_{t-s}^T and its
// normalized Gram matrix A = (T/p) X X^T.

#include <cstddef>
#include <string>

#include "acv/ensemble.hpp"
#include "acv/matrix.hpp"
#include "acv/spectrum.hpp"

namespace acv::core {

/// E1 holds e_1..e_T and E2 holds e_{s+1}..e_{s+T}, both as p x T.
struct Embeddings {
  Matrix lagged;   // E1
  Matrix leading;  // E2
};

Embeddings build_embeddings(const ensemble::EpsilonPanel& panel);

struct AcvMatrix {
  std::size_t p = 0;
  std::size_t T = 0;
  std::size_t lag = 0;
  Matrix X;
};

/// X = (1/T) E2 E1^T. Entry (i, j) is one dot product over time.
AcvMatrix build_acv(const Matrix& lagged, const Matrix& leading, std::size_t T,
                    std::size_t lag = 0);

struct GramMatrix {
  std::size_t p = 0;
  std::size_t T = 0;
  std::size_t lag = 0;
  Matrix A;
};

/// A = (T/p) X X^T. Only the lower triangle is computed; the upper triangle is
/// its mirror, so A is exactly symmetric.
GramMatrix normalized_gram(const AcvMatrix& acv);

/// panel -> X -> A -> sorted, clamped eigenvalues of A.
Spectrum spectrum_pipeline(const ensemble::EpsilonPanel& panel,
                           const std::string& distribution_tag = {});

}  // namespace acv::core
