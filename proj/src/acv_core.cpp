#include "acv/acv_core.hpp"

#include <algorithm>

#include "acv/eigensolve.hpp"
#include "acv/error.hpp"
#include "acv/simd/kernels.hpp"

namespace acv::core {

Embeddings build_embeddings(const ensemble::EpsilonPanel& panel) {
  const std::size_t p = panel.p;
  const std::size_t T = panel.T;
  if (panel.entries.rows() != p || panel.entries.cols() != T + panel.lag || T < 1) {
    throw ContractError("panel shape does not match p x (T + lag)");
  }
  Embeddings e{Matrix(p, T), Matrix(p, T)};
  for (std::size_t i = 0; i < p; ++i) {
    const auto src = panel.entries.row(i);
    std::copy_n(src.begin(), T, e.lagged.row(i).begin());
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(panel.lag), T, e.leading.row(i).begin());
  }
  return e;
}

AcvMatrix build_acv(const Matrix& lagged, const Matrix& leading, std::size_t T, std::size_t lag) {
  if (lagged.rows() != leading.rows() || lagged.cols() != T || leading.cols() != T) {
    throw ContractError("embeddings must both be p x T");
  }
  const std::size_t p = lagged.rows();
  const auto& k = simd::active();
  const double inv_t = 1.0 / static_cast<double>(T);
  AcvMatrix out{p, T, lag, Matrix(p, p)};
  for (std::size_t i = 0; i < p; ++i) {
    const double* lead = leading.row(i).data();
    auto dst = out.X.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      dst[j] = k.dot(lead, lagged.row(j).data(), T) * inv_t;
    }
  }
  return out;
}

GramMatrix normalized_gram(const AcvMatrix& acv) {
  const std::size_t p = acv.p;
  const auto& k = simd::active();
  const double scale = static_cast<double>(acv.T) / static_cast<double>(p);
  GramMatrix out{p, acv.T, acv.lag, Matrix(p, p)};
  for (std::size_t i = 0; i < p; ++i) {
    const double* xi = acv.X.row(i).data();
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = scale * k.dot(xi, acv.X.row(j).data(), p);
      out.A(i, j) = v;
      out.A(j, i) = v;
    }
  }
  return out;
}

Spectrum spectrum_pipeline(const ensemble::EpsilonPanel& panel, const std::string& distribution_tag) {
  const auto emb = build_embeddings(panel);
  const auto acv = build_acv(emb.lagged, emb.leading, panel.T, panel.lag);
  const auto gram = normalized_gram(acv);
  Spectrum s;
  s.values = eigen::eigvals_sym(gram.A, eigen::Definiteness::PositiveSemidefinite);
  s.meta = {panel.p, panel.T, panel.lag, distribution_tag, panel.seed};
  return s;
}

}  // namespace acv::core
