#include "picklab/npc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace picklab {

CompleteNpResult complete_np_test(const HermitianMatrix& gram, int base, double tol) {
  const Index n = gram.size();
  if (base < 0 || base >= n) {
    throw std::invalid_argument("complete_np_test: base index out of range");
  }
  const Matrix& g = gram.entries();
  const double scale = g.cwiseAbs().maxCoeff();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (std::abs(g(i, j)) <= tol * scale) {
        std::ostringstream msg;
        msg << "complete_np_test: Gram entry (" << i << "," << j
            << ") vanishes; kernel restriction is reducible";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  const Index b = base;
  Matrix f(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      f(i, j) = 1.0 - g(i, b) * g(b, j) / (g(i, j) * g(b, b));
    }
  }
  HermitianMatrix wrapped(0.5 * (f + f.adjoint()));
  const PsdVerdict verdict = psd_check(wrapped, tol);
  return CompleteNpResult{std::move(wrapped), verdict, base};
}

EmbeddingResult embed_drury_arveson(const HermitianMatrix& gram, int base, double tol) {
  CompleteNpResult test = complete_np_test(gram, base, tol);
  if (!test.verdict.is_psd) {
    std::ostringstream msg;
    msg << "embed_drury_arveson: F not PSD beyond tolerance, min eigenvalue "
        << test.verdict.min_eigenvalue;
    throw std::invalid_argument(msg.str());
  }

  const Index n = gram.size();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(test.f.entries());
  const auto& eigs = solver.eigenvalues();  // ascending
  const double cutoff = 1e-10 * std::max(eigs(n - 1), 0.0);

  EmbeddingResult result;
  result.base = base;
  std::vector<Index> kept;
  for (Index k = 0; k < n; ++k) {
    if (eigs(k) > cutoff) {
      kept.push_back(k);
    }
  }
  result.d = static_cast<int>(kept.size());

  // Rows of B are sqrt(lambda_k) v_k^*, so <b_j, b_i> = B_i^* B_j = F_ij.
  Matrix b_matrix(result.d, n);
  for (std::size_t row = 0; row < kept.size(); ++row) {
    b_matrix.row(static_cast<Index>(row)) =
        std::sqrt(eigs(kept[row])) * solver.eigenvectors().col(kept[row]).adjoint();
  }
  result.b.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    result.b.push_back(b_matrix.col(i));
  }

  const Matrix& g = gram.entries();
  const double root = std::sqrt(g(base, base).real());
  result.delta.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    result.delta.push_back(g(base, i) / root);
  }

  double residual = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Complex pairing = result.b[static_cast<std::size_t>(i)].dot(
          result.b[static_cast<std::size_t>(j)]);  // <b_j, b_i>
      const Complex reconstructed = std::conj(result.delta[static_cast<std::size_t>(i)]) *
                                    result.delta[static_cast<std::size_t>(j)] /
                                    (1.0 - pairing);
      residual = std::max(residual, std::abs(g(i, j) - reconstructed));
    }
  }
  result.residual = residual;
  if (residual > tol * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    std::ostringstream msg;
    msg << "embed_drury_arveson: reconstruction residual " << residual
        << " exceeds tolerance";
    throw std::runtime_error(msg.str());
  }
  return result;
}

}  // namespace picklab
