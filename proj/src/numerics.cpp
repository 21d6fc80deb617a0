#include "picklab/numerics.hpp"

#include <sstream>
#include <stdexcept>

namespace picklab {

HermitianMatrix::HermitianMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("HermitianMatrix: expected square matrix with n >= 1");
  }
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "HermitianMatrix: asymmetry " << asym << " exceeds 1e-12 * " << scale;
    throw std::invalid_argument(msg.str());
  }
}

double HermitianMatrix::trace_mean() const {
  return entries_.trace().real() / static_cast<double>(entries_.rows());
}

Subspace::Subspace(Index ambient_dim, Matrix basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (ambient_dim_ < 1) {
    throw std::invalid_argument("Subspace: ambient dimension must be positive");
  }
  if (basis_.rows() != ambient_dim_ || basis_.cols() > ambient_dim_) {
    throw std::invalid_argument("Subspace: basis shape inconsistent with ambient dimension");
  }
  if (basis_.cols() > 0) {
    const Matrix gram = basis_.adjoint() * basis_;
    const double defect =
        (gram - Matrix::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
      std::ostringstream msg;
      msg << "Subspace: basis not orthonormal, defect " << defect;
      throw std::invalid_argument(msg.str());
    }
  }
}

Subspace Subspace::zero(Index ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace orthonormal_basis(const Matrix& columns, double rank_tol) {
  if (columns.rows() < 1) {
    throw std::invalid_argument("orthonormal_basis: empty ambient dimension");
  }
  if (columns.cols() == 0) {
    return Subspace::zero(columns.rows());
  }
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_tol * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff && sv(rank) > 0.0) {
    ++rank;
  }
  return Subspace(columns.rows(), svd.matrixU().leftCols(rank));
}

Subspace orthonormal_basis(const std::vector<Vector>& vectors, double rank_tol) {
  if (vectors.empty()) {
    throw std::invalid_argument("orthonormal_basis: empty ambient dimension (no vectors)");
  }
  const Index n = vectors.front().size();
  if (n < 1) {
    throw std::invalid_argument("orthonormal_basis: empty ambient dimension");
  }
  Matrix columns(n, static_cast<Index>(vectors.size()));
  for (Index j = 0; j < columns.cols(); ++j) {
    if (vectors[static_cast<std::size_t>(j)].size() != n) {
      throw std::invalid_argument("orthonormal_basis: vectors of mixed ambient dimension");
    }
    columns.col(j) = vectors[static_cast<std::size_t>(j)];
  }
  return orthonormal_basis(columns, rank_tol);
}

Subspace subspace_difference(const Subspace& big, const Subspace& small) {
  if (big.ambient_dim() != small.ambient_dim()) {
    throw std::invalid_argument("subspace_difference: ambient dimension mismatch");
  }
  if (small.dim() == 0) {
    return big;
  }
  const Matrix& b = big.basis();
  const Matrix& s = small.basis();
  // Containment check: the part of small outside big.
  const Matrix coords = b.adjoint() * s;  // dim(big) x dim(small)
  const double defect = spectral_norm(s - b * coords);
  if (small.dim() > big.dim() || defect > kContainmentTol) {
    std::ostringstream msg;
    msg << "subspace_difference: containment violated, defect " << defect;
    throw std::invalid_argument(msg.str());
  }
  // Complement of range(coords) inside big's coordinates.
  Eigen::JacobiSVD<Matrix> svd(coords, Eigen::ComputeFullU);
  const Matrix tail = svd.matrixU().rightCols(big.dim() - small.dim());
  return Subspace(big.ambient_dim(), b * tail);
}

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double compression_norm(const Matrix& a, const Subspace& n) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("compression_norm: operator must be square");
  }
  if (a.rows() != n.ambient_dim()) {
    throw std::invalid_argument("compression_norm: dimension mismatch");
  }
  if (n.dim() == 0) {
    return 0.0;
  }
  const Matrix compressed = n.basis().adjoint() * a * n.basis();
  return spectral_norm(compressed);
}

PsdVerdict psd_check(const HermitianMatrix& h, double tol) {
  const Matrix sym = 0.5 * (h.entries() + h.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  PsdVerdict verdict;
  verdict.min_eigenvalue = solver.eigenvalues().minCoeff();
  verdict.tolerance = tol;
  verdict.is_psd = verdict.min_eigenvalue >= -tol;
  return verdict;
}

}  // namespace picklab
