#pragma once

#include <vector>

#include "picklab/types.hpp"

namespace picklab {

/// Square complex matrix whose Hermitian symmetry has been verified on
/// construction: max |H - H^*| <= 1e-12 * max |H|, and n >= 1.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix entries);

  const Matrix& entries() const { return entries_; }
  Index size() const { return entries_.rows(); }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }
  double trace_mean() const;  // Re(tr H)/n, the scale used by relative tolerances

 private:
  Matrix entries_;
};

/// Outcome of a positive-semidefiniteness check.
struct PsdVerdict {
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool is_psd = false;  // min_eigenvalue >= -tolerance
};

/// A linear subspace of C^n carried as an explicit column-orthonormal basis.
/// The zero subspace is d = 0 with an n x 0 basis.
class Subspace {
 public:
  Subspace(Index ambient_dim, Matrix basis);

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  Index ambient_dim_;
  Matrix basis_;
};

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kContainmentTol = 1e-8;

/// Orthonormal basis of span(vectors) via SVD; directions with singular value
/// below rank_tol * (largest singular value) are dropped.
Subspace orthonormal_basis(const std::vector<Vector>& vectors,
                           double rank_tol = kDefaultRankTol);

/// Same, with the vectors given as matrix columns.
Subspace orthonormal_basis(const Matrix& columns,
                           double rank_tol = kDefaultRankTol);

/// big (-) small.  Requires span(small) contained in span(big) within
/// kContainmentTol; the violation, if any, is reported with its measured
/// defect.  The result is orthogonal to small and dim(big) - dim(small)
/// dimensional.
Subspace subspace_difference(const Subspace& big, const Subspace& small);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// ||Q^* A Q|| for Q the orthonormal basis of N; equals ||P_N A P_N||.
double compression_norm(const Matrix& a, const Subspace& n);

/// Minimum eigenvalue of the Hermitian symmetrization (H + H^*)/2, with the
/// PSD verdict taken at the given absolute tolerance.
PsdVerdict psd_check(const HermitianMatrix& h, double tol);

}  // namespace picklab
