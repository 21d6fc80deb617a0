#pragma once

#include <string>
#include <vector>

#include "picklab/kernels.hpp"
#include "picklab/numerics.hpp"

namespace picklab {

/// Scalar interpolation problem: nodes lambda_i with targets w_i.
struct InterpolationData {
  std::vector<Node> nodes;
  std::vector<Complex> targets;
};

/// Matrix-target interpolation problem: one r x r target per node.
struct MatrixInterpolationData {
  std::vector<Node> nodes;
  std::vector<Matrix> targets;
  int r = 1;
};

/// Assembled Pick matrix together with its PSD verdict and the label of the
/// kernel or subspace that produced it.
struct PickReport {
  HermitianMatrix matrix;
  PsdVerdict verdict;
  std::string label;
};

/// Relative verdict tolerance: the absolute PSD tolerance is
/// rel_tol * |tr(P)| / n, so verdicts track the matrix scale.
inline constexpr double kPickRelTol = 1e-9;

void validate_interpolation_data(const InterpolationData& data);

/// Pick matrix [ (1 - w_i conj(w_j)) gram_ij ].
PickReport scalar_pick(const InterpolationData& data, const HermitianMatrix& gram,
                       std::string label = "scalar", double rel_tol = kPickRelTol);

/// Block Pick matrix with (i,j) block (I_r - W_i W_j^*) gram_ij.
PickReport block_pick(const MatrixInterpolationData& data, const HermitianMatrix& gram,
                      std::string label = "block", double rel_tol = kPickRelTol);

/// Pick matrix over a family kernel Gram; zero rows (annihilated nodes) are
/// kept, as a zero row is automatically compatible with positivity.
PickReport family_pick(const InterpolationData& data, const HermitianMatrix& family_gram,
                       std::string label, double rel_tol = kPickRelTol);

/// Pick matrix [ (1 - w_i conj(w_j)) <x_j, x_i> ] from one kernel-direction
/// vector per node.
PickReport multiplicity_pick(const InterpolationData& data,
                             const std::vector<Vector>& vectors,
                             std::string label = "multiplicity",
                             double rel_tol = kPickRelTol);

/// Core of multiplicity_pick for callers whose nodes are abstract labels.
PickReport multiplicity_pick(const std::vector<Complex>& targets,
                             const std::vector<Vector>& vectors, std::string label,
                             double rel_tol = kPickRelTol);

}  // namespace picklab
