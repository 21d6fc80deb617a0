#include "picklab/pick.hpp"

#include <stdexcept>
#include <utility>

namespace picklab {

namespace {

PickReport finish_report(Matrix pick, std::string label, double rel_tol) {
  HermitianMatrix wrapped(std::move(pick));
  const double scale = std::abs(wrapped.trace_mean());
  const PsdVerdict verdict = psd_check(wrapped, rel_tol * scale);
  return PickReport{std::move(wrapped), verdict, std::move(label)};
}

Matrix apply_scalar_weights(const std::vector<Complex>& targets, const Matrix& gram) {
  const Index n = gram.rows();
  Matrix pick(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Complex wi = targets[static_cast<std::size_t>(i)];
      const Complex wj = targets[static_cast<std::size_t>(j)];
      pick(i, j) = (1.0 - wi * std::conj(wj)) * gram(i, j);
    }
  }
  return pick;
}

}  // namespace

void validate_interpolation_data(const InterpolationData& data) {
  if (data.nodes.empty()) {
    throw std::invalid_argument("InterpolationData: needs at least one node");
  }
  if (data.nodes.size() != data.targets.size()) {
    throw std::invalid_argument("InterpolationData: one target per node required");
  }
  for (std::size_t i = 0; i < data.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < data.nodes.size(); ++j) {
      if (data.nodes[i] == data.nodes[j]) {
        throw std::invalid_argument("InterpolationData: duplicate nodes");
      }
    }
  }
}

PickReport scalar_pick(const InterpolationData& data, const HermitianMatrix& gram,
                       std::string label, double rel_tol) {
  validate_interpolation_data(data);
  if (gram.size() != static_cast<Index>(data.nodes.size())) {
    throw std::invalid_argument("scalar_pick: Gram size does not match node count");
  }
  return finish_report(apply_scalar_weights(data.targets, gram.entries()),
                       std::move(label), rel_tol);
}

PickReport family_pick(const InterpolationData& data, const HermitianMatrix& family_gram,
                       std::string label, double rel_tol) {
  validate_interpolation_data(data);
  if (family_gram.size() != static_cast<Index>(data.nodes.size())) {
    throw std::invalid_argument("family_pick: Gram size does not match node count");
  }
  return finish_report(apply_scalar_weights(data.targets, family_gram.entries()),
                       std::move(label), rel_tol);
}

PickReport block_pick(const MatrixInterpolationData& data, const HermitianMatrix& gram,
                      std::string label, double rel_tol) {
  const Index n = static_cast<Index>(data.nodes.size());
  if (n < 1 || gram.size() != n) {
    throw std::invalid_argument("block_pick: Gram size does not match node count");
  }
  if (data.targets.size() != data.nodes.size()) {
    throw std::invalid_argument("block_pick: one matrix target per node required");
  }
  const Index r = data.r;
  if (r < 1) {
    throw std::invalid_argument("block_pick: block size r must be >= 1");
  }
  for (const Matrix& w : data.targets) {
    if (w.rows() != r || w.cols() != r) {
      throw std::invalid_argument("block_pick: all targets must be r x r");
    }
  }
  Matrix pick(n * r, n * r);
  const Matrix identity = Matrix::Identity(r, r);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Matrix& wi = data.targets[static_cast<std::size_t>(i)];
      const Matrix& wj = data.targets[static_cast<std::size_t>(j)];
      pick.block(i * r, j * r, r, r) = (identity - wi * wj.adjoint()) * gram(i, j);
    }
  }
  return finish_report(0.5 * (pick + pick.adjoint()), std::move(label), rel_tol);
}

PickReport multiplicity_pick(const std::vector<Complex>& targets,
                             const std::vector<Vector>& vectors, std::string label,
                             double rel_tol) {
  if (targets.empty() || targets.size() != vectors.size()) {
    throw std::invalid_argument("multiplicity_pick: one vector per target required");
  }
  const Index ambient = vectors.front().size();
  for (const Vector& v : vectors) {
    if (v.size() != ambient) {
      throw std::invalid_argument("multiplicity_pick: vectors of mixed ambient dimension");
    }
  }
  const Index n = static_cast<Index>(targets.size());
  Matrix gram(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      // <x_j, x_i> with the pairing linear in the first slot.
      gram(i, j) = vectors[static_cast<std::size_t>(i)].dot(
          vectors[static_cast<std::size_t>(j)]);
    }
  }
  return finish_report(apply_scalar_weights(targets, gram), std::move(label), rel_tol);
}

PickReport multiplicity_pick(const InterpolationData& data,
                             const std::vector<Vector>& vectors, std::string label,
                             double rel_tol) {
  validate_interpolation_data(data);
  return multiplicity_pick(data.targets, vectors, std::move(label), rel_tol);
}

}  // namespace picklab
