#pragma once

#include <memory>
#include <string>
#include <vector>

#include "picklab/numerics.hpp"
#include "picklab/types.hpp"

namespace picklab {

/// A point of the unit disk (d = 1) or the unit ball of C^d.
class Node {
 public:
  Node(Complex z) : coords_{z} {}  // NOLINT: implicit for disk points
  explicit Node(std::vector<Complex> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double norm() const;
  Complex coordinate(int k) const { return coords_[static_cast<std::size_t>(k)]; }
  const std::vector<Complex>& coordinates() const { return coords_; }

  bool operator==(const Node& other) const { return coords_ == other.coords_; }

 private:
  std::vector<Complex> coords_;
};

/// A named positive kernel with an evaluation rule.  Immutable and cheap to
/// copy (shared internals).
class KernelSpec {
 public:
  enum class Variant { Szego, Bergman, DruryArveson, WeightedBergman, ExplicitGram };

  static KernelSpec szego();
  static KernelSpec bergman();
  static KernelSpec drury_arveson(int dim);
  static KernelSpec weighted_bergman(double s, int truncation = 500);
  static KernelSpec explicit_gram(HermitianMatrix gram, std::vector<Node> labels);

  Variant variant() const { return variant_; }
  int node_dim() const { return node_dim_; }
  double weight_s() const { return s_; }
  int truncation() const { return truncation_; }
  std::string name() const;

  const HermitianMatrix& gram() const;        // ExplicitGram only
  const std::vector<Node>& labels() const;    // ExplicitGram only
  const std::vector<double>& monomial_norms() const;  // WeightedBergman only

 private:
  KernelSpec() = default;

  Variant variant_ = Variant::Szego;
  int node_dim_ = 1;
  double s_ = 0.0;
  int truncation_ = 0;
  std::shared_ptr<const std::vector<double>> norms_;  // normalized ||z^n||^2 under mu_s
  std::shared_ptr<const HermitianMatrix> gram_;
  std::shared_ptr<const std::vector<Node>> labels_;
};

/// k(z, w) = <k_w, k_z>; conjugate-symmetric in (z, w).
Complex kernel_eval(const KernelSpec& spec, const Node& z, const Node& w);

/// Gram over pairwise-distinct nodes: entries[i][j] = k(lambda_i, lambda_j).
HermitianMatrix gram_matrix(const KernelSpec& spec, const std::vector<Node>& nodes);

/// Bergman-space kernel for the n-th derivative functional at lambda:
/// k_{lambda,n}(z) = (n+1)! z^n (1 - conj(lambda) z)^{-(n+2)}, so that
/// <h, k_{lambda,n}> = h^(n)(lambda).  n = 0 is the Bergman kernel.
Complex bergman_derivative_kernel(const Node& lambda, int n, const Node& z);

/// ||z^n||^2 under d mu_s(z) = (1 - |z|)^{s-1} dm(z), from the Beta integral
/// c_n = 2 pi B(2n+2, s), normalized so c_0 = 1.  Returned for n = 0..max_degree.
std::vector<double> weighted_bergman_norms(double s, int max_degree);

}  // namespace picklab
