#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "picklab/numerics.hpp"
#include "picklab/parallel.hpp"
#include "picklab/pick.hpp"

namespace picklab {

/// Lattice enumeration is exponential in n - |E|; larger n requires an
/// explicit override.
inline constexpr int kDefaultLatticeCap = 12;

/// The N-idempotent multiplier algebra generated by a similarity S:
/// x_i = S e_i, dual basis y_i = (S^*)^{-1} e_i, idempotents p_i = x_i y_i^*.
class FiniteAlgebra {
 public:
  static FiniteAlgebra build(const Matrix& s, double tol = 1e-12);

  int size() const { return static_cast<int>(s_.rows()); }
  const Matrix& similarity() const { return s_; }
  const Matrix& similarity_inverse() const { return s_inv_; }
  Vector x(int i) const { return s_.col(i); }
  Vector y(int i) const { return y_.col(i); }
  const Matrix& dual_basis() const { return y_; }
  Matrix idempotent(int i) const { return s_.col(i) * y_.col(i).adjoint(); }
  double condition() const { return condition_; }

 private:
  FiniteAlgebra(Matrix s, Matrix s_inv, Matrix y, double condition);

  Matrix s_;      // columns x_i
  Matrix s_inv_;
  Matrix y_;      // columns y_i
  double condition_;
};

/// A = sum a_i p_i = S diag(a) S^{-1}.
Matrix assemble(const FiniteAlgebra& alg, const std::vector<Complex>& a);

/// L_sigma = span{ x_i : i in sigma }.  Indices are 0-based.
Subspace lattice_subspace(const FiniteAlgebra& alg, const std::vector<int>& sigma);

/// N_sigma = L_sigma (-) L_{sigma \ E}; dimension |sigma intersect E|.
Subspace semi_invariant(const FiniteAlgebra& alg, const std::vector<int>& sigma,
                        const std::vector<int>& e);

struct SigmaNorm {
  std::vector<int> sigma;  // 0-based, sorted
  double norm = 0.0;
};

struct CompressionTable {
  std::vector<SigmaNorm> per_sigma;  // all sigma containing E, mask order
  double supremum = 0.0;
  std::vector<int> argmax;
};

/// Enumerates all sigma containing E and compresses A to each N_sigma.
CompressionTable compression_sup(const FiniteAlgebra& alg, const std::vector<Complex>& a,
                                 const std::vector<int>& e,
                                 Execution exec = Execution::Parallel,
                                 int lattice_cap = kDefaultLatticeCap);

struct OptimizerOptions {
  int restarts = 8;
  int max_iter = 2000;
  double tol = 1e-7;
};

struct DistanceResult {
  double distance = 0.0;
  std::vector<Complex> minimizer;  // coefficients over the complement of E, ascending
  bool converged = false;
  double restart_spread = 0.0;  // best-vs-worst restart disagreement
};

/// dist(A, J_E) = min over c of || A - sum_{i not in E} c_i p_i ||, a convex
/// function of the complex coefficients; restart agreement within 10 * tol is
/// the convergence certificate.
DistanceResult distance_to_ideal(const FiniteAlgebra& alg, const std::vector<Complex>& a,
                                 const std::vector<int>& e,
                                 const OptimizerOptions& opt = {});

struct DistanceReport {
  CompressionTable compressions;
  double distance = 0.0;
  std::vector<Complex> minimizer;
  double gap = 0.0;  // distance - sup of compressions
  bool converged = false;
  double restart_spread = 0.0;
};

DistanceReport np_gap(const FiniteAlgebra& alg, const std::vector<Complex>& a,
                      const std::vector<int>& e, const OptimizerOptions& opt = {},
                      Execution exec = Execution::Parallel,
                      int lattice_cap = kDefaultLatticeCap);

/// For each sigma containing E, the Pick matrix built from the extended
/// kernel directions kappa_i spanning L_sigma (-) L_{sigma \ {i}}, i in E.
std::vector<PickReport> family_pick_verdict(const FiniteAlgebra& alg,
                                            const std::vector<int>& e,
                                            const std::vector<Complex>& targets,
                                            double rel_tol = kPickRelTol,
                                            Execution exec = Execution::Parallel,
                                            int lattice_cap = kDefaultLatticeCap);

/// Matrix-target variant: (i,j) block (I_r - W_i W_j^*) kron (Q_i^* Q_j).
std::vector<PickReport> block_family_test(const FiniteAlgebra& alg,
                                          const std::vector<int>& e,
                                          const std::vector<Matrix>& targets,
                                          double rel_tol = kPickRelTol,
                                          Execution exec = Execution::Parallel,
                                          int lattice_cap = kDefaultLatticeCap);

struct SearchSampler {
  enum class Distribution { IntegerUniform, ComplexGaussian };
  Distribution distribution = Distribution::IntegerUniform;
  double entry_min = -3.0;
  double entry_max = 3.0;
  bool integer_entries = true;
};

struct SearchCandidate {
  Matrix s;
  std::vector<Complex> a;
  std::vector<int> e;
};

struct SearchHit {
  Matrix s;
  std::vector<Complex> a;
  std::vector<int> e;
  DistanceReport report;
  std::int64_t sample_index = 0;  // injected candidates use negative indices
};

struct SearchOutcome {
  std::vector<SearchHit> hits;  // sorted by gap descending, then sample index
  int samples_evaluated = 0;
  int samples_skipped = 0;  // near-singular or otherwise degenerate draws
};

/// Randomized search for instances whose distance exceeds the compression
/// supremum by more than `threshold`.  Deterministic for a fixed seed: each
/// sample derives its own generator from (seed, index).
SearchOutcome search_violations(int n, int e_size, const SearchSampler& sampler,
                                std::uint64_t seed, int budget, double threshold,
                                const OptimizerOptions& opt = {},
                                Execution exec = Execution::Parallel,
                                const std::vector<SearchCandidate>& inject = {});

/// "{1,2,3}"-style display of a 0-based index set (printed 1-based).
std::string format_index_set(const std::vector<int>& indices);

}  // namespace picklab
