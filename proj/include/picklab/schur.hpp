#pragma once

#include <optional>
#include <vector>

#include "picklab/pick.hpp"

namespace picklab {

/// One coefficient-stripping step of the Schur recursion: the node that was
/// consumed and the value the running function takes there.
struct SchurStep {
  Complex node;
  Complex parameter;
};

/// Schur-class interpolant built by the stripping recursion.  Evaluation
/// unwinds the recursion from the terminal constant; the result stays in the
/// closed unit ball on the closed disk.
class SchurInterpolant {
 public:
  SchurInterpolant(std::vector<SchurStep> steps, Complex terminal);

  Complex evaluate(Complex z) const;
  /// Max of |f| over `samples` equispaced boundary points (samples >= 16).
  /// Nondecreasing when the sample count is refined by factors of 2.
  double boundary_sup(int samples) const;

  const std::vector<SchurStep>& steps() const { return steps_; }
  Complex terminal() const { return terminal_; }

 private:
  std::vector<SchurStep> steps_;
  Complex terminal_;
};

enum class SolveStatus { Solved, Marginal, Unsolvable };

/// Result of solve_classical.  An interpolant is attached whenever the
/// construction went through; Marginal marks problems whose Pick matrix sits
/// inside the indeterminate band |min eig| <= tol * scale, where boundary
/// effects make a hard Solvable/Unsolvable call numerically unreliable.
struct SolveResult {
  SolveStatus status = SolveStatus::Unsolvable;
  std::optional<SchurInterpolant> interpolant;
  double pick_min_eigenvalue = 0.0;
  double scale = 0.0;  // trace/n of the Szego Pick matrix
  int violating_step = -1;
  double node_error = 0.0;  // max |f(z_i) - w_i| when an interpolant exists

  bool solved() const { return interpolant.has_value(); }
};

/// Classical Nevanlinna-Pick on the disk via the Schur recursion.
/// Unsolvable exactly when the Szego Pick matrix has min eigenvalue
/// < -tol * scale.
SolveResult solve_classical(const InterpolationData& data, double tol = 1e-9);

}  // namespace picklab
