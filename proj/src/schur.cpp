#include "picklab/schur.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace picklab {

namespace {

constexpr double kBoundaryBand = 1e-10;

Complex blaschke(Complex z, Complex z0) {
  return (z - z0) / (1.0 - std::conj(z0) * z);
}

Complex moebius(Complex w, Complex rho) {
  return (w - rho) / (1.0 - std::conj(rho) * w);
}

struct Construction {
  std::optional<SchurInterpolant> interpolant;
  int violating_step = -1;
};

// Runs the stripping recursion.  Targets with |rho| within kBoundaryBand of 1
// terminate early: the only Schur function attaining a unimodular value at an
// interior point is that constant, so the remaining targets must agree with it.
Construction run_recursion(const std::vector<Complex>& nodes,
                           std::vector<Complex> targets, double tol) {
  const std::size_t n = nodes.size();
  std::vector<SchurStep> steps;
  const double agree_tol = std::max(100.0 * tol, 1e-8);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex rho = targets[k];
    const double mag = std::abs(rho);
    if (mag > 1.0 + kBoundaryBand) {
      return Construction{std::nullopt, static_cast<int>(k)};
    }
    if (mag >= 1.0 - kBoundaryBand) {
      const Complex unimodular = rho / mag;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (std::abs(targets[j] - unimodular) > agree_tol) {
          return Construction{std::nullopt, static_cast<int>(k)};
        }
      }
      return Construction{SchurInterpolant(std::move(steps), unimodular), -1};
    }
    steps.push_back(SchurStep{nodes[k], rho});
    for (std::size_t j = k + 1; j < n; ++j) {
      targets[j] = moebius(targets[j], rho) / blaschke(nodes[j], nodes[k]);
    }
  }
  Complex terminal = targets[n - 1];
  const double mag = std::abs(terminal);
  if (mag > 1.0 + kBoundaryBand) {
    return Construction{std::nullopt, static_cast<int>(n) - 1};
  }
  if (mag > 1.0) {
    terminal /= mag;
  }
  return Construction{SchurInterpolant(std::move(steps), terminal), -1};
}

}  // namespace

SchurInterpolant::SchurInterpolant(std::vector<SchurStep> steps, Complex terminal)
    : steps_(std::move(steps)), terminal_(terminal) {
  if (std::abs(terminal_) > 1.0 + 1e-12) {
    throw std::invalid_argument("SchurInterpolant: terminal constant must have modulus <= 1");
  }
  for (const SchurStep& step : steps_) {
    if (std::abs(step.parameter) >= 1.0) {
      throw std::invalid_argument("SchurInterpolant: recursion parameters must have modulus < 1");
    }
  }
}

Complex SchurInterpolant::evaluate(Complex z) const {
  Complex value = terminal_;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    const Complex b = blaschke(z, it->node) * value;
    value = (it->parameter + b) / (1.0 + std::conj(it->parameter) * b);
  }
  return value;
}

double SchurInterpolant::boundary_sup(int samples) const {
  if (samples < 16) {
    throw std::invalid_argument("boundary_sup: needs at least 16 samples");
  }
  double sup = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    sup = std::max(sup, std::abs(evaluate(Complex(std::cos(theta), std::sin(theta)))));
  }
  return sup;
}

SolveResult solve_classical(const InterpolationData& data, double tol) {
  validate_interpolation_data(data);
  std::vector<Complex> nodes;
  nodes.reserve(data.nodes.size());
  for (const Node& node : data.nodes) {
    if (node.dim() != 1) {
      throw std::invalid_argument("solve_classical: disk problem requires scalar nodes");
    }
    if (node.norm() >= 1.0) {
      throw std::invalid_argument("solve_classical: nodes must lie in the open disk");
    }
    nodes.push_back(node.coordinate(0));
  }

  const PickReport report =
      scalar_pick(data, gram_matrix(KernelSpec::szego(), data.nodes), "szego");
  SolveResult result;
  result.pick_min_eigenvalue = report.verdict.min_eigenvalue;
  result.scale = report.matrix.trace_mean();
  const double band = tol * std::abs(result.scale);

  Construction built = run_recursion(nodes, data.targets, tol);
  result.violating_step = built.violating_step;

  if (result.pick_min_eigenvalue < -band) {
    result.status = SolveStatus::Unsolvable;
    return result;
  }

  if (built.interpolant) {
    double err = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      err = std::max(err, std::abs(built.interpolant->evaluate(nodes[i]) - data.targets[i]));
    }
    result.node_error = err;
    result.interpolant = std::move(built.interpolant);
  }

  const bool marginal_band = result.pick_min_eigenvalue <= band;
  const bool verified = result.interpolant.has_value() && result.node_error <= tol;
  result.status =
      (marginal_band || !verified) ? SolveStatus::Marginal : SolveStatus::Solved;
  return result;
}

}  // namespace picklab
