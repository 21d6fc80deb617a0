#include "picklab/constrained_hardy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "picklab/simplex.hpp"

namespace picklab {

namespace {

struct PointVerdict {
  double min_eigenvalue;
  double scale;
};

PointVerdict evaluate_point(const InterpolationData& data, const FamilyParameter& p,
                            double rel_tol) {
  const Index n = static_cast<Index>(data.nodes.size());
  Matrix gram(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      gram(i, j) = h1_kernel(p, data.nodes[static_cast<std::size_t>(i)],
                             data.nodes[static_cast<std::size_t>(j)]);
    }
  }
  const PickReport report =
      family_pick(data, HermitianMatrix(std::move(gram)), "h1", rel_tol);
  return PointVerdict{report.verdict.min_eigenvalue, report.matrix.trace_mean()};
}

}  // namespace

FamilyParameter FamilyParameter::from_angles(double theta, double phi) {
  FamilyParameter p;
  p.theta = theta;
  p.phi = phi;
  p.alpha = std::cos(theta);
  p.beta = std::sin(theta) * Complex(std::cos(phi), std::sin(phi));
  return p;
}

void validate_family_parameter(const FamilyParameter& p) {
  const double norm = std::norm(p.alpha) + std::norm(p.beta);
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "FamilyParameter: |alpha|^2 + |beta|^2 = " << norm << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

Complex h1_kernel(const FamilyParameter& p, const Node& z, const Node& w) {
  validate_family_parameter(p);
  if (z.dim() != 1 || w.dim() != 1) {
    throw std::invalid_argument("h1_kernel: disk kernel requires scalar nodes");
  }
  if (z.norm() >= 1.0 || w.norm() >= 1.0) {
    throw std::invalid_argument("h1_kernel: nodes must lie in the open disk");
  }
  const Complex zc = z.coordinate(0);
  const Complex wc = w.coordinate(0);
  const Complex q = zc * std::conj(wc);
  return (p.alpha + p.beta * zc) * std::conj(p.alpha + p.beta * wc) +
         q * q / (1.0 - q);
}

ConstrainedFamilyReport h1_family_sweep(const InterpolationData& data, int grid_density,
                                        double tol, Execution exec) {
  validate_interpolation_data(data);
  if (grid_density < 8) {
    throw std::invalid_argument("h1_family_sweep: grid density must be >= 8");
  }
  for (const Node& node : data.nodes) {
    if (node.dim() != 1 || node.norm() >= 1.0) {
      throw std::invalid_argument("h1_family_sweep: nodes must lie in the open disk");
    }
  }

  ConstrainedFamilyReport report;
  report.grid_density = grid_density;
  report.tolerance = tol;

  const int g = grid_density;
  report.grid.resize(static_cast<std::size_t>(g) * g);
  report.min_eigenvalues.assign(static_cast<std::size_t>(g) * g, 0.0);
  std::vector<double> scales(static_cast<std::size_t>(g) * g, 0.0);

  for_each_index(report.grid.size(), exec, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / g;
    const int j = static_cast<int>(idx) % g;
    const double theta = (std::numbers::pi / 2.0) * i / (g - 1);
    const double phi = 2.0 * std::numbers::pi * j / g;
    const FamilyParameter p = FamilyParameter::from_angles(theta, phi);
    const PointVerdict v = evaluate_point(data, p, tol);
    report.grid[idx] = p;
    report.min_eigenvalues[idx] = v.min_eigenvalue;
    scales[idx] = v.scale;
  });

  // Sequential reduction; ties broken lexicographically on (theta, phi).
  std::size_t worst = 0;
  for (std::size_t idx = 1; idx < report.grid.size(); ++idx) {
    if (report.min_eigenvalues[idx] < report.min_eigenvalues[worst]) {
      worst = idx;
    }
  }

  // Sufficiency refinement: chase the smallest eigenvalue downhill from the
  // worst grid point.
  auto eig_at = [&](const RealVector& angles) {
    return evaluate_point(data, FamilyParameter::from_angles(angles(0), angles(1)), tol)
        .min_eigenvalue;
  };
  RealVector start(2);
  start << report.grid[worst].theta, report.grid[worst].phi;
  SimplexOptions options;
  options.max_iter = 400;
  options.f_tol = 1e-12;
  options.initial_step = 0.5 * (std::numbers::pi / 2.0) / (g - 1);
  options.polish_rounds = 2;
  const SimplexResult refined = simplex_minimize(eig_at, start, options);

  std::size_t worst_idx = worst;
  if (refined.value < report.min_eigenvalues[worst]) {
    const FamilyParameter p = FamilyParameter::from_angles(refined.x(0), refined.x(1));
    const PointVerdict v = evaluate_point(data, p, tol);
    report.grid.push_back(p);
    report.min_eigenvalues.push_back(v.min_eigenvalue);
    scales.push_back(v.scale);
    worst_idx = report.grid.size() - 1;
  }

  report.worst_parameter = report.grid[worst_idx];
  report.worst_eigenvalue = report.min_eigenvalues[worst_idx];
  report.worst_scale = scales[worst_idx];
  report.verdict =
      report.worst_eigenvalue >= -tol * std::max(report.worst_scale, 0.0);
  report.certification = report.verdict ? "grid-certified" : "counterexample";
  return report;
}

}  // namespace picklab
