#pragma once

#include <string>
#include <vector>

#include "picklab/parallel.hpp"
#include "picklab/pick.hpp"

namespace picklab {

/// Point (alpha, beta) on the unit sphere of C^2 indexing the invariant
/// subspace span{ alpha + beta z, z^2 H^2 }.
struct FamilyParameter {
  Complex alpha;
  Complex beta;
  double theta = 0.0;  // alpha = cos(theta)
  double phi = 0.0;    // beta = sin(theta) e^{i phi}

  static FamilyParameter from_angles(double theta, double phi);
};

void validate_family_parameter(const FamilyParameter& p);

/// Kernel of span{ alpha + beta z, z^2 H^2 }:
/// (alpha + beta z) conj(alpha + beta w) + (z conj(w))^2 / (1 - z conj(w)).
Complex h1_kernel(const FamilyParameter& p, const Node& z, const Node& w);

/// Result of a sweep over the family parameter sphere.  A negative verdict is
/// certified by the counterexample parameter; a positive verdict is only
/// grid-certified, since the criterion quantifies over the full continuum.
struct ConstrainedFamilyReport {
  std::vector<FamilyParameter> grid;    // evaluated parameters (lattice + refinement)
  std::vector<double> min_eigenvalues;  // one per evaluated parameter
  FamilyParameter worst_parameter;
  double worst_eigenvalue = 0.0;
  double worst_scale = 0.0;  // trace/n of the Pick matrix at the worst parameter
  bool verdict = false;
  std::string certification;  // "grid-certified" or "counterexample"
  double tolerance = 0.0;     // relative tolerance the verdict was taken at
  int grid_density = 0;
};

/// Sweeps a grid_density x grid_density grid over (theta, phi) in
/// [0, pi/2] x [0, 2 pi), quotienting the global phase by keeping alpha real
/// and nonnegative, then refines from the worst grid point by local
/// minimization of the smallest eigenvalue.
ConstrainedFamilyReport h1_family_sweep(const InterpolationData& data, int grid_density,
                                        double tol,
                                        Execution exec = Execution::Parallel);

}  // namespace picklab
