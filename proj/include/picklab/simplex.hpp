#pragma once

#include <functional>

#include "picklab/types.hpp"

namespace picklab {

struct SimplexOptions {
  int max_iter = 2000;
  double f_tol = 1e-10;
  double x_tol = 1e-12;
  double initial_step = 0.5;
  int polish_rounds = 4;  // restart rounds from the best vertex with a fresh simplex
};

struct SimplexResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

/// Derivative-free Nelder-Mead descent.  Restart rounds re-seed the simplex
/// at the incumbent with a shrunken step, which reliably escapes the flat
/// degenerate simplices the basic iteration can stall in on nonsmooth
/// objectives such as spectral norms.
SimplexResult simplex_minimize(const std::function<double(const RealVector&)>& objective,
                               const RealVector& start, const SimplexOptions& options);

}  // namespace picklab
