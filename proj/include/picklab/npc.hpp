#pragma once

#include <vector>

#include "picklab/numerics.hpp"

namespace picklab {

/// Outcome of the complete-NP criterion on a finite Gram restriction:
/// F[i][j] = 1 - g(i,base) g(base,j) / (g(i,j) g(base,base)), PSD iff the
/// restricted kernel admits the 1 - <b(x), b(y)> factorization.
struct CompleteNpResult {
  HermitianMatrix f;
  PsdVerdict verdict;
  int base = 0;
};

CompleteNpResult complete_np_test(const HermitianMatrix& gram, int base = 0,
                                  double tol = 1e-10);

/// Factorization of a complete-NP Gram through the ball of C^d:
/// g(i,j) (1 - <b_j, b_i>) = conj(delta_i) delta_j with delta pinned by the
/// base-row convention delta_i = g(base,i) / sqrt(g(base,base)).
struct EmbeddingResult {
  std::vector<Vector> b;        // one point of B_d per node
  std::vector<Complex> delta;   // nonzero scaling per node
  double residual = 0.0;        // max entrywise reconstruction error
  int d = 0;                    // numerical rank of the factorization
  int base = 0;
};

EmbeddingResult embed_drury_arveson(const HermitianMatrix& gram, int base = 0,
                                    double tol = 1e-9);

}  // namespace picklab
