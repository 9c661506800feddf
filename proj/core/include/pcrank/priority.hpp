#pragma once

#include "pcrank/matrix.hpp"

namespace pcrank {

struct EvmOptions {
  double tol = 1e-12;   // bound on the infinity-norm eigen-residual
  int max_iter = 10'000;
};

struct EvmResult {
  PriorityVector weights;
  double lambda_max;
  int iterations;
  double residual;  // ||C w - lambda_max w||_inf at return
};

// Principal right eigenvector of `c` by power iteration from the uniform
// vector, renormalized to sum 1 every step. Stops once the eigen-residual of
// the current iterate is <= opts.tol; lambda_max is ||Cw||_1 / ||w||_1.
//
// Throws ConvergenceError (carrying the last residual) after opts.max_iter
// steps, and DomainError for invalid options.
EvmResult evm(const PCMatrix& c, const EvmOptions& opts = {});

// Normalized row geometric means, computed from row sums of logarithms.
PriorityVector gmm(const PCMatrix& c);

}  // namespace pcrank
