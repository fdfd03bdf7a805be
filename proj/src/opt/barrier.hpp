#pragma once

#include <vector>

#include "qadapt/core/linalg.hpp"

namespace qadapt::opt::detail {

using core::ComplexMatrix;

// minimize tr Y  subject to  I_outer ⊗ Y ≥ K_j  (Y on `dim`, K_j on outer·dim)
// dual: maximize Σ tr(Z_j K_j) subject to Σ_j Tr_outer Z_j = I, Z_j ≥ 0
struct BarrierProblem {
  std::size_t outer = 1;
  std::size_t dim = 1;
  std::vector<ComplexMatrix> scores;
  double tol = 1e-7;
  int max_iter = 10000;
};

struct BarrierResult {
  ComplexMatrix y;
  std::vector<ComplexMatrix> z;
  double primal = 0.0;  // Σ tr(Z_j K_j), a lower bound on the optimum
  double dual = 0.0;    // tr Y, an upper bound
  int iterations = 0;
  bool converged = false;
};

BarrierResult solve_barrier(const BarrierProblem& problem);

// Tr over the leading `outer` factor of an (outer·dim)-square matrix.
ComplexMatrix trace_outer(const ComplexMatrix& m, std::size_t outer, std::size_t dim);
// I_outer ⊗ y
ComplexMatrix lift(const ComplexMatrix& y, std::size_t outer);

}  // namespace qadapt::opt::detail
