#pragma once

#include "symwave/numeric.hpp"

#include <vector>

namespace symwave {

using RMatrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
  bool solvable = false;
  std::size_t rank = 0;          ///< rank of the coefficient matrix
  std::size_t augmented_rank = 0;
  std::vector<Rational> x;       ///< particular solution, free variables zero
  std::vector<std::vector<Rational>> nullspace;
  std::vector<std::size_t> pivots;
};

/// Exact Gauss-Jordan elimination of A x = b.
LinearSolution solve_exact(const RMatrix& A, const std::vector<Rational>& b, std::size_t unknowns);

}  // namespace symwave
