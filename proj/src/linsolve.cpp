#include "symwave/linsolve.hpp"

namespace symwave {

LinearSolution solve_exact(const RMatrix& A, const std::vector<Rational>& b, std::size_t n) {
  std::size_t rows = A.size();
  RMatrix M(rows, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n && j < A[i].size(); ++j) M[i][j] = A[i][j];
    M[i][n] = b[i];
  }
  LinearSolution out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(M[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    Rational inv = 1 / M[r][c];
    for (std::size_t j = c; j <= n; ++j) M[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(M[i][c]) == 0) continue;
      Rational f = M[i][c];
      for (std::size_t j = c; j <= n; ++j) M[i][j] -= f * M[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.augmented_rank = r;
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(M[i][n]) != 0) {
      out.augmented_rank = r + 1;
      break;
    }
  out.solvable = out.augmented_rank == out.rank;
  out.x.assign(n, Rational(0));
  if (out.solvable)
    for (std::size_t i = 0; i < r; ++i) out.x[out.pivots[i]] = M[i][n];
  std::vector<char> is_pivot(n, 0);
  for (auto p : out.pivots) is_pivot[p] = 1;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) v[out.pivots[i]] = -M[i][f];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace symwave
