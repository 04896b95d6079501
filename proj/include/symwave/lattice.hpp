#pragma once

#include "symwave/intmat.hpp"

#include <optional>
#include <vector>

namespace symwave {

struct CosetResidue {
  std::size_t index = 0;  ///< digit index
  IVec quotient;          ///< beta with k = M beta + s_index
};

/// Dilation matrix together with its digit sets.
struct DilationContext {
  std::size_t dim = 0;
  IMat M;
  IMat adj;             ///< adjugate, M^{-1} = adj / det
  std::int64_t det = 0;
  std::int64_t m = 0;   ///< |det M|
  std::vector<IVec> digits;       ///< D(M), digits[0] = 0
  std::vector<IVec> dual_digits;  ///< D(M^T), dual_digits[0] = 0

  /// M^{-1} v as a rational vector.
  RVec inverse_apply(const RVec& v) const;
  RVec inverse_apply(const IVec& v) const;
  /// m * M^{-1} v, always integral.
  IVec scaled_inverse(const IVec& v) const;
  bool in_lattice(const IVec& v) const;
  CosetResidue residue(const IVec& k) const;
};

/// Checks det != 0 and that every eigenvalue has modulus > 1.
void validate_dilation(const IMat& M);

/// Canonical digits of M (lexicographic, zero first) or a checked override.
std::vector<IVec> digit_set(const IMat& M, const std::optional<std::vector<IVec>>& override_digits = std::nullopt);

DilationContext make_dilation_context(const IMat& M,
                                      const std::optional<std::vector<IVec>>& override_digits = std::nullopt);

/// M^{-1} E M; throws NotAppropriate when it is not integral.
IMat conjugate_by_dilation(const IMat& E, const DilationContext& dil);

CosetResidue coset_residue(const IVec& k, const DilationContext& ctx);

}  // namespace symwave
