#pragma once

#include "symwave/jet.hpp"
#include "symwave/linsolve.hpp"
#include "symwave/symmetry.hpp"
#include "symwave/trigpoly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace symwave {

struct SymmetrySpec {
  std::vector<IMat> group;
  RVec center;
};

SymmetrySpec symmetry_spec(const SymmetryContext& sym);

/// Linear equations in the coefficients of an unknown mask.
/// column(k) is the contribution of a unit coefficient at exponent k.
struct EquationFamily {
  std::string name;
  std::vector<Rational> rhs;
  std::function<std::vector<Rational>(const IVec&)> column;
};

/// sum_k g_k k^beta = targets(beta) on the jet's index set.
EquationFamily jet_equations(const Jet<QSqrt>& targets);
/// Sum rule of the given order, as rational remainders modulo the cyclotomic polynomial.
EquationFamily sum_rule_equations(const DilationContext& dil, int order);
/// Jet of sigma(M^T xi) equals delta on indices |beta| < n, for a fixed rational m0.
EquationFamily sigma_jet_equations(const ExactPoly& m0, const DilationContext& dil, int n);

struct SupportSearch {
  int budget = -1;          ///< sup-norm bound on candidate points; -1 selects 3n
  std::vector<IVec> seed;   ///< points tried before the sup-norm enumeration
};

/// Orbit of k under k -> E k + c - E c, in group order without repeats.
std::vector<IVec> point_orbit(const IVec& k, const std::optional<SymmetrySpec>& sym);

/// Smallest orbit-closed support (in enumeration order) on which all families are solvable.
ExactPoly solve_min_support(std::size_t dim, const std::optional<SymmetrySpec>& sym,
                            const std::vector<EquationFamily>& families, int budget,
                            const std::vector<IVec>& seed = {});

/// Affine solution set on a fixed orbit-closed support: particular + span(basis).
struct MaskSpace {
  ExactPoly particular;
  std::vector<ExactPoly> basis;
  bool solvable = false;
};

MaskSpace mask_space(std::size_t dim, const std::optional<SymmetrySpec>& sym,
                     const std::vector<EquationFamily>& families, const std::vector<IVec>& points);

struct JetConstraints {
  std::optional<SymmetrySpec> symmetry;
  std::optional<int> sum_rule;
};

ExactPoly solve_prescribed_jet(const Jet<QSqrt>& targets, const DilationContext& dil, const JetConstraints& constraints,
                               const SupportSearch& search = {});

/// (1/|H|) sum_E G(E^T xi) e^{2pi i(c - E c, xi)}.
ExactPoly symmetric_average(const ExactPoly& G, const SymmetryContext& sym);

template <class C>
bool check_20new(const TrigPoly<C>& m0, const TrigPoly<C>& mt0, int n, double tol = 1e-10) {
  auto prod = jet_product(jet(m0, n), conjugate_jet(jet(mt0, n)));
  return is_delta(prod, tol);
}

/// H-symmetric dual mask satisfying the biorthogonality jet condition of order n.
/// The sum rule precondition on m0 can be waived for degenerate inputs.
ExactPoly dual_mask(const ExactPoly& m0, const Contexts& ctx, int n, const SupportSearch& search = {},
                    bool require_sum_rule = true);

}  // namespace symwave
