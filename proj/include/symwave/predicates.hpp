#pragma once

#include "symwave/jet.hpp"
#include "symwave/symmetry.hpp"
#include "symwave/trigpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symwave {

inline constexpr double kPredicateTolerance = 1e-10;

/// Largest n <= nmax with J(beta) = 0 for all |beta| < n.
template <class C>
int vanishing_moment_order(const TrigPoly<C>& t, int nmax, double tol = kPredicateTolerance) {
  for (int deg = 0; deg < nmax; ++deg) {
    for (const auto& beta : multi_indices_exact(t.dim(), deg)) {
      C s = CoeffTraits<C>::zero();
      double scale = 1.0;
      for (const auto& [k, c] : t.terms()) {
        C v = c * CoeffTraits<C>::from_rational(monomial_power(k, beta));
        scale += CoeffTraits<C>::magnitude(v);
        s += v;
      }
      if (!CoeffTraits<C>::near(s, CoeffTraits<C>::zero(), tol * scale)) return deg;
    }
  }
  return nmax;
}

struct SumRuleResult {
  int order = 0;
  bool exact = true;
  std::string warning;
};

/// Exact cyclotomic test when all coefficients are rational; float fallback otherwise.
SumRuleResult sum_rule(const ExactPoly& t, const DilationContext& dil, int nmax);
SumRuleResult sum_rule(const FloatPoly& t, const DilationContext& dil, int nmax, double tol = kPredicateTolerance);

inline int sum_rule_order(const ExactPoly& t, const DilationContext& dil, int nmax) {
  return sum_rule(t, dil, nmax).order;
}
inline int sum_rule_order(const FloatPoly& t, const DilationContext& dil, int nmax, double tol = kPredicateTolerance) {
  return sum_rule(t, dil, nmax, tol).order;
}

/// h_{E k + c - E c} == h_k for every listed group element.
template <class C>
bool check_symmetry(const TrigPoly<C>& t, const std::vector<IMat>& elements, const RVec& center,
                    double tol = kPredicateTolerance) {
  for (const auto& E : elements) {
    IVec sh = to_ivec(sub(center, mul(E, center)));
    TrigPoly<C> img(t.dim());
    for (const auto& [k, c] : t.terms()) img.add_term(add(mul(E, k), sh), c);
    if (!approx_equal(img, t, tol * std::max(1.0, t.max_abs()))) return false;
  }
  return true;
}

template <class C>
bool check_symmetry(const TrigPoly<C>& t, const SymmetryContext& sym, double tol = kPredicateTolerance) {
  return check_symmetry(t, sym.group, sym.center, tol);
}

/// t(E^T xi) = eps e^{2pi i(r,xi)} t(xi).
template <class C>
struct GeneralizedLaw {
  C eps = CoeffTraits<C>::one();
  IVec r;
  double residual = 0.0;
};

template <class C>
IVec anchor_exponent(const TrigPoly<C>& t, double tol) {
  double cut = tol * t.max_abs();
  for (const auto& [k, c] : t.terms())
    if (CoeffTraits<C>::magnitude(c) > cut) return k;
  return zero_vec(t.dim());
}

template <class C>
std::optional<GeneralizedLaw<C>> detect_law(const TrigPoly<C>& t, const IMat& E, double tol = kPredicateTolerance) {
  GeneralizedLaw<C> law;
  law.r = zero_vec(t.dim());
  if (t.is_zero()) return law;
  TrigPoly<C> img = t.compose_linear(E);
  IVec kt = anchor_exponent(t, tol);
  IVec ki = anchor_exponent(img, tol);
  law.r = sub(ki, kt);
  law.eps = img.coeff(ki) / t.coeff(kt);
  if (std::abs(CoeffTraits<C>::magnitude(law.eps) - 1.0) > tol) return std::nullopt;
  law.residual = residual(img, t.shifted(law.r).scaled(law.eps));
  if (law.residual > tol * std::max(1.0, t.max_abs())) return std::nullopt;
  return law;
}

/// Laws for every element of H, or nullopt if some element fails.
template <class C>
std::optional<std::vector<GeneralizedLaw<C>>> generalized_symmetry(const TrigPoly<C>& t, const SymmetryContext& sym,
                                                                   double tol = kPredicateTolerance) {
  std::vector<GeneralizedLaw<C>> out;
  for (const auto& E : sym.group) {
    auto law = detect_law(t, E, tol);
    if (!law) return std::nullopt;
    out.push_back(*law);
  }
  return out;
}

}  // namespace symwave
