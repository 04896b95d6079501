#include "symwave/predicates.hpp"

#include "symwave/cyclotomic.hpp"

#include <numbers>
#include <numeric>

namespace symwave {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t phase_index(const IVec& k, const IVec& s, const DilationContext& dil) {
  IVec y = dil.scaled_inverse(k);
  std::int64_t j = 0;
  for (std::size_t i = 0; i < y.size(); ++i) j += y[i] * s[i];
  return mod(j, dil.m);
}

bool exact_condition(const std::map<IVec, Rational>& terms, const IVec& beta, const IVec& s,
                     const DilationContext& dil) {
  std::map<std::int64_t, Rational> buckets;
  for (const auto& [k, h] : terms) {
    Rational v = h * monomial_power(k, beta);
    if (sgn(v) == 0) continue;
    buckets[phase_index(k, s, dil)] += v;
  }
  std::int64_t g = dil.m;
  for (const auto& [j, v] : buckets)
    if (sgn(v) != 0) g = std::gcd(g, j);
  std::int64_t N = dil.m / g;
  std::vector<Rational> coeffs(static_cast<std::size_t>(N), Rational(0));
  for (const auto& [j, v] : buckets) coeffs[static_cast<std::size_t>(j / g)] += v;
  return vanishes_at_primitive_root(coeffs, N);
}

template <class C>
bool float_condition(const TrigPoly<C>& t, const IVec& beta, const IVec& s, const DilationContext& dil, double tol) {
  Complex sum{0.0, 0.0};
  double scale = 1.0;
  for (const auto& [k, h] : t.terms()) {
    Complex v = CoeffTraits<C>::to_complex(h) * monomial_power(k, beta).get_d();
    double ph = 2.0 * std::numbers::pi * static_cast<double>(phase_index(k, s, dil)) / static_cast<double>(dil.m);
    sum += v * Complex(std::cos(ph), std::sin(ph));
    scale += std::abs(v);
  }
  return std::abs(sum) <= tol * scale;
}

template <class C>
int float_order(const TrigPoly<C>& t, const DilationContext& dil, int nmax, double tol) {
  for (int deg = 0; deg < nmax; ++deg)
    for (const auto& beta : multi_indices_exact(dil.dim, deg))
      for (std::size_t si = 1; si < dil.dual_digits.size(); ++si)
        if (!float_condition(t, beta, dil.dual_digits[si], dil, tol)) return deg;
  return nmax;
}

}  // namespace

SumRuleResult sum_rule(const ExactPoly& t, const DilationContext& dil, int nmax) {
  SumRuleResult out;
  if (!is_rational_poly(t)) {
    out.exact = false;
    out.warning = "irrational coefficients; sum rule evaluated in floating point";
    out.order = float_order(t, dil, nmax, kPredicateTolerance);
    return out;
  }
  auto terms = rational_terms(t);
  for (int deg = 0; deg < nmax; ++deg) {
    for (const auto& beta : multi_indices_exact(dil.dim, deg)) {
      for (std::size_t si = 1; si < dil.dual_digits.size(); ++si) {
        if (!exact_condition(terms, beta, dil.dual_digits[si], dil)) {
          out.order = deg;
          return out;
        }
      }
    }
  }
  out.order = nmax;
  return out;
}

SumRuleResult sum_rule(const FloatPoly& t, const DilationContext& dil, int nmax, double tol) {
  SumRuleResult out;
  out.exact = false;
  out.order = float_order(t, dil, nmax, tol);
  return out;
}

}  // namespace symwave
