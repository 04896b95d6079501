#include "symwave/trigpoly.hpp"

namespace symwave {

FloatPoly to_float(const ExactPoly& t) {
  FloatPoly out(t.dim());
  for (const auto& [k, c] : t.terms()) out.add_term(k, to_complex(c));
  return out;
}

bool is_rational_poly(const ExactPoly& t) {
  for (const auto& [k, c] : t.terms())
    if (!c.is_rational()) return false;
  return true;
}

std::map<IVec, Rational> rational_terms(const ExactPoly& t) {
  std::map<IVec, Rational> out;
  for (const auto& [k, c] : t.terms()) {
    if (!c.is_rational())
      throw Error(ErrorKind::ExactPathUnavailable, "coefficient " + c.to_string() + " is not rational");
    out.emplace(k, c.rational_part());
  }
  return out;
}

}  // namespace symwave
