#pragma once

#include "symwave/lattice.hpp"
#include "symwave/trigpoly.hpp"

#include <vector>

namespace symwave {

/// tau_k with t(xi) = m^{-1/2} sum_k e^{2pi i(s_k,xi)} tau_k(M^T xi).
template <class C>
std::vector<TrigPoly<C>> polyphase_decompose(const TrigPoly<C>& t, const DilationContext& dil) {
  std::vector<TrigPoly<C>> out(dil.digits.size(), TrigPoly<C>(dil.dim));
  C root = CoeffTraits<C>::sqrt_int(dil.m);
  for (const auto& [k, c] : t.terms()) {
    CosetResidue r = dil.residue(k);
    out[r.index].add_term(r.quotient, c * root);
  }
  return out;
}

template <class C>
TrigPoly<C> polyphase_recompose(const std::vector<TrigPoly<C>>& tau, const DilationContext& dil) {
  TrigPoly<C> out(dil.dim);
  C inv = CoeffTraits<C>::one() / CoeffTraits<C>::sqrt_int(dil.m);
  for (std::size_t i = 0; i < tau.size() && i < dil.digits.size(); ++i)
    for (const auto& [beta, c] : tau[i].terms()) out.add_term(add(mul(dil.M, beta), dil.digits[i]), c * inv);
  return out;
}

/// t(M^T xi).
template <class C>
TrigPoly<C> dilate(const TrigPoly<C>& t, const DilationContext& dil) {
  return t.compose_linear(dil.M);
}

/// e^{2pi i(s_k, xi)} / sqrt(m).
template <class C>
TrigPoly<C> scaled_exponential(const IVec& s, const DilationContext& dil) {
  return TrigPoly<C>::monomial(s, CoeffTraits<C>::one() / CoeffTraits<C>::sqrt_int(dil.m));
}

}  // namespace symwave
