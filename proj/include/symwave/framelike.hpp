#pragma once

#include "symwave/verify.hpp"

#include <memory>

namespace symwave {

template <class C>
void require_refinable_pair(const TrigPoly<C>& m0, const TrigPoly<C>& mt0, const Contexts& ctx, int n) {
  if (n < 1) throw Error(ErrorKind::PreconditionFailed, "order n must be at least 1");
  if (!check_symmetry(m0, ctx.sym))
    throw Error(ErrorKind::PreconditionFailed, "m0 is not H-symmetric with respect to c");
  if (!check_symmetry(mt0, ctx.sym))
    throw Error(ErrorKind::PreconditionFailed, "dual m0 is not H-symmetric with respect to c");
  if (!check_20new(m0, mt0, n))
    throw Error(ErrorKind::PreconditionFailed,
                "biorthogonality jet condition of order " + std::to_string(n) + " fails for (m0, dual m0)");
}

/// Basic matrix extension with identity blocks:
/// N = [P, 1 - P P~^*; I, -P~^*], N~ = [P~, 1; I - P^* P~, -P^*].
/// Wavelet rows are ordered (p,i); columns follow the digit order.
template <class C>
FilterBankPair<C> framelike_extension(const TrigPoly<C>& m0, const TrigPoly<C>& mt0,
                                      std::shared_ptr<const Contexts> ctx, int n) {
  using T = CoeffTraits<C>;
  require_refinable_pair(m0, mt0, *ctx, n);
  const auto& dil = ctx->dil;
  std::size_t m = static_cast<std::size_t>(dil.m), dim = dil.dim;
  auto P = polyphase_decompose(m0, dil);
  auto Pd = polyphase_decompose(mt0, dil);
  TrigPoly<C> one = TrigPoly<C>::constant(dim, T::one());
  TrigPoly<C> cross(dim);
  for (std::size_t l = 0; l < m; ++l) cross += P[l] * Pd[l].conjugate();

  FilterBankPair<C> bank;
  bank.ctx = ctx;
  bank.provenance = Provenance::FrameLike;
  bank.order = n;
  int sr = sum_rule_order(m0, dil, n);
  bank.required_dual_vm = std::min(n, sr);
  if (sr < n)
    bank.notes.push_back("m0 has sum rule order " + std::to_string(sr) + " < n; dual VM guarantee is " +
                         std::to_string(sr));

  auto row0 = P, drow0 = Pd;
  row0.push_back(one - cross);
  drow0.push_back(one);
  append_mask(bank, MaskLabel{}, row0, drow0);

  for (std::size_t p = 0; p < ctx->orb.orbits.size(); ++p) {
    const Orbit& orb = ctx->orb.orbits[p];
    for (std::size_t i = 0; i < orb.size(); ++i) {
      std::size_t d = orb.digits[i];
      std::vector<TrigPoly<C>> row(m + 1, TrigPoly<C>(dim)), drow(m + 1, TrigPoly<C>(dim));
      row[d] = one;
      row[m] = -Pd[d].conjugate();
      TrigPoly<C> pc = P[d].conjugate();
      for (std::size_t l = 0; l < m; ++l) {
        drow[l] = -(pc * Pd[l]);
        if (l == d) drow[l] += one;
      }
      drow[m] = -pc;
      append_mask(bank, MaskLabel{MaskRole::Wavelet, p, i}, row, drow);
    }
  }
  finalize(bank, "framelike");
  return bank;
}

/// Index of a digit whose polyphase component of m0 is the constant 1/sqrt(m), if any.
template <class C>
std::optional<std::size_t> interpolatory_digit(const TrigPoly<C>& m0, const DilationContext& dil) {
  using T = CoeffTraits<C>;
  auto P = polyphase_decompose(m0, dil);
  TrigPoly<C> target = TrigPoly<C>::constant(dil.dim, T::one() / T::sqrt_int(dil.m));
  for (std::size_t k = 0; k < P.size(); ++k)
    if (approx_equal(P[k], target, kPredicateTolerance)) return k;
  return std::nullopt;
}

/// m - 1 generator variant: dual m0 = e^{2pi i(s_k,xi)} and the row of digit k is dropped.
template <class C>
FilterBankPair<C> reduce_generators(const FilterBankPair<C>& bank) {
  using T = CoeffTraits<C>;
  const Contexts& ctx = *bank.ctx;
  const auto& dil = ctx.dil;
  auto k = interpolatory_digit(bank.primal[0], dil);
  if (!k) throw Error(ErrorKind::NotInterpolatoryAtDigit, "no polyphase component of m0 equals 1/sqrt(m)");
  TrigPoly<C> mt0 = TrigPoly<C>::monomial(dil.digits[*k], T::one());
  FilterBankPair<C> full = framelike_extension(bank.primal[0], mt0, bank.ctx, bank.order);

  auto P = polyphase_decompose(full.primal[0], dil);
  auto Pd = polyphase_decompose(full.dual[0], dil);
  TrigPoly<C> cross(dil.dim);
  for (std::size_t l = 0; l < P.size(); ++l) cross += P[l] * Pd[l].conjugate();
  if (!approx_equal(cross, TrigPoly<C>::constant(dil.dim, T::one()), kPredicateTolerance))
    throw Error(ErrorKind::InternalInconsistency, "sum of mu conj(mu~) is not 1 after reduction");

  auto [p, i] = ctx.orb.digit_to_pi[*k];
  FilterBankPair<C> out;
  out.ctx = bank.ctx;
  out.provenance = Provenance::FrameLikeReduced;
  out.order = bank.order;
  out.required_primal_vm = bank.required_primal_vm;
  out.required_dual_vm = bank.required_dual_vm;
  out.notes = bank.notes;
  out.notes.push_back("dropped wavelet(" + std::to_string(p) + "," + std::to_string(i) + ") at digit " +
                      to_string(dil.digits[*k]));
  for (std::size_t v = 0; v < full.size(); ++v) {
    const MaskLabel& lab = full.labels[v];
    if (lab.role == MaskRole::Wavelet && lab.p == p && lab.i == i) continue;
    auto row = full.ext[v], drow = full.ext_dual[v];
    row.pop_back();
    drow.pop_back();
    append_mask(out, lab, row, drow);
  }
  finalize(out, "reduce_generators");
  return out;
}

}  // namespace symwave
