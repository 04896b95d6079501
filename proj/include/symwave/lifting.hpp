#pragma once

#include "symwave/verify.hpp"

#include <map>
#include <optional>
#include <utility>

namespace symwave {

using RowKey = std::pair<std::size_t, std::size_t>;

template <class C>
struct LiftingFamily {
  /// L[p][i]; empty for orbits with no wavelet rows.
  std::vector<std::vector<TrigPoly<C>>> L;
  std::vector<std::vector<C>> targets;
  std::vector<IVec> seeds;  ///< seed exponent used per orbit, empty when user supplied
  std::vector<std::string> notes;

  const TrigPoly<C>& at(std::size_t p, std::size_t i) const { return L.at(p).at(i); }
};

/// Orbit average of e^{2pi i(k0,xi)} under k -> A k - r^F, A = M^{-1} F M, F in H_{p,0}; scaled to value a at 0.
template <class C>
TrigPoly<C> lifting_base(std::size_t p, const C& a, const IVec& k0, const Contexts& ctx) {
  using T = CoeffTraits<C>;
  const Orbit& orb = ctx.orb.orbits.at(p);
  TrigPoly<C> avg(ctx.dim());
  C w = T::one() / T::from_int(static_cast<std::int64_t>(orb.stabilizer.size()));
  for (std::size_t F : orb.stabilizer) {
    IMat A = conjugate_by_dilation(ctx.sym.group[F], ctx.dil);
    avg.add_term(sub(mul(A, k0), orb.r.at(F)), w);
  }
  C v = avg.value_at_zero();
  if (T::is_zero(v))
    throw Error(ErrorKind::SymmetryUnattainable, "orbit average of seed " + to_string(k0) + " vanishes at 0");
  return avg.scaled(a / v);
}

/// L(M^T F^T M^{-T} xi) = L(xi) e^{2pi i(r^F,xi)} for all F in H_{p,0}; returns the first failing F.
template <class C>
std::optional<std::size_t> stabilizer_symmetry_failure(const TrigPoly<C>& L, std::size_t p, const Contexts& ctx,
                                                       double tol = kPredicateTolerance) {
  const Orbit& orb = ctx.orb.orbits.at(p);
  for (std::size_t F : orb.stabilizer) {
    IMat A = conjugate_by_dilation(ctx.sym.group[F], ctx.dil);
    if (!approx_equal(L.compose_linear(A), L.shifted(orb.r.at(F)), tol * std::max(1.0, L.max_abs()))) return F;
  }
  return std::nullopt;
}

/// L_{p,i}(xi) = L_{p,0}(M^T E^(i)T M^{-T} xi).
template <class C>
TrigPoly<C> lifting_image(const TrigPoly<C>& base, std::size_t p, std::size_t i, const Contexts& ctx) {
  std::size_t e = ctx.orb.orbits.at(p).transversal.at(i);
  return base.compose_linear(conjugate_by_dilation(ctx.sym.group[e], ctx.dil));
}

/// Smallest sup-norm seed (lexicographic within a shell) whose orbit average is nonzero at 0.
template <class C>
IVec auto_lifting_seed(std::size_t p, const Contexts& ctx, int budget = 4) {
  const std::size_t d = ctx.dim();
  for (int r = 0; r <= budget; ++r) {
    IVec k(d, -r);
    while (true) {
      if (sup_norm(k) == r) {
        try {
          lifting_base(p, CoeffTraits<C>::one(), k, ctx);
          return k;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::SymmetryUnattainable) throw;
        }
      }
      std::size_t j = d;
      while (j > 0 && k[j - 1] == r) k[--j] = -r;
      if (j == 0) break;
      ++k[j - 1];
    }
  }
  throw Error(ErrorKind::SymmetryUnattainable, "no lifting seed within sup-norm " + std::to_string(budget));
}

/// Family with L_{p,i}(0) = -m_(p,i)(0); user polynomials (keyed by (p,i)) override the seeded base.
template <class C>
LiftingFamily<C> build_lifting_family(const FilterBankPair<C>& bank, const std::map<RowKey, TrigPoly<C>>& user = {},
                                      const std::optional<IVec>& seed = std::nullopt, double tol = kPredicateTolerance) {
  using T = CoeffTraits<C>;
  const Contexts& ctx = *bank.ctx;
  LiftingFamily<C> fam;
  std::size_t np = ctx.orb.orbits.size();
  fam.L.resize(np);
  fam.targets.resize(np);
  fam.seeds.resize(np);
  for (const auto& [key, poly] : user)
    if (!bank.find(key.first, key.second))
      throw Error(ErrorKind::UserPolyInvalid,
                  "no wavelet row (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") in the bank");
  for (std::size_t p = 0; p < np; ++p) {
    const Orbit& orb = ctx.orb.orbits[p];
    std::optional<C> a;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      auto v = bank.find(p, i);
      if (!v) continue;
      C ai = -bank.primal[*v].value_at_zero();
      if (a && !T::near(*a, ai, tol))
        throw Error(ErrorKind::InternalInconsistency, "wavelet values at 0 differ within orbit " + std::to_string(p));
      a = ai;
    }
    if (!a) continue;
    std::string tag = "L(" + std::to_string(p) + ",";
    std::optional<TrigPoly<C>> base;
    for (std::size_t i = 0; i < orb.size() && !base; ++i) {
      auto it = user.find({p, i});
      if (it == user.end()) continue;
      std::size_t e = orb.transversal[i];
      IMat back = conjugate_by_dilation(ctx.sym.group[ctx.sym.inverse(e)], ctx.dil);
      base = it->second.compose_linear(back);
      fam.notes.push_back(tag + std::to_string(i) + ") supplied by user");
    }
    if (!base) {
      IVec k0 = seed ? *seed : auto_lifting_seed<C>(p, ctx);
      base = lifting_base(p, *a, k0, ctx);
      fam.seeds[p] = k0;
    }
    if (auto F = stabilizer_symmetry_failure(*base, p, ctx, tol))
      throw Error(ErrorKind::UserPolyInvalid, tag + "0) violates the stabilizer symmetry for F = " +
                                                  ctx.sym.group[*F].to_string());
    if (!T::near(base->value_at_zero(), *a, tol))
      throw Error(ErrorKind::UserPolyInvalid,
                  tag + "0)(0) = " + coeff_string(base->value_at_zero()) + ", target " + coeff_string(*a));
    for (std::size_t i = 0; i < orb.size(); ++i) {
      TrigPoly<C> Li = lifting_image(*base, p, i, ctx);
      auto it = user.find({p, i});
      if (it != user.end() && !approx_equal(it->second, Li, tol * std::max(1.0, Li.max_abs())))
        throw Error(ErrorKind::UserPolyInvalid,
                    tag + std::to_string(i) + ") is not the transversal image of L(" + std::to_string(p) + ",0)");
      fam.L[p].push_back(Li);
      fam.targets[p].push_back(*a);
    }
  }
  return fam;
}

/// Per-mask lifting polynomial: L_(p,i) on wavelet rows, zero elsewhere.
template <class C>
std::vector<TrigPoly<C>> lifting_rows(const FilterBankPair<C>& bank, const LiftingFamily<C>& fam) {
  std::vector<TrigPoly<C>> rows(bank.size(), TrigPoly<C>(bank.ctx->dim()));
  for (std::size_t v = 0; v < bank.size(); ++v)
    if (bank.labels[v].role == MaskRole::Wavelet) rows[v] = fam.at(bank.labels[v].p, bank.labels[v].i);
  return rows;
}

/// Unit triangular lifting matrices [[1,0],[L,I]] and [[1,-L^*],[0,I]] in bank row order.
template <class C>
std::pair<PolyMatrix<C>, PolyMatrix<C>> lifting_matrices(const FilterBankPair<C>& bank,
                                                         const std::vector<TrigPoly<C>>& rows) {
  std::size_t r = bank.size(), dim = bank.ctx->dim();
  TrigPoly<C> one = TrigPoly<C>::constant(dim, CoeffTraits<C>::one());
  PolyMatrix<C> A(r, std::vector<TrigPoly<C>>(r, TrigPoly<C>(dim))), B = A;
  for (std::size_t v = 0; v < r; ++v) {
    A[v][v] = one;
    B[v][v] = one;
    if (v == 0 || rows[v].is_zero()) continue;
    A[v][0] = rows[v];
    B[0][v] = -rows[v].conjugate();
  }
  return {A, B};
}

template <class C>
std::pair<PolyMatrix<C>, PolyMatrix<C>> lifting_matrices(const FilterBankPair<C>& bank, const LiftingFamily<C>& fam) {
  return lifting_matrices(bank, lifting_rows(bank, fam));
}

/// m^n = m + L(M^T xi) m0 for wavelets; m~0^n = m~0 - sum conj(L(M^T xi)) m~_(p,i).
template <class C>
FilterBankPair<C> apply_lifting(const FilterBankPair<C>& bank, const std::vector<TrigPoly<C>>& rows, Provenance prov,
                                const std::string& stage) {
  const auto& dil = bank.ctx->dil;
  FilterBankPair<C> out = bank;
  out.provenance = prov;
  out.required_primal_vm = std::max(1, bank.required_primal_vm);
  out.verified = false;
  auto [A, B] = lifting_matrices(bank, rows);
  out.ext = mul(A, bank.ext);
  out.ext_dual = mul(B, bank.ext_dual);
  for (std::size_t v = 1; v < bank.size(); ++v) {
    if (rows[v].is_zero()) continue;
    TrigPoly<C> L = dilate(rows[v], dil);
    out.primal[v] = bank.primal[v] + L * bank.primal[0];
    out.dual[0] -= L.conjugate() * bank.dual[v];
  }
  for (std::size_t v = 0; v < out.size(); ++v) {
    std::vector<TrigPoly<C>> head(out.ext[v].begin(), out.ext[v].begin() + dil.m);
    std::vector<TrigPoly<C>> head_dual(out.ext_dual[v].begin(), out.ext_dual[v].begin() + dil.m);
    if (!approx_equal(polyphase_recompose(head, dil), out.primal[v], kPredicateTolerance) ||
        !approx_equal(polyphase_recompose(head_dual, dil), out.dual[v], kPredicateTolerance))
      throw Error(ErrorKind::InternalInconsistency, "mask and polyphase lifting disagree at " + bank.labels[v].name());
  }
  std::vector<CheckRecord> recs{
      record_identity<C>("lifting.matrices", identity_check(mul(A, conj_transpose(B)), bank.ctx->dim()))};
  require(recs, stage);
  finalize(out, stage);
  return out;
}

template <class C>
FilterBankPair<C> lift(const FilterBankPair<C>& bank, const LiftingFamily<C>& fam) {
  if (bank.provenance != Provenance::FrameLike && bank.provenance != Provenance::FrameLikeReduced)
    throw Error(ErrorKind::PreconditionFailed, std::string("lifting expects a frame-like bank, got ") +
                                                   to_string(bank.provenance));
  return apply_lifting(bank, lifting_rows(bank, fam), Provenance::Lifted, "lift");
}

/// Float copy of a lifting family.
inline LiftingFamily<Complex> to_float(const LiftingFamily<QSqrt>& fam) {
  LiftingFamily<Complex> out;
  out.seeds = fam.seeds;
  out.notes = fam.notes;
  for (const auto& row : fam.L) {
    out.L.emplace_back();
    for (const auto& t : row) out.L.back().push_back(to_float(t));
  }
  for (const auto& row : fam.targets) {
    out.targets.emplace_back();
    for (const auto& c : row) out.targets.back().push_back(to_complex(c));
  }
  return out;
}

}  // namespace symwave
