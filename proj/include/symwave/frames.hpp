#pragma once

#include "symwave/dualmask.hpp"
#include "symwave/verify.hpp"

#include <memory>

namespace symwave {

/// sigma = sum_l conj(mu_0l) mu~'_0l in the polyphase domain.
template <class C>
TrigPoly<C> sigma_poly(const TrigPoly<C>& m0, const TrigPoly<C>& mtp, const DilationContext& dil) {
  auto P = polyphase_decompose(m0, dil);
  auto Q = polyphase_decompose(mtp, dil);
  TrigPoly<C> s(dil.dim);
  for (std::size_t l = 0; l < P.size(); ++l) s += P[l].conjugate() * Q[l];
  return s;
}

/// sigma(M^T K^T M^{-T} xi) = sigma(xi) for every K in H.
template <class C>
bool sigma_symmetric(const TrigPoly<C>& s, const Contexts& ctx, double tol = kPredicateTolerance) {
  for (const auto& K : ctx.sym.group)
    if (!approx_equal(s.compose_linear(conjugate_by_dilation(K, ctx.dil)), s, tol * std::max(1.0, s.max_abs())))
      return false;
  return true;
}

/// sigma with its checks: jet equal to delta below order n and H-symmetry about the origin.
template <class C>
TrigPoly<C> sigma(const TrigPoly<C>& m0, const TrigPoly<C>& mtp, const Contexts& ctx, int n) {
  TrigPoly<C> s = sigma_poly(m0, mtp, ctx.dil);
  if (!is_delta(jet(s, n), kPredicateTolerance))
    throw Error(ErrorKind::JetConditionFailed, "D^beta sigma(0) != delta for some |beta| < " + std::to_string(n));
  if (!sigma_symmetric(s, ctx)) throw Error(ErrorKind::JetConditionFailed, "sigma is not H-symmetric about the origin");
  return s;
}

/// Direct dual frame construction with r = m (sigma == 1) or r = m + 1 wavelet rows.
/// For r = m + 1 the extension is the identity-block extension of the row (P, mu_0m):
/// wavelet rows [I - P~^* P, -mu_0m P~^*, P~^*], last row [-conj(mu~_0m) P, 1 - conj(mu~_0m) mu_0m, conj(mu~_0m)].
template <class C>
FilterBankPair<C> algorithm1(const TrigPoly<C>& m0, const TrigPoly<C>& mtp, std::shared_ptr<const Contexts> ctx, int n) {
  using T = CoeffTraits<C>;
  const Contexts& cx = *ctx;
  const auto& dil = cx.dil;
  if (n < 1) throw Error(ErrorKind::StepPreconditionFailed, "order n must be at least 1");
  if (!check_symmetry(m0, cx.sym))
    throw Error(ErrorKind::StepPreconditionFailed, "step 1: m0 is not H-symmetric with respect to c");
  int sr0 = sum_rule_order(m0, dil, n);
  if (sr0 < n)
    throw Error(ErrorKind::StepPreconditionFailed,
                "step 1: m0 has sum rule order " + std::to_string(sr0) + " < " + std::to_string(n));
  if (!check_symmetry(mtp, cx.sym))
    throw Error(ErrorKind::StepPreconditionFailed, "step 2: utility dual mask is not H-symmetric with respect to c");
  if (!check_20new(m0, mtp, n))
    throw Error(ErrorKind::StepPreconditionFailed, "step 2: utility dual mask does not carry the dual jet of order " +
                                                       std::to_string(n));
  int srp = sum_rule_order(mtp, dil, n);

  TrigPoly<C> s = sigma(m0, mtp, cx, n);
  std::size_t m = static_cast<std::size_t>(dil.m), dim = dil.dim;
  TrigPoly<C> one = TrigPoly<C>::constant(dim, T::one());
  TrigPoly<C> zero(dim);
  auto P = polyphase_decompose(m0, dil);
  auto Q = polyphase_decompose(mtp, dil);
  TrigPoly<C> two_minus = one.scaled(T::from_int(2)) - s;
  for (auto& q : Q) q = two_minus * q;
  TrigPoly<C> om = one - s;
  TrigPoly<C> mu_m = om.conjugate(), mut_m = om;

  TrigPoly<C> total(dim);
  for (std::size_t k = 0; k < m; ++k) total += P[k].conjugate() * Q[k];
  if (!approx_equal(one - total, om * om, kPredicateTolerance) ||
      !approx_equal(total + mu_m.conjugate() * mut_m, one, kPredicateTolerance))
    throw Error(ErrorKind::InternalInconsistency, "1 - sum conj(mu) mu~ differs from (1 - sigma)^2");

  bool sigma_one = approx_equal(s, one, kPredicateTolerance);
  std::size_t width = sigma_one ? m + 1 : m + 2;

  FilterBankPair<C> bank;
  bank.ctx = ctx;
  bank.provenance = Provenance::Frame;
  bank.order = n;
  bank.required_dual_vm = n;
  bank.required_primal_vm = std::min(n, srp);
  bank.notes.push_back(sigma_one ? "sigma == 1, r = m" : "sigma != 1, r = m + 1");
  if (srp < n)
    bank.notes.push_back("utility dual has sum rule order " + std::to_string(srp) + "; primal wavelet VM guarantee is " +
                         std::to_string(srp));

  auto blank = [&] { return std::vector<TrigPoly<C>>(width, zero); };
  auto row0 = blank(), drow0 = blank();
  for (std::size_t l = 0; l < m; ++l) {
    row0[l] = P[l];
    drow0[l] = Q[l];
  }
  if (!sigma_one) {
    row0[m] = mu_m;
    drow0[m] = mut_m;
  }
  append_mask(bank, MaskLabel{}, row0, drow0);

  for (std::size_t p = 0; p < cx.orb.orbits.size(); ++p) {
    const Orbit& orb = cx.orb.orbits[p];
    for (std::size_t i = 0; i < orb.size(); ++i) {
      std::size_t d = orb.digits[i];
      auto row = blank(), drow = blank();
      TrigPoly<C> qd = Q[d].conjugate(), pd = P[d].conjugate();
      for (std::size_t l = 0; l < m; ++l) {
        row[l] = -(qd * P[l]);
        drow[l] = -(pd * Q[l]);
        if (l == d) {
          row[l] += one;
          drow[l] += one;
        }
      }
      if (sigma_one) {
        row[m] = qd;
        drow[m] = pd;
      } else {
        row[m] = -(mu_m * qd);
        drow[m] = -(mut_m * pd);
        row[m + 1] = qd;
        drow[m + 1] = pd;
      }
      append_mask(bank, MaskLabel{MaskRole::Wavelet, p, i}, row, drow);
    }
  }
  if (!sigma_one) {
    auto row = blank(), drow = blank();
    TrigPoly<C> a = mut_m.conjugate(), b = mu_m.conjugate();
    for (std::size_t l = 0; l < m; ++l) {
      row[l] = -(a * P[l]);
      drow[l] = -(b * Q[l]);
    }
    row[m] = one - a * mu_m;
    drow[m] = one - b * mut_m;
    row[m + 1] = a;
    drow[m + 1] = b;
    append_mask(bank, MaskLabel{MaskRole::LastRow, 0, 0}, row, drow);
  }
  finalize(bank, "algorithm1");
  return bank;
}

/// Utility dual with sum rule 1, H-symmetry and D^beta(1 - sigma)(0) = 0 for |beta| < n.
ExactPoly reduced_order_utility_dual(const ExactPoly& m0, const Contexts& ctx, int n, const SupportSearch& search = {});

/// Utility dual with the dual jet of order n and sum rule n.
ExactPoly auto_utility_dual(const ExactPoly& m0, const Contexts& ctx, int n, const SupportSearch& search = {});

}  // namespace symwave
