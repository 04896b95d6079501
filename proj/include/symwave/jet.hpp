#pragma once

#include "symwave/trigpoly.hpp"

#include <map>
#include <vector>

namespace symwave {

/// Multi-indices beta with |beta| < n, ordered by |beta| then lexicographically.
std::vector<IVec> multi_indices(std::size_t dim, int n);
/// Multi-indices with |beta| == total.
std::vector<IVec> multi_indices_exact(std::size_t dim, int total);

int total_degree(const IVec& beta);
Rational multi_binomial(const IVec& beta, const IVec& alpha);
/// k^beta.
Rational monomial_power(const IVec& k, const IVec& beta);

/// Normalized derivatives J(beta) = sum_k h_k k^beta, |beta| < order.
template <class C>
struct Jet {
  std::size_t dim = 0;
  int order = 0;
  std::map<IVec, C> values;

  C at(const IVec& beta) const {
    auto it = values.find(beta);
    return it == values.end() ? CoeffTraits<C>::zero() : it->second;
  }
};

template <class C>
Jet<C> jet(const TrigPoly<C>& t, int n) {
  Jet<C> out;
  out.dim = t.dim();
  out.order = n;
  for (const auto& beta : multi_indices(t.dim(), n)) {
    C s = CoeffTraits<C>::zero();
    for (const auto& [k, c] : t.terms()) s += c * CoeffTraits<C>::from_rational(monomial_power(k, beta));
    out.values[beta] = s;
  }
  return out;
}

/// Jet of a product via Leibniz.
template <class C>
Jet<C> jet_product(const Jet<C>& a, const Jet<C>& b) {
  Jet<C> out;
  out.dim = a.dim;
  out.order = std::min(a.order, b.order);
  for (const auto& beta : multi_indices(a.dim, out.order)) {
    C s = CoeffTraits<C>::zero();
    for (const auto& alpha : multi_indices(a.dim, total_degree(beta) + 1)) {
      bool le = true;
      for (std::size_t i = 0; i < beta.size(); ++i)
        if (alpha[i] > beta[i]) le = false;
      if (!le) continue;
      s += CoeffTraits<C>::from_rational(multi_binomial(beta, alpha)) * a.at(alpha) * b.at(sub(beta, alpha));
    }
    out.values[beta] = s;
  }
  return out;
}

/// Jet of conj(t) from the jet of t.
template <class C>
Jet<C> conjugate_jet(const Jet<C>& a) {
  Jet<C> out = a;
  for (auto& [beta, v] : out.values) {
    v = CoeffTraits<C>::conj(v);
    if (total_degree(beta) % 2) v = -v;
  }
  return out;
}

template <class C>
bool is_delta(const Jet<C>& j, double tol = 0.0) {
  for (const auto& [beta, v] : j.values) {
    C target = total_degree(beta) == 0 ? CoeffTraits<C>::one() : CoeffTraits<C>::zero();
    if (!CoeffTraits<C>::near(v, target, tol)) return false;
  }
  return true;
}

/// Solves sum_{alpha<=beta} (-1)^{|beta-alpha|} C(beta,alpha) lambda_alpha conj(lt_{beta-alpha}) = 0
/// for beta != 0 with lt_0 = 1.
template <class C>
Jet<C> lambda_tilde(const Jet<C>& lambda) {
  using T = CoeffTraits<C>;
  C l0 = lambda.at(zero_vec(lambda.dim));
  if (T::is_zero(l0)) throw Error(ErrorKind::PreconditionFailed, "lambda_0 is zero");
  // Work with g_gamma = conj(lt_gamma).
  std::map<IVec, C> g;
  for (const auto& beta : multi_indices(lambda.dim, lambda.order)) {
    if (total_degree(beta) == 0) {
      g[beta] = T::one();
      continue;
    }
    C s = T::zero();
    for (const auto& [gamma, gv] : g) {
      IVec alpha = sub(beta, gamma);
      bool ok = true;
      for (auto x : alpha)
        if (x < 0) ok = false;
      if (!ok || total_degree(alpha) == 0) continue;
      C term = T::from_rational(multi_binomial(beta, alpha)) * lambda.at(alpha) * gv;
      if (total_degree(gamma) % 2) term = -term;
      s += term;
    }
    // (-1)^{|beta|} lambda_0 g_beta + s = 0
    C gb = -s / l0;
    if (total_degree(beta) % 2) gb = -gb;
    g[beta] = gb;
  }
  Jet<C> out;
  out.dim = lambda.dim;
  out.order = lambda.order;
  for (auto& [beta, v] : g) out.values[beta] = T::conj(v);
  return out;
}

}  // namespace symwave
