#pragma once

#include "symwave/frames.hpp"
#include "symwave/framelike.hpp"
#include "symwave/lifting.hpp"

#include <memory>
#include <string>
#include <vector>

namespace symwave {

using CMat = std::vector<std::vector<Complex>>;

/// E^(k) = K_1^{k_1} ... K_g^{k_g}; k is mixed radix with k_1 most significant.
struct CyclicFactorization {
  std::vector<std::size_t> generators;  ///< group indices of K_j
  std::vector<int> orders;              ///< N_j
  std::vector<std::size_t> elements;    ///< elements[k] = group index of E^(k)
  std::vector<std::vector<std::size_t>> plus;  ///< plus[k][l] = k (+) l

  std::size_t size() const { return elements.size(); }
  std::vector<int> radix_digits(std::size_t k) const;
  std::size_t from_digits(const std::vector<int>& ks) const;
  /// k with E^(k) = g; throws InternalInconsistency when g is not in the subgroup.
  std::size_t index_of(std::size_t g) const;
};

/// Cyclic factors of an abelian subgroup (listed by group index), prime-power orders.
CyclicFactorization cyclic_factorization(const SymmetryContext& sym, const std::vector<std::size_t>& subgroup);

/// All subgroups of H, ordered by size then elements.
std::vector<std::vector<std::size_t>> subgroups(const SymmetryContext& sym);

/// Subgroups C with C * H_{p,0} = H and C intersect H_{p,0} = {I}.
std::vector<std::vector<std::size_t>> complements(const Contexts& ctx, std::size_t p);

/// r^F_{p,0} = M^{-1} E M r^F_{p,0} for every F in H_{p,0} and E in the given set.
bool check_special_assumption(std::size_t p, const Contexts& ctx, const std::vector<std::size_t>& E);
/// True when some complement E_p satisfies the assumption.
bool check_special_assumption(std::size_t p, const Contexts& ctx);

struct OrbitDecomposition {
  bool complement_found = false;
  bool special_assumption = false;
  bool digit_exact = false;  ///< E^(k) s_{p,0} + c - E^(k) c is a digit of the orbit for every k
  CyclicFactorization factors;
  std::vector<std::size_t> position;  ///< position[k] = orbit position of the digit of E^(k)
  std::vector<std::string> notes;

  bool usable() const { return complement_found && special_assumption && digit_exact; }
};

struct CyclicDecomposition {
  std::vector<OrbitDecomposition> orbits;
};

/// Throws NotAbelian; orbits without a usable E_p are flagged and later get W_p = I.
CyclicDecomposition abelian_structure(const Contexts& ctx);

/// exp(2 pi i num / den) with exact values at multiples of a quarter turn.
Complex root_of_unity(std::int64_t num, std::int64_t den);
/// (1/sqrt N) {eps_N^{kl}}.
CMat dft_matrix(int N);
CMat kronecker(const CMat& a, const CMat& b);
CMat conj_transpose(const CMat& a);
CMat identity_cmat(std::size_t n);
double unitarity_defect(const CMat& a);

struct SymmetrizerW {
  std::vector<CMat> blocks;   ///< W_p
  std::vector<bool> applied;  ///< false when W_p = I is a fallback
  /// Unnormalized entry prod_j eps_{N_j}^{k_j l_j} = sqrt(#E_p) [W_p]_{k,l}.
  std::vector<std::vector<std::vector<Complex>>> characters;

  /// diag(W_0, ..., W_{#Lambda-1}).
  CMat full() const;
};

SymmetrizerW build_W(const CyclicDecomposition& dec);

/// T_p in mixed radix order: T[k] = component at the digit of E^(k).
template <class C>
std::vector<TrigPoly<C>> orbit_row(const std::vector<TrigPoly<C>>& P, std::size_t p, const Contexts& ctx,
                                   const OrbitDecomposition& od) {
  std::vector<TrigPoly<C>> T;
  const Orbit& orb = ctx.orb.orbits.at(p);
  for (std::size_t k = 0; k < od.factors.size(); ++k) T.push_back(P.at(orb.digits.at(od.position[k])));
  return T;
}

/// k and F with K = E^(k) F, F in H_{p,0}.
std::pair<std::size_t, std::size_t> split_element(std::size_t K, std::size_t p, const Contexts& ctx,
                                                  const OrbitDecomposition& od);

/// T'_p = T_p W_p, checked against
/// mu'_r((M^{-1} K M)^T xi) = conj(eps^{k r}) mu'_r(xi) e^{-2pi i (r^F, xi)} for K = E^(k) F.
std::vector<FloatPoly> symmetrize_row(const std::vector<FloatPoly>& T, std::size_t p, const Contexts& ctx,
                                      const OrbitDecomposition& od, const SymmetrizerW& W,
                                      double tol = kPredicateTolerance);

/// Predicted laws for every K in H for wavelet column r of orbit p.
std::vector<ExpectedLaw> predicted_laws(std::size_t p, std::size_t r, const Contexts& ctx,
                                        const OrbitDecomposition& od, const SymmetrizerW& W);

/// Applies diag(1, W^*, 1) to the rows of a verified bank and relabels wavelets by W column.
FilterBankPair<Complex> symmetrize_bank(const FilterBankPair<Complex>& bank, const CyclicDecomposition& dec,
                                        const SymmetrizerW& W, Provenance prov, const std::string& stage);

template <class C>
FilterBankPair<Complex> float_bank(const FilterBankPair<C>& bank) {
  if constexpr (CoeffTraits<C>::exact) return to_float(bank);
  else return bank;
}

template <class C>
void check_lemma_rows(const TrigPoly<C>& m0, const Contexts& ctx, const CyclicDecomposition& dec,
                      const SymmetrizerW& W) {
  FloatPoly f = [&] {
    if constexpr (CoeffTraits<C>::exact) return to_float(m0);
    else return m0;
  }();
  auto P = polyphase_decompose(f, ctx.dil);
  for (std::size_t p = 0; p < dec.orbits.size(); ++p)
    if (dec.orbits[p].usable()) symmetrize_row(orbit_row(P, p, ctx, dec.orbits[p]), p, ctx, dec.orbits[p], W);
}

/// Identity-block extension with U = U~ = W^*.
template <class C>
FilterBankPair<Complex> symmetrized_framelike(const TrigPoly<C>& m0, const TrigPoly<C>& mt0,
                                              std::shared_ptr<const Contexts> ctx, int n) {
  CyclicDecomposition dec = abelian_structure(*ctx);
  SymmetrizerW W = build_W(dec);
  check_lemma_rows(m0, *ctx, dec, W);
  auto bank = framelike_extension(m0, mt0, ctx, n);
  return symmetrize_bank(float_bank(bank), dec, W, Provenance::SymmetrizedFrameLike, "symmetrized_framelike");
}

/// L'_p = L_p W_p^* with L_{p,k} = L_{p,0}(M^T E^(k)T M^{-T} xi).
FilterBankPair<Complex> symmetrized_lift(const FilterBankPair<Complex>& bank, const LiftingFamily<Complex>& fam);

inline FilterBankPair<Complex> symmetrized_lift(const FilterBankPair<Complex>& bank, const LiftingFamily<QSqrt>& fam) {
  return symmetrized_lift(bank, to_float(fam));
}

/// Sigma-corrected extension premultiplied by diag(1, W^*) or diag(1, W^*, 1).
template <class C>
FilterBankPair<Complex> symmetrized_frames(const TrigPoly<C>& m0, const TrigPoly<C>& mtp,
                                           std::shared_ptr<const Contexts> ctx, int n) {
  CyclicDecomposition dec = abelian_structure(*ctx);
  SymmetrizerW W = build_W(dec);
  check_lemma_rows(m0, *ctx, dec, W);
  auto bank = algorithm1(m0, mtp, ctx, n);
  return symmetrize_bank(float_bank(bank), dec, W, Provenance::SymmetrizedFrame, "symmetrized_frames");
}

}  // namespace symwave
