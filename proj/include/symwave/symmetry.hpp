#pragma once

#include "symwave/lattice.hpp"

#include <map>
#include <utility>
#include <vector>

namespace symwave {

/// Finite unimodular symmetry group H with center c.
struct SymmetryContext {
  std::vector<IMat> group;           ///< stored order; config order first
  RVec center;
  std::vector<std::size_t> conjugate;  ///< index of M^{-1} E M
  std::size_t identity = 0;
  std::vector<std::vector<std::size_t>> product;  ///< product[a][b] = index of E_a E_b

  std::size_t size() const { return group.size(); }
  std::size_t index_of(const IMat& E) const;  ///< throws NotClosed if absent
  bool contains(const IMat& E) const;
  std::size_t inverse(std::size_t e) const;
  /// c - E c, integral for a validated context.
  IVec shift(std::size_t e) const;
  /// E k + c - E c.
  IVec act(std::size_t e, const IVec& k) const;
  bool is_abelian() const;
};

/// Validates (or, with as_generators, generates) H and attaches the center.
SymmetryContext validate_group(const std::vector<IMat>& matrices, const DilationContext& dil, const RVec& center,
                               bool as_generators = false);

struct Orbit {
  std::vector<std::size_t> digits;       ///< digit indices, ordered as (p,0),(p,1),...
  std::vector<std::size_t> stabilizer;   ///< H_{p,0} as group indices
  std::vector<std::size_t> transversal;  ///< E^(i), transversal[0] = identity
  std::map<std::size_t, IVec> r;         ///< r^F for F in the stabilizer
  /// j_table[K][i] = j with K E^(i) = E^(j) F; f_table[K][i] = that F.
  std::vector<std::vector<std::size_t>> j_table;
  std::vector<std::vector<std::size_t>> f_table;

  std::size_t rep() const { return digits.front(); }
  std::size_t size() const { return digits.size(); }
};

struct OrbitStructure {
  std::vector<Orbit> orbits;
  std::vector<std::pair<std::size_t, std::size_t>> digit_to_pi;  ///< digit index -> (p,i)
};

OrbitStructure orbit_decomposition(const SymmetryContext& sym, const DilationContext& dil);

/// r^F = M^{-1}(c - s) - M^{-1}F(c - s) for F in H_{p,0}.
IVec r_vector(const IVec& s, std::size_t F, const SymmetryContext& sym, const DilationContext& dil);

struct Contexts;
/// r^F_{p,0}; throws NotInStabilizer when F does not fix the representative.
IVec r_vector(std::size_t p, std::size_t F, const Contexts& ctx);

/// Everything the constructions need about one setting.
struct Contexts {
  DilationContext dil;
  SymmetryContext sym;
  OrbitStructure orb;

  std::size_t dim() const { return dil.dim; }
  std::int64_t m() const { return dil.m; }
  const IVec& digit(std::size_t p, std::size_t i) const { return dil.digits[orb.orbits[p].digits[i]]; }
};

Contexts make_contexts(const IMat& M, const std::vector<IMat>& group, const RVec& center,
                       const std::optional<std::vector<IVec>>& override_digits = std::nullopt,
                       bool as_generators = false);

}  // namespace symwave
