#include "symwave/symmetry.hpp"

#include "symwave/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace symwave {

namespace {

constexpr std::size_t kMaxGroupSize = 10000;

}  // namespace

std::size_t SymmetryContext::index_of(const IMat& E) const {
  for (std::size_t i = 0; i < group.size(); ++i)
    if (group[i] == E) return i;
  throw Error(ErrorKind::NotClosed, "matrix " + E.to_string() + " is not in the group");
}

bool SymmetryContext::contains(const IMat& E) const {
  return std::find(group.begin(), group.end(), E) != group.end();
}

std::size_t SymmetryContext::inverse(std::size_t e) const {
  for (std::size_t f = 0; f < group.size(); ++f)
    if (product[e][f] == identity) return f;
  throw Error(ErrorKind::InternalInconsistency, "missing inverse");
}

IVec SymmetryContext::shift(std::size_t e) const { return to_ivec(sub(center, mul(group[e], center))); }

IVec SymmetryContext::act(std::size_t e, const IVec& k) const { return add(mul(group[e], k), shift(e)); }

bool SymmetryContext::is_abelian() const {
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = a + 1; b < group.size(); ++b)
      if (product[a][b] != product[b][a]) return false;
  return true;
}

SymmetryContext validate_group(const std::vector<IMat>& matrices, const DilationContext& dil, const RVec& center,
                               bool as_generators) {
  std::size_t d = dil.dim;
  if (center.size() != d) throw Error(ErrorKind::ConfigError, "center has wrong dimension");
  SymmetryContext sym;
  sym.center = center;
  for (const auto& E : matrices) {
    if (E.dim() != d) throw Error(ErrorKind::ConfigError, "group element " + E.to_string() + " has wrong dimension");
    if (std::llabs(E.det()) != 1)
      throw Error(ErrorKind::NotUnimodular, "group element " + E.to_string() + " is not unimodular");
    if (!sym.contains(E)) sym.group.push_back(E);
  }
  IMat I = IMat::identity(d);
  if (as_generators) {
    if (!sym.contains(I)) sym.group.insert(sym.group.begin(), I);
    for (std::size_t a = 0; a < sym.group.size(); ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        for (const IMat& P : {sym.group[a] * sym.group[b], sym.group[b] * sym.group[a]}) {
          if (!sym.contains(P)) {
            sym.group.push_back(P);
            if (sym.group.size() > kMaxGroupSize)
              throw Error(ErrorKind::NotClosed, "generated group exceeds " + std::to_string(kMaxGroupSize) + " elements");
          }
        }
      }
    }
  }
  if (!sym.contains(I)) throw Error(ErrorKind::NotClosed, "identity is missing from the group");
  std::size_t n = sym.group.size();
  sym.identity = sym.index_of(I);
  sym.product.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      IMat P = sym.group[a] * sym.group[b];
      auto it = std::find(sym.group.begin(), sym.group.end(), P);
      if (it == sym.group.end())
        throw Error(ErrorKind::NotClosed, "product " + sym.group[a].to_string() + " * " + sym.group[b].to_string() +
                                              " = " + P.to_string() + " is not in the group");
      sym.product[a][b] = static_cast<std::size_t>(it - sym.group.begin());
    }
  }
  sym.conjugate.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    IMat P = dil.adj * sym.group[e] * dil.M;  // det * M^{-1} E M
    IMat Q(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (P(i, j) % dil.det != 0)
          throw Error(ErrorKind::NotAppropriate, "M^-1 E M is not integral for E = " + sym.group[e].to_string());
        Q(i, j) = P(i, j) / dil.det;
      }
    }
    auto it = std::find(sym.group.begin(), sym.group.end(), Q);
    if (it == sym.group.end())
      throw Error(ErrorKind::NotAppropriate, "M^-1 E M = " + Q.to_string() + " is not in the group");
    sym.conjugate[e] = static_cast<std::size_t>(it - sym.group.begin());
    RVec sh = sub(center, mul(sym.group[e], center));
    if (!is_integral(sh))
      throw Error(ErrorKind::BadCenter,
                  "c - E c = " + to_string(sh) + " is not integral for E = " + sym.group[e].to_string());
  }
  return sym;
}

IVec r_vector(const IVec& s, std::size_t F, const SymmetryContext& sym, const DilationContext& dil) {
  RVec cs = sub(sym.center, to_rvec(s));
  RVec r = sub(dil.inverse_apply(cs), dil.inverse_apply(mul(sym.group[F], cs)));
  if (!is_integral(r))
    throw Error(ErrorKind::InternalInconsistency, "r vector " + to_string(r) + " is not integral");
  return to_ivec(r);
}

OrbitStructure orbit_decomposition(const SymmetryContext& sym, const DilationContext& dil) {
  std::size_t m = dil.digits.size();
  std::size_t n = sym.size();
  // image[e][k] = digit index of the coset E<s_k> (with center).
  std::vector<std::vector<std::size_t>> image(n, std::vector<std::size_t>(m));
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t k = 0; k < m; ++k) image[e][k] = dil.residue(sym.act(e, dil.digits[k])).index;

  std::vector<int> seen(m, 0);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < m; ++k) {
    if (seen[k]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t e = 0; e < n; ++e) {
      std::size_t j = image[e][k];
      if (!seen[j]) {
        seen[j] = 1;
        cls.push_back(j);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(cls);
  }
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() < b.front();
  });

  OrbitStructure out;
  out.digit_to_pi.assign(m, {0, 0});
  std::vector<std::string> bad;
  for (std::size_t p = 0; p < classes.size(); ++p) {
    const auto& cls = classes[p];
    Orbit orb;
    std::size_t rep = cls.front();
    const IVec& s0 = dil.digits[rep];
    for (std::size_t e = 0; e < n; ++e)
      if (image[e][rep] == rep) orb.stabilizer.push_back(e);
    for (std::size_t digit : cls) {
      std::size_t chosen = n;
      for (std::size_t e = 0; e < n; ++e) {
        if (sym.act(e, s0) == dil.digits[digit]) {
          chosen = e;
          break;
        }
      }
      if (digit == rep) chosen = sym.identity;
      if (chosen == n) {
        bad.push_back(to_string(dil.digits[digit]));
        chosen = sym.identity;
      }
      orb.digits.push_back(digit);
      orb.transversal.push_back(chosen);
    }
    if (!bad.empty()) continue;
    for (std::size_t F : orb.stabilizer) orb.r[F] = r_vector(s0, F, sym, dil);
    orb.j_table.assign(n, std::vector<std::size_t>(orb.size()));
    orb.f_table.assign(n, std::vector<std::size_t>(orb.size()));
    for (std::size_t K = 0; K < n; ++K) {
      for (std::size_t i = 0; i < orb.size(); ++i) {
        std::size_t KE = sym.product[K][orb.transversal[i]];
        bool found = false;
        for (std::size_t j = 0; j < orb.size() && !found; ++j) {
          std::size_t F = sym.product[sym.inverse(orb.transversal[j])][KE];
          if (std::find(orb.stabilizer.begin(), orb.stabilizer.end(), F) != orb.stabilizer.end()) {
            orb.j_table[K][i] = j;
            orb.f_table[K][i] = F;
            found = true;
          }
        }
        if (!found) throw Error(ErrorKind::InternalInconsistency, "coset table is incomplete");
      }
    }
    for (std::size_t i = 0; i < orb.size(); ++i) out.digit_to_pi[orb.digits[i]] = {p, i};
    if (orb.size() * orb.stabilizer.size() != n) throw Error(ErrorKind::InternalInconsistency, "orbit-stabilizer mismatch");
    out.orbits.push_back(std::move(orb));
  }
  if (!bad.empty()) {
    std::string msg = "no group element maps an orbit representative exactly onto digit(s)";
    for (const auto& b : bad) msg += " " + b;
    msg += "; replace them by the images E s_{p,0} + c - E c";
    throw Error(ErrorKind::DigitIncompatible, msg);
  }
  return out;
}

IVec r_vector(std::size_t p, std::size_t F, const Contexts& ctx) {
  const Orbit& orb = ctx.orb.orbits.at(p);
  auto it = orb.r.find(F);
  if (it == orb.r.end())
    throw Error(ErrorKind::NotInStabilizer, ctx.sym.group.at(F).to_string() + " does not stabilize orbit " + std::to_string(p));
  return it->second;
}

Contexts make_contexts(const IMat& M, const std::vector<IMat>& group, const RVec& center,
                       const std::optional<std::vector<IVec>>& override_digits, bool as_generators) {
  Contexts ctx;
  ctx.dil = make_dilation_context(M, override_digits);
  ctx.sym = validate_group(group, ctx.dil, center, as_generators);
  ctx.orb = orbit_decomposition(ctx.sym, ctx.dil);
  return ctx;
}

}  // namespace symwave
