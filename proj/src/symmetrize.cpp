#include "symwave/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace symwave {

namespace {

using Subgroup = std::vector<std::size_t>;

Subgroup closure(const SymmetryContext& sym, const Subgroup& gens) {
  std::set<std::size_t> out{sym.identity};
  std::vector<std::size_t> todo{sym.identity};
  while (!todo.empty()) {
    std::size_t a = todo.back();
    todo.pop_back();
    for (std::size_t g : gens) {
      std::size_t b = sym.product[a][g];
      if (out.insert(b).second) todo.push_back(b);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Subgroup> subgroups_within(const SymmetryContext& sym, const Subgroup& G) {
  std::set<Subgroup> seen;
  std::vector<Subgroup> list{closure(sym, {})};
  seen.insert(list.front());
  for (std::size_t q = 0; q < list.size(); ++q) {
    for (std::size_t x : G) {
      if (std::binary_search(list[q].begin(), list[q].end(), x)) continue;
      Subgroup gens = list[q];
      gens.push_back(x);
      Subgroup S = closure(sym, gens);
      if (seen.insert(S).second) list.push_back(S);
    }
  }
  std::sort(list.begin(), list.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return list;
}

bool trivial_meet(const Subgroup& a, const Subgroup& b, std::size_t id) {
  for (std::size_t x : a)
    if (x != id && std::binary_search(b.begin(), b.end(), x)) return false;
  return true;
}

int element_order(const SymmetryContext& sym, std::size_t g) {
  int n = 1;
  for (std::size_t x = g; x != sym.identity; x = sym.product[x][g]) ++n;
  return n;
}

std::vector<int> prime_factors(std::size_t n) {
  std::vector<int> out;
  for (std::size_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(static_cast<int>(q));
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

bool is_power_of(int n, int q) {
  while (n % q == 0) n /= q;
  return n == 1;
}

std::size_t power(const SymmetryContext& sym, std::size_t g, int e) {
  std::size_t x = sym.identity;
  for (int i = 0; i < e; ++i) x = sym.product[x][g];
  return x;
}

bool in_stabilizer(const Orbit& orb, std::size_t F) {
  return std::find(orb.stabilizer.begin(), orb.stabilizer.end(), F) != orb.stabilizer.end();
}

}  // namespace

std::vector<int> CyclicFactorization::radix_digits(std::size_t k) const {
  std::vector<int> ks(orders.size());
  for (std::size_t j = orders.size(); j-- > 0;) {
    ks[j] = static_cast<int>(k % static_cast<std::size_t>(orders[j]));
    k /= static_cast<std::size_t>(orders[j]);
  }
  return ks;
}

std::size_t CyclicFactorization::from_digits(const std::vector<int>& ks) const {
  std::size_t k = 0;
  for (std::size_t j = 0; j < orders.size(); ++j) k = k * static_cast<std::size_t>(orders[j]) + static_cast<std::size_t>(ks[j]);
  return k;
}

std::size_t CyclicFactorization::index_of(std::size_t g) const {
  auto it = std::find(elements.begin(), elements.end(), g);
  if (it == elements.end()) throw Error(ErrorKind::InternalInconsistency, "element outside the cyclic factorization");
  return static_cast<std::size_t>(it - elements.begin());
}

CyclicFactorization cyclic_factorization(const SymmetryContext& sym, const std::vector<std::size_t>& subgroup) {
  Subgroup G = subgroup;
  std::sort(G.begin(), G.end());
  for (std::size_t a : G)
    for (std::size_t b : G)
      if (sym.product[a][b] != sym.product[b][a]) throw Error(ErrorKind::NotAbelian, "subgroup is not abelian");
  CyclicFactorization out;
  for (int q : prime_factors(G.size())) {
    Subgroup cur;
    for (std::size_t g : G)
      if (is_power_of(element_order(sym, g), q)) cur.push_back(g);
    while (cur.size() > 1) {
      std::size_t x = cur.front();
      int best = 0;
      for (std::size_t g : cur) {
        int o = element_order(sym, g);
        if (o > best) {
          best = o;
          x = g;
        }
      }
      Subgroup cyc = closure(sym, {x});
      std::optional<Subgroup> comp;
      for (const auto& D : subgroups_within(sym, cur)) {
        if (D.size() * cyc.size() == cur.size() && trivial_meet(D, cyc, sym.identity)) {
          comp = D;
          break;
        }
      }
      if (!comp) throw Error(ErrorKind::InternalInconsistency, "maximal cyclic factor has no complement");
      out.generators.push_back(x);
      out.orders.push_back(best);
      cur = *comp;
    }
  }
  std::size_t n = 1;
  for (int o : out.orders) n *= static_cast<std::size_t>(o);
  for (std::size_t k = 0; k < n; ++k) {
    auto ks = out.radix_digits(k);
    std::size_t e = sym.identity;
    for (std::size_t j = 0; j < ks.size(); ++j) e = sym.product[e][power(sym, out.generators[j], ks[j])];
    out.elements.push_back(e);
  }
  Subgroup check = out.elements;
  std::sort(check.begin(), check.end());
  if (check != G) throw Error(ErrorKind::InternalInconsistency, "mixed radix index map is not a bijection");
  out.plus.assign(n, std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < n; ++k) {
    auto a = out.radix_digits(k);
    for (std::size_t l = 0; l < n; ++l) {
      auto b = out.radix_digits(l);
      for (std::size_t j = 0; j < a.size(); ++j) b[j] = (a[j] + b[j]) % out.orders[j];
      out.plus[k][l] = out.from_digits(b);
      if (sym.product[out.elements[k]][out.elements[l]] != out.elements[out.plus[k][l]])
        throw Error(ErrorKind::InternalInconsistency, "E^(k) E^(l) != E^(k+l)");
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> subgroups(const SymmetryContext& sym) {
  Subgroup all(sym.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return subgroups_within(sym, all);
}

std::vector<std::vector<std::size_t>> complements(const Contexts& ctx, std::size_t p) {
  Subgroup S = ctx.orb.orbits.at(p).stabilizer;
  std::sort(S.begin(), S.end());
  std::vector<Subgroup> out;
  for (const auto& C : subgroups(ctx.sym))
    if (C.size() * S.size() == ctx.sym.size() && trivial_meet(C, S, ctx.sym.identity)) out.push_back(C);
  return out;
}

bool check_special_assumption(std::size_t p, const Contexts& ctx, const std::vector<std::size_t>& E) {
  const Orbit& orb = ctx.orb.orbits.at(p);
  for (std::size_t F : orb.stabilizer) {
    const IVec& r = orb.r.at(F);
    for (std::size_t e : E)
      if (mul(conjugate_by_dilation(ctx.sym.group[e], ctx.dil), r) != r) return false;
  }
  return true;
}

bool check_special_assumption(std::size_t p, const Contexts& ctx) {
  for (const auto& C : complements(ctx, p))
    if (check_special_assumption(p, ctx, C)) return true;
  return false;
}

namespace {

OrbitDecomposition evaluate_complement(std::size_t p, const Contexts& ctx, const Subgroup& C) {
  OrbitDecomposition od;
  od.complement_found = true;
  od.factors = cyclic_factorization(ctx.sym, C);
  od.special_assumption = check_special_assumption(p, ctx, C);
  od.digit_exact = true;
  const Orbit& orb = ctx.orb.orbits[p];
  const IVec& s0 = ctx.digit(p, 0);
  for (std::size_t e : od.factors.elements) {
    IVec img = ctx.sym.act(e, s0);
    std::size_t pos = orb.size();
    for (std::size_t i = 0; i < orb.size(); ++i)
      if (ctx.digit(p, i) == img) pos = i;
    if (pos == orb.size()) {
      od.digit_exact = false;
      pos = 0;
    }
    od.position.push_back(pos);
  }
  return od;
}

}  // namespace

CyclicDecomposition abelian_structure(const Contexts& ctx) {
  if (!ctx.sym.is_abelian()) throw Error(ErrorKind::NotAbelian, "symmetry group is not abelian");
  CyclicDecomposition dec;
  for (std::size_t p = 0; p < ctx.orb.orbits.size(); ++p) {
    std::string tag = "orbit " + std::to_string(p) + ": ";
    auto comps = complements(ctx, p);
    OrbitDecomposition chosen;
    bool have = false;
    for (const auto& C : comps) {
      OrbitDecomposition od = evaluate_complement(p, ctx, C);
      if (!have) {
        chosen = od;
        have = true;
      }
      if (od.usable()) {
        chosen = od;
        break;
      }
    }
    if (!have) {
      for (std::size_t i = 0; i < ctx.orb.orbits[p].size(); ++i) chosen.position.push_back(i);
      chosen.notes.push_back(tag + "H_{p,0} has no complement in H; W_p = I");
    } else if (!chosen.special_assumption) {
      chosen.notes.push_back(tag + "special assumption fails for every complement; W_p = I");
    } else if (!chosen.digit_exact) {
      chosen.notes.push_back(tag + "no complement maps s_{p,0} exactly onto the orbit digits; W_p = I");
    }
    for (int o : chosen.factors.orders)
      if (prime_factors(static_cast<std::size_t>(o)).front() != o)
        chosen.notes.push_back(tag + "cyclic factor of prime-power order " + std::to_string(o));
    dec.orbits.push_back(std::move(chosen));
  }
  return dec;
}

Complex root_of_unity(std::int64_t num, std::int64_t den) {
  num = ((num % den) + den) % den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  double a = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

CMat dft_matrix(int N) {
  CMat W(N, std::vector<Complex>(N));
  double s = 1.0 / std::sqrt(static_cast<double>(N));
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) W[k][l] = root_of_unity(static_cast<std::int64_t>(k) * l, N) * s;
  return W;
}

CMat kronecker(const CMat& a, const CMat& b) {
  std::size_t ra = a.size(), ca = ra ? a[0].size() : 0, rb = b.size(), cb = rb ? b[0].size() : 0;
  CMat out(ra * rb, std::vector<Complex>(ca * cb));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return out;
}

CMat conj_transpose(const CMat& a) {
  if (a.empty()) return {};
  CMat out(a[0].size(), std::vector<Complex>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = std::conj(a[i][j]);
  return out;
}

CMat identity_cmat(std::size_t n) {
  CMat out(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1.0;
  return out;
}

double unitarity_defect(const CMat& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      Complex s = 0.0;
      for (std::size_t l = 0; l < a[i].size(); ++l) s += a[i][l] * std::conj(a[j][l]);
      worst = std::max(worst, std::abs(s - Complex(i == j ? 1.0 : 0.0)));
    }
  return worst;
}

CMat SymmetrizerW::full() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  CMat out(n, std::vector<Complex>(n));
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[off + i][off + j] = b[i][j];
    off += b.size();
  }
  return out;
}

SymmetrizerW build_W(const CyclicDecomposition& dec) {
  SymmetrizerW W;
  for (const auto& od : dec.orbits) {
    std::size_t n = od.position.size();
    if (!od.usable()) {
      W.blocks.push_back(identity_cmat(n));
      W.characters.push_back(identity_cmat(n));
      W.applied.push_back(false);
      continue;
    }
    CMat w{{Complex(1.0)}};
    for (int N : od.factors.orders) w = kronecker(w, dft_matrix(N));
    CMat ch(n, std::vector<Complex>(n));
    for (std::size_t k = 0; k < n; ++k) {
      auto a = od.factors.radix_digits(k);
      for (std::size_t l = 0; l < n; ++l) {
        auto b = od.factors.radix_digits(l);
        Complex e = 1.0;
        for (std::size_t j = 0; j < a.size(); ++j)
          e *= root_of_unity(static_cast<std::int64_t>(a[j]) * b[j], od.factors.orders[j]);
        ch[k][l] = e;
      }
    }
    W.blocks.push_back(std::move(w));
    W.characters.push_back(std::move(ch));
    W.applied.push_back(true);
  }
  return W;
}

std::pair<std::size_t, std::size_t> split_element(std::size_t K, std::size_t p, const Contexts& ctx,
                                                  const OrbitDecomposition& od) {
  const Orbit& orb = ctx.orb.orbits.at(p);
  for (std::size_t k = 0; k < od.factors.size(); ++k) {
    std::size_t F = ctx.sym.product[ctx.sym.inverse(od.factors.elements[k])][K];
    if (in_stabilizer(orb, F)) return {k, F};
  }
  throw Error(ErrorKind::InternalInconsistency, "element is not in E_p H_{p,0}");
}

std::vector<FloatPoly> symmetrize_row(const std::vector<FloatPoly>& T, std::size_t p, const Contexts& ctx,
                                      const OrbitDecomposition& od, const SymmetrizerW& W, double tol) {
  const CMat& Wp = W.blocks.at(p);
  std::size_t n = T.size();
  if (Wp.size() != n) throw Error(ErrorKind::InternalInconsistency, "row length differs from W_p");
  std::vector<FloatPoly> out(n, FloatPoly(ctx.dim()));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) out[r] += T[k].scaled(Wp[k][r]);
  if (!W.applied.at(p)) return out;
  const Orbit& orb = ctx.orb.orbits[p];
  for (std::size_t K = 0; K < ctx.sym.size(); ++K) {
    auto [k, F] = split_element(K, p, ctx, od);
    IMat A = conjugate_by_dilation(ctx.sym.group[K], ctx.dil);
    for (std::size_t r = 0; r < n; ++r) {
      FloatPoly lhs = out[r].compose_linear(A);
      FloatPoly rhs = out[r].shifted(neg(orb.r.at(F))).scaled(std::conj(W.characters[p][k][r]));
      if (residual(lhs, rhs) > tol * std::max(1.0, out[r].max_abs()))
        throw Error(ErrorKind::VerificationFailed, "symmetrized row of orbit " + std::to_string(p) + " entry " +
                                                       std::to_string(r) + " fails its law for element " +
                                                       std::to_string(K));
    }
  }
  return out;
}

std::vector<ExpectedLaw> predicted_laws(std::size_t p, std::size_t r, const Contexts& ctx,
                                        const OrbitDecomposition& od, const SymmetrizerW& W) {
  std::vector<ExpectedLaw> out;
  const Orbit& orb = ctx.orb.orbits.at(p);
  for (std::size_t K = 0; K < ctx.sym.size(); ++K) {
    auto [k, F] = split_element(K, p, ctx, od);
    ExpectedLaw law;
    law.element = K;
    law.eps = W.characters[p][k][r];
    law.r = add(neg(ctx.sym.shift(K)), mul(ctx.dil.M, orb.r.at(F)));
    out.push_back(law);
  }
  return out;
}

FilterBankPair<Complex> symmetrize_bank(const FilterBankPair<Complex>& bank, const CyclicDecomposition& dec,
                                        const SymmetrizerW& W, Provenance prov, const std::string& stage) {
  const Contexts& ctx = *bank.ctx;
  if (dec.orbits.size() != ctx.orb.orbits.size())
    throw Error(ErrorKind::InternalInconsistency, "decomposition does not match the orbit structure");
  FilterBankPair<Complex> out;
  out.ctx = bank.ctx;
  out.provenance = prov;
  out.order = bank.order;
  out.required_primal_vm = bank.required_primal_vm;
  out.required_dual_vm = bank.required_dual_vm;
  out.notes = bank.notes;
  auto push = [&](const MaskLabel& lab, const std::vector<FloatPoly>& row, const std::vector<FloatPoly>& drow,
                  std::vector<ExpectedLaw> laws) {
    append_mask(out, lab, row, drow);
    out.laws.push_back(laws);
    out.laws_dual.push_back(std::move(laws));
  };
  push(bank.labels[0], bank.ext[0], bank.ext_dual[0], {});
  std::size_t width = bank.ext[0].size();
  for (std::size_t p = 0; p < ctx.orb.orbits.size(); ++p) {
    const Orbit& orb = ctx.orb.orbits[p];
    const OrbitDecomposition& od = dec.orbits[p];
    for (const auto& note : od.notes) out.notes.push_back(note);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      auto v = bank.find(p, i);
      if (!v)
        throw Error(ErrorKind::PreconditionFailed, "symmetrization needs every wavelet row; wavelet(" +
                                                       std::to_string(p) + "," + std::to_string(i) + ") is missing");
      rows.push_back(*v);
    }
    if (!W.applied.at(p)) {
      for (std::size_t i = 0; i < orb.size(); ++i) push(bank.labels[rows[i]], bank.ext[rows[i]], bank.ext_dual[rows[i]], {});
      continue;
    }
    const CMat& Wp = W.blocks[p];
    for (std::size_t r = 0; r < orb.size(); ++r) {
      std::vector<FloatPoly> row(width, FloatPoly(ctx.dim())), drow = row;
      for (std::size_t k = 0; k < orb.size(); ++k) {
        Complex w = std::conj(Wp[k][r]);
        if (w == Complex(0.0)) continue;
        std::size_t v = rows[od.position[k]];
        for (std::size_t c = 0; c < width; ++c) {
          row[c] += bank.ext[v][c].scaled(w);
          drow[c] += bank.ext_dual[v][c].scaled(w);
        }
      }
      push(MaskLabel{MaskRole::Wavelet, p, r}, row, drow, predicted_laws(p, r, ctx, od, W));
    }
  }
  for (std::size_t v = 0; v < bank.size(); ++v)
    if (bank.labels[v].role == MaskRole::LastRow) push(bank.labels[v], bank.ext[v], bank.ext_dual[v], {});
  if (out.size() != bank.size()) throw Error(ErrorKind::InternalInconsistency, "symmetrization changed the row count");
  finalize(out, stage);
  return out;
}

FilterBankPair<Complex> symmetrized_lift(const FilterBankPair<Complex>& bank, const LiftingFamily<Complex>& fam) {
  if (bank.provenance != Provenance::SymmetrizedFrameLike)
    throw Error(ErrorKind::PreconditionFailed,
                std::string("symmetrized lifting expects a symmetrized frame-like bank, got ") + to_string(bank.provenance));
  const Contexts& ctx = *bank.ctx;
  CyclicDecomposition dec = abelian_structure(ctx);
  SymmetrizerW W = build_W(dec);
  std::vector<FloatPoly> rows(bank.size(), FloatPoly(ctx.dim()));
  for (std::size_t v = 0; v < bank.size(); ++v) {
    const MaskLabel& lab = bank.labels[v];
    if (lab.role != MaskRole::Wavelet) continue;
    if (!W.applied.at(lab.p)) {
      rows[v] = fam.at(lab.p, lab.i);
      continue;
    }
    const OrbitDecomposition& od = dec.orbits[lab.p];
    const FloatPoly& base = fam.at(lab.p, 0);
    for (std::size_t k = 0; k < od.factors.size(); ++k) {
      IMat A = conjugate_by_dilation(ctx.sym.group[od.factors.elements[k]], ctx.dil);
      rows[v] += base.compose_linear(A).scaled(std::conj(W.blocks[lab.p][k][lab.i]));
    }
  }
  return apply_lifting(bank, rows, Provenance::SymmetrizedLifted, "symmetrized_lift");
}

}  // namespace symwave
