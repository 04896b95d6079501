#include "symwave/dualmask.hpp"

#include "symwave/cyclotomic.hpp"
#include "symwave/predicates.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace symwave {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Rational as_rational(const QSqrt& v, const char* what) {
  if (!v.is_rational()) throw Error(ErrorKind::ExactPathUnavailable, std::string(what) + " must be rational");
  return v.rational_part();
}

// Integer points with sup-norm exactly r, lexicographic.
std::vector<IVec> shell(std::size_t dim, std::int64_t r) {
  std::vector<IVec> out;
  IVec x(dim, -r);
  while (true) {
    if (sup_norm(x) == r) out.push_back(x);
    std::size_t i = dim;
    while (i-- > 0) {
      if (x[i] < r) {
        ++x[i];
        break;
      }
      x[i] = -r;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

struct Assembled {
  RMatrix A;
  std::vector<Rational> b;
};

std::vector<Rational> orbit_column(const std::vector<IVec>& orbit, const std::vector<EquationFamily>& families,
                                   std::size_t rows) {
  std::vector<Rational> col(rows, Rational(0));
  for (const auto& k : orbit) {
    std::size_t off = 0;
    for (const auto& f : families) {
      auto c = f.column(k);
      for (std::size_t i = 0; i < c.size(); ++i) col[off + i] += c[i];
      off += f.rhs.size();
    }
  }
  return col;
}

std::size_t total_rows(const std::vector<EquationFamily>& families) {
  std::size_t n = 0;
  for (const auto& f : families) n += f.rhs.size();
  return n;
}

std::vector<Rational> stacked_rhs(const std::vector<EquationFamily>& families) {
  std::vector<Rational> b;
  for (const auto& f : families) b.insert(b.end(), f.rhs.begin(), f.rhs.end());
  return b;
}

LinearSolution solve_columns(const std::vector<std::vector<Rational>>& cols, const std::vector<Rational>& b) {
  RMatrix A(b.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < b.size(); ++i) A[i][j] = cols[j][i];
  return solve_exact(A, b, cols.size());
}

ExactPoly assemble(std::size_t dim, const std::vector<std::vector<IVec>>& orbits, const std::vector<Rational>& x) {
  ExactPoly out(dim);
  for (std::size_t j = 0; j < orbits.size(); ++j)
    if (sgn(x[j]) != 0)
      for (const auto& k : orbits[j]) out.add_term(k, QSqrt(x[j]));
  return out;
}

}  // namespace

SymmetrySpec symmetry_spec(const SymmetryContext& sym) { return {sym.group, sym.center}; }

EquationFamily jet_equations(const Jet<QSqrt>& targets) {
  EquationFamily f;
  f.name = "jet";
  auto betas = multi_indices(targets.dim, targets.order);
  for (const auto& beta : betas) f.rhs.push_back(as_rational(targets.at(beta), "jet target"));
  f.column = [betas](const IVec& k) {
    std::vector<Rational> c;
    c.reserve(betas.size());
    for (const auto& beta : betas) c.push_back(monomial_power(k, beta));
    return c;
  };
  return f;
}

EquationFamily sum_rule_equations(const DilationContext& dil, int order) {
  EquationFamily f;
  f.name = "sum_rule";
  auto betas = multi_indices(dil.dim, order);
  std::int64_t m = dil.m;
  std::size_t phi = cyclotomic(m).size() - 1;
  std::vector<std::vector<Rational>> powers(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) {
    std::vector<Rational> v(static_cast<std::size_t>(m), Rational(0));
    v[static_cast<std::size_t>(j)] = 1;
    powers[static_cast<std::size_t>(j)] = reduce_mod_cyclotomic(v, m);
  }
  std::size_t count = (dil.dual_digits.size() - 1) * betas.size() * phi;
  f.rhs.assign(count, Rational(0));
  f.column = [betas, powers, phi, m, dil](const IVec& k) {
    std::vector<Rational> c;
    IVec y = dil.scaled_inverse(k);
    for (std::size_t si = 1; si < dil.dual_digits.size(); ++si) {
      const IVec& s = dil.dual_digits[si];
      std::int64_t j = 0;
      for (std::size_t i = 0; i < y.size(); ++i) j += y[i] * s[i];
      const auto& red = powers[static_cast<std::size_t>(mod(j, m))];
      for (const auto& beta : betas) {
        Rational kb = monomial_power(k, beta);
        for (std::size_t t = 0; t < phi; ++t) c.push_back(kb * red[t]);
      }
    }
    return c;
  };
  return f;
}

EquationFamily sigma_jet_equations(const ExactPoly& m0, const DilationContext& dil, int n) {
  EquationFamily f;
  f.name = "sigma_jet";
  auto betas = multi_indices(dil.dim, n);
  for (const auto& beta : betas) f.rhs.push_back(Rational(total_degree(beta) == 0 ? 1 : 0));
  // coefficients of m0 grouped by coset
  std::vector<std::vector<std::pair<IVec, Rational>>> by_coset(dil.digits.size());
  for (const auto& [k, c] : m0.terms())
    by_coset[dil.residue(k).index].emplace_back(k, as_rational(c, "refinable mask coefficient"));
  Rational mq = rational_from_int(dil.m);
  f.column = [betas, by_coset, mq, dil](const IVec& k) {
    std::vector<Rational> c(betas.size(), Rational(0));
    for (const auto& [j, a] : by_coset[dil.residue(k).index]) {
      IVec diff = sub(k, j);
      for (std::size_t b = 0; b < betas.size(); ++b) c[b] += mq * a * monomial_power(diff, betas[b]);
    }
    return c;
  };
  return f;
}

std::vector<IVec> point_orbit(const IVec& k, const std::optional<SymmetrySpec>& sym) {
  if (!sym) return {k};
  std::vector<IVec> out;
  for (const auto& E : sym->group) {
    IVec img = add(mul(E, k), to_ivec(sub(sym->center, mul(E, sym->center))));
    if (std::find(out.begin(), out.end(), img) == out.end()) out.push_back(img);
  }
  return out;
}

ExactPoly solve_min_support(std::size_t dim, const std::optional<SymmetrySpec>& sym,
                            const std::vector<EquationFamily>& families, int budget, const std::vector<IVec>& seed) {
  std::size_t rows = total_rows(families);
  std::vector<Rational> b = stacked_rhs(families);
  std::set<IVec> covered;
  std::vector<std::vector<IVec>> orbits;
  std::vector<std::vector<Rational>> cols;
  LinearSolution last;

  auto try_point = [&](const IVec& k) -> bool {
    if (covered.count(k)) return false;
    auto orbit = point_orbit(k, sym);
    for (const auto& p : orbit) covered.insert(p);
    cols.push_back(orbit_column(orbit, families, rows));
    orbits.push_back(std::move(orbit));
    last = solve_columns(cols, b);
    return last.solvable;
  };

  for (const auto& k : seed)
    if (try_point(k)) return assemble(dim, orbits, last.x);
  for (std::int64_t r = 0; r <= budget; ++r)
    for (const auto& k : shell(dim, r))
      if (try_point(k)) return assemble(dim, orbits, last.x);

  std::ostringstream os;
  os << "no solution with support sup-norm <= " << budget << " (" << orbits.size() << " orbit unknowns, " << rows
     << " equations, rank " << last.rank << ", augmented rank " << last.augmented_rank << ", rank deficit "
     << (last.augmented_rank - last.rank) << ")";
  throw Error(ErrorKind::Unsolvable, os.str());
}

MaskSpace mask_space(std::size_t dim, const std::optional<SymmetrySpec>& sym,
                     const std::vector<EquationFamily>& families, const std::vector<IVec>& points) {
  std::size_t rows = total_rows(families);
  std::set<IVec> covered;
  std::vector<std::vector<IVec>> orbits;
  std::vector<std::vector<Rational>> cols;
  for (const auto& k : points) {
    if (covered.count(k)) continue;
    auto orbit = point_orbit(k, sym);
    for (const auto& p : orbit) covered.insert(p);
    cols.push_back(orbit_column(orbit, families, rows));
    orbits.push_back(std::move(orbit));
  }
  auto sol = solve_columns(cols, stacked_rhs(families));
  MaskSpace out;
  out.solvable = sol.solvable;
  if (!sol.solvable) return out;
  out.particular = assemble(dim, orbits, sol.x);
  for (const auto& v : sol.nullspace) out.basis.push_back(assemble(dim, orbits, v));
  return out;
}

ExactPoly solve_prescribed_jet(const Jet<QSqrt>& targets, const DilationContext& dil, const JetConstraints& constraints,
                               const SupportSearch& search) {
  std::vector<EquationFamily> families{jet_equations(targets)};
  int order = targets.order;
  if (constraints.sum_rule) {
    families.push_back(sum_rule_equations(dil, *constraints.sum_rule));
    order = std::max(order, *constraints.sum_rule);
  }
  int budget = search.budget >= 0 ? search.budget : 3 * order;
  return solve_min_support(targets.dim, constraints.symmetry, families, budget, search.seed);
}

ExactPoly symmetric_average(const ExactPoly& G, const SymmetryContext& sym) {
  ExactPoly out(G.dim());
  QSqrt w(Rational(1, static_cast<long>(sym.size())));
  for (std::size_t e = 0; e < sym.size(); ++e) out += G.compose_linear(sym.group[e]).shifted(sym.shift(e)).scaled(w);
  return out;
}

ExactPoly dual_mask(const ExactPoly& m0, const Contexts& ctx, int n, const SupportSearch& search,
                    bool require_sum_rule) {
  if (!check_symmetry(m0, ctx.sym)) throw Error(ErrorKind::PreconditionFailed, "refinable mask is not H-symmetric");
  int sr = sum_rule_order(m0, ctx.dil, n);
  if (require_sum_rule && sr < n)
    throw Error(ErrorKind::PreconditionFailed,
                "refinable mask has sum rule order " + std::to_string(sr) + " < " + std::to_string(n));
  auto targets = lambda_tilde(jet(m0, n));
  JetConstraints cons;
  cons.symmetry = symmetry_spec(ctx.sym);
  ExactPoly G = solve_prescribed_jet(targets, ctx.dil, cons, search);
  ExactPoly mt0 = symmetric_average(G, ctx.sym);
  if (!check_symmetry(mt0, ctx.sym)) throw Error(ErrorKind::PostconditionFailed, "dual mask is not H-symmetric");
  if (!check_20new(m0, mt0, n)) throw Error(ErrorKind::PostconditionFailed, "dual mask violates the jet condition");
  return mt0;
}

}  // namespace symwave
