#include "doctest.h"

#include "symwave/symmetrize.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace symwave;
using namespace symwave::testing;

namespace {

std::shared_ptr<const Contexts> shared(Contexts c) { return std::make_shared<const Contexts>(std::move(c)); }

IMat diag(std::int64_t a, std::int64_t b) { return mat(a, 0, 0, b); }

// Z2 x Z2 with M = 2I and c = (1/2, 0).
Contexts klein_contexts() {
  IMat I = IMat::identity(2);
  return make_contexts(mat(2, 0, 0, 2), {I, negm(I), diag(1, -1), diag(-1, 1)}, {Rational(1, 2), Rational(0)});
}

// Rotation by a quarter turn, M = 2I, c = 0.
Contexts z4_contexts() {
  IMat I = IMat::identity(2), R = mat(0, -1, 1, 0);
  return make_contexts(mat(2, 0, 0, 2), {I, R, negm(I), negm(R)}, {Rational(0), Rational(0)});
}

std::size_t orbit_of_size(const Contexts& ctx, std::size_t n) {
  for (std::size_t p = 0; p < ctx.orb.orbits.size(); ++p)
    if (ctx.orb.orbits[p].size() == n) return p;
  throw std::runtime_error("no orbit of the requested size");
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double max_entry_diff(const CMat& a, const CMat& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

void check_eps_and_laws(const FilterBankPair<Complex>& bank) {
  const Contexts& ctx = *bank.ctx;
  std::size_t minus = ctx.sym.index_of(negm(IMat::identity(2)));
  bool saw_plus = false, saw_minus = false;
  for (std::size_t v = 0; v < bank.size(); ++v) {
    if (bank.labels[v].role != MaskRole::Wavelet) continue;
    REQUIRE(bank.laws[v].size() == ctx.sym.size());
    for (const auto* side : {&bank.primal[v], &bank.dual[v]}) {
      auto law = detect_law(*side, ctx.sym.group[minus]);
      REQUIRE(law);
      CHECK(std::abs(law->eps.imag()) < 1e-12);
      CHECK(std::abs(std::abs(law->eps.real()) - 1.0) < 1e-12);
      (law->eps.real() > 0 ? saw_plus : saw_minus) = true;
      CHECK(std::abs(law->eps - bank.laws[v][minus].eps) < 1e-10);
      CHECK(law->r == bank.laws[v][minus].r);
    }
  }
  CHECK(saw_plus);
  CHECK(saw_minus);
}

}  // namespace

TEST_CASE("symmetrize: DFT matrices") {
  Complex h(1.0 / std::sqrt(2.0));
  CMat W2 = dft_matrix(2);
  CHECK(max_entry_diff(W2, CMat{{h, h}, {h, -h}}) < 1e-15);
  CMat W3 = dft_matrix(3);
  CHECK(std::abs(W3[1][2] - root_of_unity(2, 3) / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(root_of_unity(1, 3) - Complex(-0.5, std::sqrt(3.0) / 2)) < 1e-15);
  CMat K = kronecker(W2, W2);
  REQUIRE(K.size() == 4);
  for (const auto& row : K)
    for (const auto& e : row) CHECK(std::abs(std::abs(e.real()) - 0.5) < 1e-15);
  CHECK(std::abs(K[3][3] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(K[1][3] - Complex(-0.5)) < 1e-15);
  for (int N : {2, 3, 4, 5}) {
    CMat W = dft_matrix(N);
    CHECK(unitarity_defect(W) < 1e-12);
    CHECK(max_entry_diff(W, conj_transpose(conj_transpose(W))) == 0.0);
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) CHECK(W[k][l] == W[l][k]);
  }
  CHECK(root_of_unity(3, 4) == Complex(0.0, -1.0));
  CHECK(root_of_unity(-1, 2) == Complex(-1.0, 0.0));
}

TEST_CASE("symmetrize: non-abelian group is rejected") {
  auto ctx = ex1_contexts();
  CHECK_THROWS_AS(abelian_structure(ctx), Error);
  try {
    abelian_structure(ctx);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAbelian);
  }
}

TEST_CASE("symmetrize: structure of the second example") {
  auto ctx = ex2_contexts();
  auto dec = abelian_structure(ctx);
  REQUIRE(dec.orbits.size() == 2);
  std::size_t p2 = orbit_of_size(ctx, 2), p1 = orbit_of_size(ctx, 1);
  std::size_t minus = ctx.sym.index_of(negm(IMat::identity(2)));
  const auto& od = dec.orbits[p2];
  CHECK(od.usable());
  CHECK(od.factors.orders == std::vector<int>{2});
  CHECK(od.factors.generators == std::vector<std::size_t>{minus});
  CHECK(od.factors.elements == std::vector<std::size_t>{ctx.sym.identity, minus});
  CHECK(dec.orbits[p1].factors.size() == 1);
  CHECK(dec.orbits[p1].factors.generators.empty());
  CHECK(check_special_assumption(p1, ctx));
  CHECK(check_special_assumption(p2, ctx));
  auto W = build_W(dec);
  CHECK(W.blocks[p1] == CMat{{Complex(1.0)}});
  CHECK(max_entry_diff(W.blocks[p2], dft_matrix(2)) == 0.0);
  CMat full = W.full();
  REQUIRE(full.size() == 3);
  CHECK(unitarity_defect(full) < 1e-12);
}

TEST_CASE("symmetrize: Klein four group") {
  auto ctx = klein_contexts();
  std::vector<std::size_t> all{0, 1, 2, 3};
  auto cf = cyclic_factorization(ctx.sym, all);
  CHECK(cf.orders == std::vector<int>{2, 2});
  CHECK(sorted(cf.elements) == all);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l)
      CHECK(ctx.sym.product[cf.elements[k]][cf.elements[l]] == cf.elements[cf.plus[k][l]]);
  CHECK(subgroups(ctx.sym).size() == 5);

  // Both orbits have size 2 and stabilizer {I, diag(1,-1)}.
  std::size_t dneg = ctx.sym.index_of(diag(-1, 1)), minus = ctx.sym.index_of(negm(IMat::identity(2)));
  std::size_t p = 0;
  for (; p < ctx.orb.orbits.size(); ++p)
    if (!is_zero(ctx.orb.orbits[p].r.at(ctx.sym.index_of(diag(1, -1))))) break;
  REQUIRE(p < ctx.orb.orbits.size());
  CHECK_FALSE(check_special_assumption(p, ctx, {ctx.sym.identity, minus}));
  CHECK(check_special_assumption(p, ctx, {ctx.sym.identity, dneg}));
  CHECK(complements(ctx, p).size() == 2);
  auto dec = abelian_structure(ctx);
  CHECK(dec.orbits[p].usable());
  CHECK(dec.orbits[p].factors.generators == std::vector<std::size_t>{dneg});
}

TEST_CASE("symmetrize: mixed radix characters") {
  auto ctx = klein_contexts();
  CyclicDecomposition dec;
  OrbitDecomposition od;
  od.complement_found = od.special_assumption = od.digit_exact = true;
  od.factors = cyclic_factorization(ctx.sym, {0, 1, 2, 3});
  od.position = {0, 1, 2, 3};
  dec.orbits.push_back(od);
  auto W = build_W(dec);
  const auto& ch = W.characters[0];
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t n = 0; n < 4; ++n)
      for (std::size_t l = 0; l < 4; ++l) {
        CHECK(std::abs(ch[k][l] * ch[n][l] - ch[od.factors.plus[k][n]][l]) < 1e-15);
        CHECK(std::abs(W.blocks[0][k][l] * W.blocks[0][n][l] - 0.5 * W.blocks[0][od.factors.plus[k][n]][l]) < 1e-15);
        CHECK(std::abs(std::norm(ch[k][l]) - 1.0) < 1e-15);
      }
  CHECK(max_entry_diff(W.blocks[0], kronecker(dft_matrix(2), dft_matrix(2))) == 0.0);
}

TEST_CASE("symmetrize: quarter turn has no complement") {
  auto ctx = z4_contexts();
  std::size_t p = orbit_of_size(ctx, 2);
  CHECK(complements(ctx, p).empty());
  const Orbit& orb = ctx.orb.orbits[p];
  CHECK_FALSE(check_special_assumption(p, ctx, orb.transversal));
  auto dec = abelian_structure(ctx);
  CHECK_FALSE(dec.orbits[p].usable());
  auto W = build_W(dec);
  CHECK_FALSE(W.applied[p]);
  CHECK(W.blocks[p] == identity_cmat(2));
  auto cf = cyclic_factorization(ctx.sym, {0, 1, 2, 3});
  CHECK(cf.orders == std::vector<int>{4});
}

TEST_CASE("symmetrize: row of the second example") {
  auto ctx = ex2_contexts();
  auto dec = abelian_structure(ctx);
  auto W = build_W(dec);
  std::size_t p = orbit_of_size(ctx, 2);
  auto P = polyphase_decompose(to_float(ex2_m0()), ctx.dil);
  auto T = orbit_row(P, p, ctx, dec.orbits[p]);
  auto Tp = symmetrize_row(T, p, ctx, dec.orbits[p], W);
  double h = 1.0 / std::sqrt(2.0);
  CHECK(residual(Tp[0], (T[0] + T[1]).scaled(h)) < 1e-15);
  CHECK(residual(Tp[1], (T[0] - T[1]).scaled(h)) < 1e-15);
  IMat A = conjugate_by_dilation(negm(IMat::identity(2)), ctx.dil);
  CHECK(residual(Tp[0].compose_linear(A), Tp[0]) < 1e-12);
  CHECK(residual(Tp[1].compose_linear(A), Tp[1].scaled(-1.0)) < 1e-12);

  std::vector<FloatPoly> bad{FloatPoly::monomial({0, 0}), FloatPoly::monomial({1, 0})};
  CHECK_THROWS_AS(symmetrize_row(bad, p, ctx, dec.orbits[p], W), Error);
}

TEST_CASE("symmetrized_framelike: second example") {
  auto ctx = shared(ex2_contexts());
  ExactPoly m0 = ex2_m0();
  ExactPoly mt0 = dual_mask(m0, *ctx, 2);
  auto sym = symmetrized_framelike(m0, mt0, ctx, 2);
  auto plain = framelike_extension(m0, mt0, ctx, 2);
  CHECK(sym.provenance == Provenance::SymmetrizedFrameLike);
  CHECK(sym.verified);
  CHECK(sym.size() == plain.size());
  check_eps_and_laws(sym);
  auto rep = verify_bank(sym);
  CHECK(rep.all_passed());
  REQUIRE(rep.find("symmetry.generalized"));
  CHECK(rep.find("symmetry.generalized")->residual < 1e-10);
  CHECK_FALSE(rep.find("symmetry.W2"));
  CHECK(rep.find("uep.pointwise")->residual < 1e-10);
  for (std::size_t v = 1; v < sym.size(); ++v) CHECK(vanishing_moment_order(sym.dual[v], 4) >= 2);

  std::size_t p = orbit_of_size(*ctx, 2);
  double h = 1.0 / std::sqrt(2.0);
  FloatPoly a = to_float(plain.dual[*plain.find(p, 0)]), b = to_float(plain.dual[*plain.find(p, 1)]);
  CHECK(residual(sym.dual[*sym.find(p, 0)], (a + b).scaled(h)) < 1e-15);
  CHECK(residual(sym.dual[*sym.find(p, 1)], (a - b).scaled(h)) < 1e-15);
}

TEST_CASE("symmetrized_framelike: trivial group reproduces the plain extension") {
  auto ctx = shared(make_contexts(mat(2, 0, 0, 2), {IMat::identity(2)}, {Rational(0), Rational(0)}));
  std::mt19937 rng(11);
  ExactPoly m0 = random_symmetric_mask(*ctx, rng, 2, 1);
  ExactPoly mt0 = dual_mask(m0, *ctx, 1);
  auto sym = symmetrized_framelike(m0, mt0, ctx, 1);
  auto plain = to_float(framelike_extension(m0, mt0, ctx, 1));
  REQUIRE(sym.size() == plain.size());
  for (std::size_t v = 0; v < sym.size(); ++v) {
    CHECK(sym.primal[v] == plain.primal[v]);
    CHECK(sym.dual[v] == plain.dual[v]);
  }
}

TEST_CASE("symmetrized_framelike: fallback orbit stays mutually symmetric") {
  auto ctx = shared(z4_contexts());
  std::mt19937 rng(3);
  ExactPoly m0 = random_symmetric_mask(*ctx, rng, 1);
  ExactPoly mt0 = dual_mask(m0, *ctx, 1);
  auto sym = symmetrized_framelike(m0, mt0, ctx, 1);
  auto plain = to_float(framelike_extension(m0, mt0, ctx, 1));
  CHECK(sym.verified);
  std::size_t p = orbit_of_size(*ctx, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    auto v = sym.find(p, i);
    REQUIRE(v);
    CHECK(sym.laws[*v].empty());
    CHECK(sym.dual[*v] == plain.dual[*plain.find(p, i)]);
  }
  bool noted = false;
  for (const auto& n : sym.notes) noted = noted || n.find("no complement") != std::string::npos;
  CHECK(noted);
  auto rep = verify_bank(sym);
  CHECK(rep.all_passed());
  REQUIRE(rep.find("symmetry.W2"));
  CHECK(rep.find("symmetry.W2")->passed);
  REQUIRE(rep.find("symmetry.generalized"));
}

TEST_CASE("symmetrized_lift: second example") {
  auto ctx = shared(ex2_contexts());
  ExactPoly m0 = ex2_m0();
  ExactPoly mt0 = dual_mask(m0, *ctx, 2);
  auto plain = framelike_extension(m0, mt0, ctx, 2);
  auto fam = build_lifting_family(plain);
  auto sym = symmetrized_framelike(m0, mt0, ctx, 2);
  auto lifted = symmetrized_lift(sym, fam);
  CHECK(lifted.provenance == Provenance::SymmetrizedLifted);
  CHECK(lifted.verified);
  check_eps_and_laws(lifted);
  for (std::size_t v = 1; v < lifted.size(); ++v) CHECK(vanishing_moment_order(lifted.primal[v], 4) >= 1);
  CHECK(check_symmetry(lifted.dual[0], ctx->sym));
  CHECK(verify_bank(lifted).all_passed());

  // W is unitary, so the lifted dual refinable mask is the one of the plain lifting.
  auto plain_lifted = lift(plain, fam);
  CHECK(residual(lifted.dual[0], to_float(plain_lifted.dual[0])) < 1e-12);

  CHECK_THROWS_AS(symmetrized_lift(to_float(plain), fam), Error);
}

TEST_CASE("symmetrized_frames: second example") {
  auto ctx = shared(ex2_contexts());
  auto sym = symmetrized_frames(ex2_m0(), ex2_utility_dual(), ctx, 2);
  CHECK(sym.provenance == Provenance::SymmetrizedFrame);
  CHECK(sym.verified);
  CHECK(sym.wavelet_count() == 4);
  CHECK(sym.labels.back().role == MaskRole::LastRow);
  CHECK(residual(sym.dual[0], to_float(ex2_published_dual())) < 1e-15);
  check_eps_and_laws(sym);
  auto rep = verify_bank(sym);
  CHECK(rep.all_passed());
  CHECK(rep.find("symmetry.last-row")->passed);
  CHECK(rep.find("duality.extension")->passed);
  for (std::size_t v = 1; v < sym.size(); ++v) {
    CHECK(vanishing_moment_order(sym.primal[v], 4) >= 1);
    CHECK(vanishing_moment_order(sym.dual[v], 4) >= 2);
  }
}

TEST_CASE("symmetrized_frames: float input agrees with exact input") {
  auto ctx = shared(ex2_contexts());
  auto a = symmetrized_frames(ex2_m0(), ex2_utility_dual(), ctx, 2);
  auto b = symmetrized_frames(to_float(ex2_m0()), to_float(ex2_utility_dual()), ctx, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t v = 0; v < a.size(); ++v) {
    CHECK(residual(a.primal[v], b.primal[v]) < 1e-12);
    CHECK(residual(a.dual[v], b.dual[v]) < 1e-12);
  }
}
