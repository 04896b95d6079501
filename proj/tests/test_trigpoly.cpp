#include "doctest.h"

#include "symwave/cyclotomic.hpp"
#include "symwave/jet.hpp"
#include "symwave/polyphase.hpp"
#include "symwave/predicates.hpp"
#include "test_support.hpp"

#include <complex>
#include <numbers>
#include <random>

using namespace symwave;
using namespace symwave::testing;

namespace {

ExactPoly random_poly(std::mt19937& rng, std::size_t dim, int terms, int radius) {
  std::uniform_int_distribution<int> e(-radius, radius);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 8);
  ExactPoly t(dim);
  for (int i = 0; i < terms; ++i) {
    IVec k(dim);
    for (auto& x : k) x = e(rng);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    t.add_term(k, QSqrt(q));
  }
  return t;
}

// Direct numeric derivative oracle: sum_k h_k k^beta via doubles.
double float_jet(const ExactPoly& t, const IVec& beta) {
  double s = 0.0;
  for (const auto& [k, c] : t.terms()) {
    double p = c.to_double();
    for (std::size_t i = 0; i < k.size(); ++i) p *= std::pow(static_cast<double>(k[i]), static_cast<double>(beta[i]));
    s += p;
  }
  return s;
}

// Derivative conditions evaluated directly at xi = M^{-T} s.
int oracle_sum_rule(const ExactPoly& t, const DilationContext& dil, int nmax) {
  std::vector<std::vector<double>> points;
  for (std::size_t i = 1; i < dil.dual_digits.size(); ++i) {
    const IVec& s = dil.dual_digits[i];
    // M^{-T} s = adj^T s / det
    IMat adjT = dil.adj.transpose();
    IVec y = mul(adjT, s);
    points.push_back({static_cast<double>(y[0]) / dil.det, static_cast<double>(y[1]) / dil.det});
  }
  for (int deg = 0; deg < nmax; ++deg)
    for (int b0 = 0; b0 <= deg; ++b0) {
      int b1 = deg - b0;
      for (const auto& xi : points) {
        Complex v{0, 0};
        for (const auto& [k, c] : t.terms()) {
          double ph = 2 * std::numbers::pi * (k[0] * xi[0] + k[1] * xi[1]);
          v += c.to_double() * std::pow(double(k[0]), b0) * std::pow(double(k[1]), b1) * Complex(std::cos(ph), std::sin(ph));
        }
        if (std::abs(v) > 1e-9) return deg;
      }
    }
  return nmax;
}

}  // namespace

TEST_CASE("QSqrt arithmetic") {
  QSqrt r3 = QSqrt::sqrt_of(3);
  CHECK(r3 * r3 == QSqrt(3));
  CHECK((QSqrt(1) + r3) * (QSqrt(1) - r3) == QSqrt(-2));
  CHECK(QSqrt::sqrt_of(4) == QSqrt(2));
  CHECK(QSqrt::sqrt_of(12) == QSqrt(2) * r3);
  CHECK(QSqrt(1) / r3 == r3 / QSqrt(3));
  CHECK((QSqrt(1) / (QSqrt(2) + r3)) * (QSqrt(2) + r3) == QSqrt(1));
  CHECK_THROWS_AS(r3 + QSqrt::sqrt_of(2), Error);
}

TEST_CASE("ring operations") {
  ExactPoly one = ExactPoly::constant(2, QSqrt(1));
  std::mt19937 rng(1);
  ExactPoly t = random_poly(rng, 2, 6, 3);
  CHECK(t * one == t);
  CHECK(ExactPoly::monomial({1, 2}) * ExactPoly::monomial({-3, 4}) == ExactPoly::monomial({-2, 6}));
  ExactPoly a = ExactPoly::constant(1, QSqrt(1)) + ExactPoly::monomial({1});
  ExactPoly sq = ExactPoly::constant(1, QSqrt(1)) + ExactPoly::monomial({1}, QSqrt(2)) + ExactPoly::monomial({2});
  CHECK(a * a == sq);
  CHECK((t - t).is_zero());
  CHECK((t - t).size() == 0);
}

TEST_CASE("conjugate") {
  ExactPoly t = rpoly({{{1, 0}, Rational(2)}, {{0, -3}, Rational(-1, 2)}});
  ExactPoly c = t.conjugate();
  CHECK(c.coeff({-1, 0}) == QSqrt(2));
  CHECK(c.coeff({0, 3}) == QSqrt(Rational(-1, 2)));
  CHECK(c.conjugate() == t);
  FloatPoly f(2);
  f.add_term({1, 2}, Complex(0.3, -1.1));
  f.add_term({-2, 0}, Complex(-0.5, 0.25));
  std::vector<double> xi{0.3, 0.7};
  CHECK(std::abs(f.conjugate().eval(xi) - std::conj(f.eval(xi))) < 1e-12);
  std::mt19937 rng(2);
  for (int i = 0; i < 20; ++i) {
    ExactPoly r = random_poly(rng, 2, 8, 4);
    CHECK(r.conjugate().size() == r.size());
  }
}

TEST_CASE("compose_linear") {
  std::mt19937 rng(3);
  ExactPoly t = random_poly(rng, 2, 7, 3);
  CHECK(t.compose_linear(IMat::identity(2)) == t);
  ExactPoly neg = t.compose_linear(negm(IMat::identity(2)));
  for (const auto& [k, c] : t.terms()) CHECK(neg.coeff(symwave::neg(k)) == c);
  std::vector<IMat> uni{mat(1, 1, 0, 1), mat(0, 1, -1, 0), mat(2, 1, 1, 1), mat(1, -1, 0, -1), mat(-1, 2, 0, 1)};
  for (const auto& A : uni)
    for (const auto& B : uni) CHECK(t.compose_linear(A).compose_linear(B) == t.compose_linear(B * A));
}

TEST_CASE("compose_linear relates wavelet masks across an orbit") {
  // m(E^T xi) e^{2pi i(c - Ec, xi)} with c = 0 moves the exponential at (0,1) onto the other digits.
  auto ctx = ex1_contexts();
  ExactPoly w = ExactPoly::monomial({0, 1}, QSqrt(Rational(1, 2)));
  const auto& o = ctx.orb.orbits[1];
  for (std::size_t i = 0; i < o.size(); ++i)
    CHECK(w.compose_linear(ctx.sym.group[o.transversal[i]]) == ExactPoly::monomial(ctx.digit(1, i), QSqrt(Rational(1, 2))));
}

TEST_CASE("polyphase decomposition") {
  auto ctx = ex1_contexts();
  auto taus = polyphase_decompose(ExactPoly::constant(2, QSqrt(1)), ctx.dil);
  CHECK(taus[0] == ExactPoly::constant(2, QSqrt(2)));
  for (std::size_t k = 1; k < taus.size(); ++k) CHECK(taus[k].is_zero());
  auto mu = polyphase_decompose(ex1_m0(), ctx.dil);
  CHECK(mu[0] == ExactPoly::constant(2, QSqrt(Rational(1, 2))));

  std::vector<ExactPoly> unit(4, ExactPoly(2));
  unit[0] = ExactPoly::constant(2, QSqrt(2));
  CHECK(polyphase_recompose(unit, ctx.dil) == ExactPoly::constant(2, QSqrt(1)));
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<ExactPoly> e(4, ExactPoly(2));
    e[k] = ExactPoly::constant(2, QSqrt(2));
    CHECK(polyphase_recompose(e, ctx.dil) == ExactPoly::monomial(ctx.dil.digits[k]));
  }

  auto ex2 = ex2_contexts();
  ExactPoly dual = ex2_published_dual();
  auto parts = polyphase_decompose(dual, ex2.dil);
  for (const auto& p : parts)
    for (const auto& [k, c] : p.terms()) CHECK_FALSE(c.is_rational());
  CHECK(polyphase_recompose(parts, ex2.dil) == dual);
}

TEST_CASE("polyphase round trip for random polynomials") {
  std::mt19937 rng(4);
  std::vector<DilationContext> dils{make_dilation_context(mat(2, 0, 0, 2)), make_dilation_context(mat(1, -2, 2, -1)),
                                    make_dilation_context(mat(1, 1, -1, 1)), make_dilation_context(IMat(1, {3}))};
  for (int i = 0; i < 1000; ++i) {
    const auto& dil = dils[i % dils.size()];
    ExactPoly t = random_poly(rng, dil.dim, 1 + i % 9, 5);
    CHECK(polyphase_recompose(polyphase_decompose(t, dil), dil) == t);
  }
}

TEST_CASE("jets") {
  auto one = jet(ExactPoly::constant(2, QSqrt(1)), 3);
  CHECK(is_delta(one));
  auto mono = jet(ExactPoly::monomial({2, -3}), 4);
  for (const auto& [beta, v] : mono.values) CHECK(v == QSqrt(monomial_power({2, -3}, beta)));
  CHECK(jet(ex1_m0(), 1).at({0, 0}) == QSqrt(1));
  CHECK(multi_indices(2, 3).size() == 6);
  CHECK(multi_indices(2, 3)[1] == IVec{0, 1});

  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    ExactPoly t = random_poly(rng, 2, 5, 3);
    auto j = jet(t, 4);
    for (const auto& [beta, v] : j.values) CHECK(std::abs(v.to_double() - float_jet(t, beta)) < 1e-9);
  }
}

TEST_CASE("jet_product matches jet of the product") {
  ExactPoly a = ExactPoly::constant(1, QSqrt(1)) + ExactPoly::monomial({1});
  ExactPoly b = ExactPoly::constant(1, QSqrt(1)) - ExactPoly::monomial({1});
  ExactPoly c = ExactPoly::constant(1, QSqrt(1)) - ExactPoly::monomial({2});
  CHECK(jet_product(jet(a, 4), jet(b, 4)).values == jet(c, 4).values);
  std::mt19937 rng(6);
  for (int i = 0; i < 30; ++i) {
    ExactPoly t = random_poly(rng, 2, 4, 3);
    ExactPoly u = random_poly(rng, 2, 4, 3);
    CHECK(jet_product(jet(t, 5), jet(u, 5)).values == jet(t * u, 5).values);
    CHECK(jet_product(jet(t, 5), jet(ExactPoly::constant(2, QSqrt(1)), 5)).values == jet(t, 5).values);
    CHECK(conjugate_jet(jet(t, 5)).values == jet(t.conjugate(), 5).values);
  }
}

TEST_CASE("vanishing moments") {
  CHECK(vanishing_moment_order(ExactPoly(2), 5) == 5);
  ExactPoly t = ExactPoly::constant(2, QSqrt(1)) - ExactPoly::monomial({1, 0});
  CHECK(vanishing_moment_order(t, 5) == 1);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic(4) == std::vector<std::int64_t>{1, 0, 1});
  CHECK(cyclotomic(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
  // 1 + x + x^2 vanishes at primitive cube roots only.
  std::vector<Rational> v{Rational(1), Rational(1), Rational(1)};
  CHECK(vanishes_at_primitive_root(v, 3));
  CHECK_FALSE(vanishes_at_primitive_root(v, 1));
}

TEST_CASE("sum rule orders of the example masks") {
  auto ex1 = ex1_contexts();
  auto ex2 = ex2_contexts();
  // -I symmetry makes the odd-degree conditions vanish, so the order-3 mask also satisfies order 4.
  CHECK(sum_rule_order(ex1_m0(), ex1.dil, 3) == 3);
  CHECK(sum_rule_order(ex1_m0(), ex1.dil, 10) == oracle_sum_rule(ex1_m0(), ex1.dil, 10));
  CHECK(oracle_sum_rule(ex1_m0(), ex1.dil, 10) == 4);
  CHECK(oracle_sum_rule(ex2_m0(), ex2.dil, 10) == 2);
  CHECK(sum_rule_order(ex2_m0(), ex2.dil, 6) == 2);
  CHECK(sum_rule_order(ex2_utility_dual(), ex2.dil, 6) == 1);
  CHECK(sum_rule_order(ExactPoly::constant(2, QSqrt(1)), ex1.dil, 4) == 0);
  CHECK(sum_rule_order(ex1_published_lifted_dual0(), ex1.dil, 6) >= 1);
  CHECK(sum_rule_order(ex2_published_dual(), ex2.dil, 6) >= 1);
  for (const auto& [t, dil] : std::vector<std::pair<ExactPoly, DilationContext>>{
           {ex1_m0(), ex1.dil}, {ex2_m0(), ex2.dil}, {ex2_utility_dual(), ex2.dil},
           {ex1_published_lifted_dual0(), ex1.dil}, {ex2_published_dual(), ex2.dil}})
    CHECK(sum_rule_order(to_float(t), dil, 6) == sum_rule_order(t, dil, 6));
}

TEST_CASE("irrational coefficients take the float path") {
  auto ex2 = ex2_contexts();
  ExactPoly t = ex2_m0().scaled(QSqrt::sqrt_of(3));
  auto r = sum_rule(t, ex2.dil, 5);
  CHECK_FALSE(r.exact);
  CHECK(r.order == 2);
  CHECK_FALSE(r.warning.empty());
}

TEST_CASE("symmetry predicates") {
  auto ex1 = ex1_contexts();
  auto ex2 = ex2_contexts();
  CHECK(check_symmetry(ex1_m0(), ex1.sym));
  CHECK(check_symmetry(ex2_m0(), ex2.sym));
  CHECK_FALSE(check_symmetry(ex2_m0().shifted({1, 0}), ex2.sym));
  CHECK(check_symmetry(ex2_utility_dual(), ex2.sym));

  auto pm = make_contexts(mat(2, 0, 0, 2), {IMat::identity(2), negm(IMat::identity(2))}, {Rational(0), Rational(0)});
  ExactPoly t = ExactPoly::constant(2, QSqrt(1)) - ExactPoly::monomial({1, 0});
  auto laws = generalized_symmetry(t, pm.sym);
  REQUIRE(laws.has_value());
  std::size_t minus = pm.sym.index_of(negm(IMat::identity(2)));
  CHECK((*laws)[minus].eps == QSqrt(-1));
  CHECK((*laws)[minus].r == IVec{-1, 0});
  CHECK((*laws)[pm.sym.identity].eps == QSqrt(1));
  ExactPoly asym = ExactPoly::constant(2, QSqrt(1)) + ExactPoly::monomial({1, 0}, QSqrt(2));
  CHECK_FALSE(generalized_symmetry(asym, pm.sym).has_value());
}

TEST_CASE("evaluation") {
  ExactPoly one = ExactPoly::constant(2, QSqrt(1));
  CHECK(std::abs(one.eval({0.123, 0.9}) - Complex(1, 0)) < 1e-12);
  ExactPoly e = ExactPoly::monomial({1, 0});
  CHECK(std::abs(e.eval({0.25, 0.0}) - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(ex1_m0().eval({0.0, 0.0}) - Complex(1, 0)) < 1e-12);
}
