#include "doctest.h"

#include "symwave/frames.hpp"
#include "test_support.hpp"

#include <random>

using namespace symwave;
using namespace symwave::testing;

namespace {

std::shared_ptr<const Contexts> shared(Contexts c) { return std::make_shared<const Contexts>(std::move(c)); }

// 1 - sigma from the mask side: for real masks sum_k conj(mu_0k) mu'_0k = sum over pairs h_a g_b with a - b in M Z^2,
// placed at exponent M^{-1}(b - a) and weighted by m.
ExactPoly oracle_sigma(const ExactPoly& m0, const ExactPoly& mtp, const DilationContext& dil) {
  ExactPoly s(2);
  for (const auto& [a, ha] : m0.terms())
    for (const auto& [b, gb] : mtp.terms()) {
      IVec d = sub(b, a);
      if (!dil.in_lattice(d)) continue;
      s.add_term(to_ivec(dil.inverse_apply(d)), ha * gb * QSqrt(static_cast<long>(dil.m)));
    }
  return s;
}

}  // namespace

TEST_CASE("sigma: second example") {
  auto ctx = ex2_contexts();
  ExactPoly s = sigma(ex2_m0(), ex2_utility_dual(), ctx, 2);
  CHECK(s == oracle_sigma(ex2_m0(), ex2_utility_dual(), ctx.dil));
  CHECK(is_delta(jet(s, 2)));
  CHECK_FALSE(s == ExactPoly::constant(2, QSqrt(1)));
  CHECK(sigma_symmetric(s, ctx));
}

TEST_CASE("sigma: identity case and failures") {
  auto ctx = ex1_contexts();
  ExactPoly one = ExactPoly::constant(2, QSqrt(1));
  CHECK(sigma(ex1_m0(), one, ctx, 3) == one);
  ExactPoly half = one.scaled(QSqrt(Rational(1, 2)));
  CHECK_THROWS_AS(sigma(ex1_m0(), half, ctx, 1), Error);
}

TEST_CASE("sigma: random symmetric inputs are symmetric about the origin") {
  std::mt19937 rng(17);
  for (auto ctx : {pm_contexts(mat(2, 0, 0, 2)), ex2_contexts()}) {
    for (int t = 0; t < 3; ++t) {
      ExactPoly a = random_symmetric_mask(ctx, rng, 1);
      ExactPoly b = random_symmetric_mask(ctx, rng, 1);
      CHECK(sigma_symmetric(sigma_poly(a, b, ctx.dil), ctx));
    }
  }
}

TEST_CASE("algorithm1: second example reproduces the published dual mask") {
  auto ctx = shared(ex2_contexts());
  auto bank = algorithm1(ex2_m0(), ex2_utility_dual(), ctx, 2);
  CHECK(bank.verified);
  CHECK(bank.wavelet_count() == 4);
  CHECK(bank.labels.back().role == MaskRole::LastRow);
  CHECK(bank.ext.size() == 5);
  CHECK(bank.dual[0] == ex2_published_dual());
  CHECK(bank.dual[0].size() == ex2_published_dual().size());
  int min_vm = 4;
  for (std::size_t v = 1; v < bank.size(); ++v) {
    if (bank.labels[v].role == MaskRole::Wavelet) min_vm = std::min(min_vm, vanishing_moment_order(bank.primal[v], 4));
    CHECK(vanishing_moment_order(bank.primal[v], 4) >= 1);
    CHECK(vanishing_moment_order(bank.dual[v], 4) >= 2);
  }
  CHECK(min_vm == 1);
  auto rep = verify_bank(bank);
  CHECK(rep.all_passed());
  CHECK(rep.find("symmetry.last-row")->passed);
  CHECK(rep.find("uep.pointwise")->residual < 1e-10);
  CHECK(rep.moments.dual_sum_rule >= 1);
}

TEST_CASE("algorithm1: last-row masks") {
  auto ctx = shared(ex2_contexts());
  auto bank = algorithm1(ex2_m0(), ex2_utility_dual(), ctx, 2);
  ExactPoly om = ExactPoly::constant(2, QSqrt(1)) - sigma_poly(ex2_m0(), ex2_utility_dual(), ctx->dil);
  ExactPoly d = dilate(om, ctx->dil).conjugate();
  CHECK(bank.primal.back() == -(d * bank.primal[0]));
  CHECK(bank.dual.back() == -(dilate(om, ctx->dil) * bank.dual[0]));
}

TEST_CASE("algorithm1: sigma == 1 gives r = m") {
  auto ctx = shared(ex1_contexts());
  auto bank = algorithm1(ex1_m0(), ExactPoly::constant(2, QSqrt(1)), ctx, 3);
  CHECK(bank.wavelet_count() == 4);
  for (const auto& lab : bank.labels) CHECK(lab.role != MaskRole::LastRow);
  CHECK(bank.ext[0].size() == 5);
  CHECK(extension_identity(bank).passed);
}

TEST_CASE("algorithm1: step preconditions") {
  auto ctx = shared(ex2_contexts());
  try {
    algorithm1(ex2_m0(), ex2_utility_dual(), ctx, 3);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepPreconditionFailed);
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
  ExactPoly bad = ex2_utility_dual();
  bad.add_term({3, 3}, QSqrt(Rational(1, 100)));
  CHECK_THROWS_AS(algorithm1(ex2_m0(), bad, ctx, 2), Error);
}

TEST_CASE("utility duals: reduced order") {
  auto ctx = ex2_contexts();
  // published utility dual passes the same checks
  ExactPoly pub = ex2_utility_dual();
  CHECK(check_symmetry(pub, ctx.sym));
  CHECK(sum_rule_order(pub, ctx.dil, 3) == 1);
  CHECK(is_delta(jet(sigma_poly(ex2_m0(), pub, ctx.dil), 2)));
  ExactPoly mtp = reduced_order_utility_dual(ex2_m0(), ctx, 2);
  CHECK(check_symmetry(mtp, ctx.sym));
  CHECK(sum_rule_order(mtp, ctx.dil, 1) >= 1);
  CHECK(is_delta(jet(sigma_poly(ex2_m0(), mtp, ctx.dil), 2)));
  CHECK(mtp.size() <= pub.size());
  auto bank = algorithm1(ex2_m0(), mtp, std::make_shared<const Contexts>(ctx), 2);
  CHECK(verify_bank(bank).all_passed());
}

TEST_CASE("utility duals: n = 1 matches the plain dual jet problem") {
  auto ctx = ex2_contexts();
  ExactPoly a = reduced_order_utility_dual(ex2_m0(), ctx, 1);
  CHECK(check_20new(ex2_m0(), a, 1));
  CHECK(sum_rule_order(a, ctx.dil, 1) == 1);
}

TEST_CASE("utility duals: auto mode") {
  auto ctx = ex2_contexts();
  ExactPoly mtp = auto_utility_dual(ex2_m0(), ctx, 2);
  CHECK(sum_rule_order(mtp, ctx.dil, 2) == 2);
  auto bank = algorithm1(ex2_m0(), mtp, std::make_shared<const Contexts>(ctx), 2);
  CHECK(bank.required_primal_vm == 2);
  auto rep = verify_bank(bank);
  CHECK(rep.all_passed());
  for (const auto& row : rep.moments.rows) {
    CHECK(row.primal_vm >= 2);
    CHECK(row.dual_vm >= 2);
  }
}

TEST_CASE("algorithm1: float backend agrees") {
  auto ctx = shared(ex2_contexts());
  auto eb = algorithm1(ex2_m0(), ex2_utility_dual(), ctx, 2);
  auto fb = algorithm1(to_float(ex2_m0()), to_float(ex2_utility_dual()), ctx, 2);
  REQUIRE(fb.size() == eb.size());
  for (std::size_t v = 0; v < fb.size(); ++v) {
    CHECK(residual(fb.primal[v], to_float(eb.primal[v])) < 1e-12);
    CHECK(residual(fb.dual[v], to_float(eb.dual[v])) < 1e-12);
  }
  CHECK(verify_bank(fb).all_passed());
}
