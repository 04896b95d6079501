#include "symwave/frames.hpp"

namespace symwave {

namespace {

void require_sum_rule(const ExactPoly& m0, const Contexts& ctx, int n) {
  if (!check_symmetry(m0, ctx.sym)) throw Error(ErrorKind::PreconditionFailed, "refinable mask is not H-symmetric");
  int sr = sum_rule_order(m0, ctx.dil, n);
  if (sr < n)
    throw Error(ErrorKind::PreconditionFailed,
                "refinable mask has sum rule order " + std::to_string(sr) + " < " + std::to_string(n));
}

}  // namespace

ExactPoly reduced_order_utility_dual(const ExactPoly& m0, const Contexts& ctx, int n, const SupportSearch& search) {
  require_sum_rule(m0, ctx, n);
  std::vector<EquationFamily> fam{sigma_jet_equations(m0, ctx.dil, n), sum_rule_equations(ctx.dil, 1)};
  int budget = search.budget >= 0 ? search.budget : 3 * n;
  ExactPoly mtp = solve_min_support(ctx.dim(), symmetry_spec(ctx.sym), fam, budget, search.seed);
  if (!check_symmetry(mtp, ctx.sym)) throw Error(ErrorKind::PostconditionFailed, "utility dual is not H-symmetric");
  if (sum_rule_order(mtp, ctx.dil, 1) < 1)
    throw Error(ErrorKind::PostconditionFailed, "utility dual misses the sum rule of order 1");
  if (!is_delta(jet(sigma_poly(m0, mtp, ctx.dil), n)))
    throw Error(ErrorKind::PostconditionFailed, "utility dual misses the sigma jet condition");
  return mtp;
}

ExactPoly auto_utility_dual(const ExactPoly& m0, const Contexts& ctx, int n, const SupportSearch& search) {
  require_sum_rule(m0, ctx, n);
  JetConstraints cons;
  cons.symmetry = symmetry_spec(ctx.sym);
  cons.sum_rule = n;
  ExactPoly mtp = solve_prescribed_jet(lambda_tilde(jet(m0, n)), ctx.dil, cons, search);
  if (!check_symmetry(mtp, ctx.sym)) throw Error(ErrorKind::PostconditionFailed, "utility dual is not H-symmetric");
  if (!check_20new(m0, mtp, n)) throw Error(ErrorKind::PostconditionFailed, "utility dual violates the jet condition");
  if (sum_rule_order(mtp, ctx.dil, n) < n)
    throw Error(ErrorKind::PostconditionFailed, "utility dual misses the sum rule of order n");
  return mtp;
}

}  // namespace symwave
