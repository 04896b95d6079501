#include "symwave/lattice.hpp"

#include "symwave/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdlib>
#include <set>

namespace symwave {

namespace {

bool in_fundamental_box(const IMat& adj, std::int64_t det, const IVec& x) {
  IVec y = mul(adj, x);
  for (auto yi : y) {
    // 0 <= yi/det < 1
    if (det > 0) {
      if (yi < 0 || yi >= det) return false;
    } else {
      if (yi > 0 || yi <= det) return false;
    }
  }
  return true;
}

void lex_zero_first(std::vector<IVec>& pts) {
  std::sort(pts.begin(), pts.end());
  auto z = std::find_if(pts.begin(), pts.end(), [](const IVec& v) { return is_zero(v); });
  if (z != pts.end()) std::rotate(pts.begin(), z, z + 1);
}

std::vector<IVec> canonical_digits(const IMat& M) {
  std::size_t d = M.dim();
  std::int64_t det = M.det();
  IMat adj = M.adjugate();
  IVec lo(d, 0), hi(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (M(i, j) < 0) lo[i] += M(i, j);
      else hi[i] += M(i, j);
    }
  }
  std::vector<IVec> out;
  IVec x = lo;
  while (true) {
    if (in_fundamental_box(adj, det, x)) out.push_back(x);
    std::size_t i = 0;
    while (i < d) {
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = lo[i];
      ++i;
    }
    if (i == d) break;
  }
  lex_zero_first(out);
  return out;
}

}  // namespace

RVec DilationContext::inverse_apply(const RVec& v) const {
  RVec out = mul(adj, v);
  Rational dq = rational_from_int(det);
  for (auto& x : out) x /= dq;
  return out;
}

RVec DilationContext::inverse_apply(const IVec& v) const { return inverse_apply(to_rvec(v)); }

IVec DilationContext::scaled_inverse(const IVec& v) const {
  IVec out = mul(adj, v);
  if (det < 0)
    for (auto& x : out) x = -x;
  return out;
}

bool DilationContext::in_lattice(const IVec& v) const {
  IVec y = mul(adj, v);
  for (auto yi : y)
    if (yi % det != 0) return false;
  return true;
}

CosetResidue DilationContext::residue(const IVec& k) const { return coset_residue(k, *this); }

void validate_dilation(const IMat& M) {
  if (M.dim() == 0) throw Error(ErrorKind::ConfigError, "empty dilation matrix");
  std::int64_t det = M.det();
  if (det == 0) throw Error(ErrorKind::SingularMatrix, "dilation matrix " + M.to_string() + " is singular");
  if (std::llabs(det) < 2)
    throw Error(ErrorKind::NotExpanding, "dilation matrix " + M.to_string() + " has |det| < 2");
  std::size_t d = M.dim();
  Eigen::MatrixXd A(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) A(i, j) = static_cast<double>(M(i, j));
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i]) <= 1.0 + 1e-9)
      throw Error(ErrorKind::NotExpanding, "dilation matrix " + M.to_string() + " has an eigenvalue of modulus <= 1");
  }
}

std::vector<IVec> digit_set(const IMat& M, const std::optional<std::vector<IVec>>& override_digits) {
  if (!override_digits) return canonical_digits(M);
  const auto& digits = *override_digits;
  std::int64_t det = M.det();
  std::size_t m = static_cast<std::size_t>(std::llabs(det));
  IMat adj = M.adjugate();
  if (digits.size() != m)
    throw Error(ErrorKind::BadOverride, "expected " + std::to_string(m) + " digits, got " + std::to_string(digits.size()));
  if (digits.empty() || !is_zero(digits[0])) throw Error(ErrorKind::BadOverride, "digit list must start with the zero vector");
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i].size() != M.dim()) throw Error(ErrorKind::BadOverride, "digit " + to_string(digits[i]) + " has wrong dimension");
    for (std::size_t j = 0; j < i; ++j) {
      IVec diff = mul(adj, sub(digits[i], digits[j]));
      bool same = true;
      for (auto x : diff)
        if (x % det != 0) same = false;
      if (same)
        throw Error(ErrorKind::BadOverride,
                    "digits " + to_string(digits[j]) + " and " + to_string(digits[i]) + " lie in the same coset");
    }
  }
  return digits;
}

DilationContext make_dilation_context(const IMat& M, const std::optional<std::vector<IVec>>& override_digits) {
  validate_dilation(M);
  DilationContext ctx;
  ctx.dim = M.dim();
  ctx.M = M;
  ctx.adj = M.adjugate();
  ctx.det = M.det();
  ctx.m = std::llabs(ctx.det);
  ctx.digits = digit_set(M, override_digits);
  ctx.dual_digits = canonical_digits(M.transpose());
  return ctx;
}

CosetResidue coset_residue(const IVec& k, const DilationContext& ctx) {
  for (std::size_t i = 0; i < ctx.digits.size(); ++i) {
    IVec y = mul(ctx.adj, sub(k, ctx.digits[i]));
    bool ok = true;
    for (auto yi : y)
      if (yi % ctx.det != 0) {
        ok = false;
        break;
      }
    if (ok) {
      for (auto& yi : y) yi /= ctx.det;
      return {i, y};
    }
  }
  throw Error(ErrorKind::InternalInconsistency, "no digit represents " + to_string(k));
}

IMat conjugate_by_dilation(const IMat& E, const DilationContext& dil) {
  IMat num = dil.adj * E * dil.M;
  IMat out(dil.dim);
  for (std::size_t i = 0; i < dil.dim; ++i)
    for (std::size_t j = 0; j < dil.dim; ++j) {
      if (num(i, j) % dil.det != 0)
        throw Error(ErrorKind::NotAppropriate, "M^{-1} E M is not integral for E = " + E.to_string());
      out(i, j) = num(i, j) / dil.det;
    }
  return out;
}

}  // namespace symwave
