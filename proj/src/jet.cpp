#include "symwave/jet.hpp"

#include <algorithm>

namespace symwave {

namespace {

void compositions(std::size_t dim, int total, std::size_t pos, IVec& cur, std::vector<IVec>& out) {
  if (pos + 1 == dim) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur[pos] = v;
    compositions(dim, total - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<IVec> multi_indices_exact(std::size_t dim, int total) {
  std::vector<IVec> out;
  if (dim == 0) return out;
  IVec cur(dim, 0);
  compositions(dim, total, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> multi_indices(std::size_t dim, int n) {
  std::vector<IVec> out;
  for (int t = 0; t < n; ++t) {
    auto layer = multi_indices_exact(dim, t);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

int total_degree(const IVec& beta) {
  std::int64_t s = 0;
  for (auto x : beta) s += x;
  return static_cast<int>(s);
}

Rational multi_binomial(const IVec& beta, const IVec& alpha) {
  mpz_class out = 1;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(beta[i]), static_cast<unsigned long>(alpha[i]));
    out *= b;
  }
  return Rational(out);
}

Rational monomial_power(const IVec& k, const IVec& beta) {
  mpz_class out = 1;
  for (std::size_t i = 0; i < k.size(); ++i) {
    mpz_class p;
    mpz_class base = static_cast<long>(k[i]);
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(beta[i]));
    out *= p;
  }
  return Rational(out);
}

}  // namespace symwave
