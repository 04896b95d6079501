#include "symwave/cyclotomic.hpp"

#include "symwave/errors.hpp"

#include <map>
#include <mutex>

namespace symwave {

namespace {

// Exact division of a by monic b.
std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  std::size_t db = b.size() - 1;
  std::vector<std::int64_t> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    std::int64_t c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw Error(ErrorKind::InternalInconsistency, "cyclotomic division not exact");
  return q;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic(std::int64_t N) {
  static std::map<std::int64_t, std::vector<std::int64_t>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (N < 1) throw Error(ErrorKind::InternalInconsistency, "cyclotomic index must be positive");
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  std::vector<std::int64_t> p(static_cast<std::size_t>(N) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(N)] = 1;
  for (std::int64_t d = 1; d < N; ++d) {
    if (N % d) continue;
    p = divide_exact(p, cyclotomic(d));
  }
  return cache.emplace(N, p).first->second;
}

std::vector<Rational> reduce_mod_cyclotomic(const std::vector<Rational>& v, std::int64_t N) {
  const auto phi = cyclotomic(N);
  std::size_t deg = phi.size() - 1;
  std::vector<Rational> r = v;
  for (std::size_t i = r.size(); i-- > deg;) {
    if (sgn(r[i]) == 0) continue;
    Rational c = r[i];
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * rational_from_int(phi[j]);
  }
  r.resize(deg, Rational(0));
  return r;
}

bool vanishes_at_primitive_root(const std::vector<Rational>& v, std::int64_t N) {
  for (const auto& x : reduce_mod_cyclotomic(v, N))
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace symwave
