#include "symwave/intmat.hpp"

#include "symwave/errors.hpp"

#include <cstdlib>
#include <sstream>

namespace symwave {

IMat::IMat(std::size_t n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw Error(ErrorKind::ConfigError, "matrix entry count does not match dimension");
}

IMat IMat::identity(std::size_t n) {
  IMat out(n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IMat IMat::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t n = rows.size();
  IMat out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorKind::ConfigError, "matrix must be square");
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

IMat IMat::transpose() const {
  IMat out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::int64_t IMat::det() const {
  if (n_ == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<__int128> m(a_.begin(), a_.end());
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return m[i * n_ + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n_ && at(piv, k) == 0) ++piv;
      if (piv == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      for (std::size_t j = k + 1; j < n_; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    }
    prev = at(k, k);
  }
  return static_cast<std::int64_t>(sign * at(n_ - 1, n_ - 1));
}

IMat IMat::adjugate() const {
  IMat out(n_);
  if (n_ == 1) {
    out(0, 0) = 1;
    return out;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      IMat minor(n_ - 1);
      std::size_t r = 0;
      for (std::size_t a = 0; a < n_; ++a) {
        if (a == i) continue;
        std::size_t c = 0;
        for (std::size_t b = 0; b < n_; ++b) {
          if (b == j) continue;
          minor(r, c++) = (*this)(a, b);
        }
        ++r;
      }
      std::int64_t cof = minor.det();
      if ((i + j) % 2) cof = -cof;
      out(j, i) = cof;
    }
  }
  return out;
}

std::vector<std::vector<std::int64_t>> IMat::rows() const {
  std::vector<std::vector<std::int64_t>> out(n_, std::vector<std::int64_t>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::string IMat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

IMat operator*(const IMat& x, const IMat& y) {
  std::size_t n = x.n_;
  IMat out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += v * y(k, j);
    }
  return out;
}

IVec mul(const IMat& a, const IVec& v) {
  IVec out(a.dim(), 0);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

RVec mul(const IMat& a, const RVec& v) {
  RVec out(a.dim(), Rational(0));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out[i] += rational_from_int(a(i, j)) * v[j];
  return out;
}

IVec add(const IVec& a, const IVec& b) {
  IVec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

IVec sub(const IVec& a, const IVec& b) {
  IVec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

IVec neg(const IVec& a) {
  IVec out(a);
  for (auto& x : out) x = -x;
  return out;
}

IVec zero_vec(std::size_t n) { return IVec(n, 0); }

bool is_zero(const IVec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

std::int64_t sup_norm(const IVec& v) {
  std::int64_t out = 0;
  for (auto x : v) out = std::max<std::int64_t>(out, std::llabs(x));
  return out;
}

RVec to_rvec(const IVec& v) {
  RVec out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(rational_from_int(x));
  return out;
}

RVec add(const RVec& a, const RVec& b) {
  RVec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

RVec sub(const RVec& a, const RVec& b) {
  RVec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

bool is_integral(const RVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

IVec to_ivec(const RVec& v) {
  IVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw Error(ErrorKind::NonIntegral, "vector " + to_string(v) + " is not integral");
    out.push_back(x.get_num().get_si());
  }
  return out;
}

std::string to_string(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string to_string(const RVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace symwave
