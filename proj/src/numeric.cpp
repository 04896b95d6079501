#include "symwave/numeric.hpp"

#include "symwave/errors.hpp"

#include <cmath>
#include <cctype>
#include <sstream>

namespace symwave {

namespace {

double g_prune_tolerance = 1e-12;

// Splits m = q^2 * r with r square-free.
void split_square(std::int64_t m, std::int64_t& q, std::int64_t& r) {
  q = 1;
  r = 1;
  std::int64_t rest = m;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) q *= p;
    if (e % 2) r *= p;
  }
  r *= rest;
}

}  // namespace

double float_prune_tolerance() { return g_prune_tolerance; }
void set_float_prune_tolerance(double tol) { g_prune_tolerance = tol; }

Rational rational_from_int(std::int64_t v) {
  return Rational(static_cast<long>(v));
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  if (s.empty()) throw Error(ErrorKind::ConfigError, "empty rational literal");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
      throw Error(ErrorKind::ConfigError, "bad rational literal '" + std::string(text) + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::ConfigError, "bad rational literal '" + std::string(text) + "'");
  if (s.find('/') != std::string::npos && sgn(q.get_den()) == 0)
    throw Error(ErrorKind::ConfigError, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

QSqrt::QSqrt(Rational a, Rational b, std::int64_t radicand) : a_(std::move(a)), b_(std::move(b)), r_(radicand) {
  if (radicand <= 0) throw Error(ErrorKind::BackendMismatch, "radicand must be positive");
  a_.canonicalize();
  b_.canonicalize();
  normalize();
}

QSqrt QSqrt::sqrt_of(std::int64_t m) {
  if (m <= 0) throw Error(ErrorKind::BackendMismatch, "sqrt of non-positive integer");
  std::int64_t q = 1, r = 1;
  split_square(m, q, r);
  if (r == 1) return QSqrt(rational_from_int(q));
  return QSqrt(Rational(0), rational_from_int(q), r);
}

void QSqrt::normalize() {
  if (r_ != 1) {
    std::int64_t q = 1, r = 1;
    split_square(r_, q, r);
    if (q != 1) b_ *= rational_from_int(q);
    r_ = r;
  }
  if (r_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (sgn(b_) == 0) r_ = 1;
}

std::int64_t QSqrt::common_radicand(const QSqrt& o) const {
  if (r_ == 1) return o.r_;
  if (o.r_ == 1 || o.r_ == r_) return r_;
  throw Error(ErrorKind::BackendMismatch,
              "mixing sqrt(" + std::to_string(r_) + ") and sqrt(" + std::to_string(o.r_) + ")");
}

QSqrt QSqrt::operator-() const {
  QSqrt out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

QSqrt& QSqrt::operator+=(const QSqrt& o) {
  std::int64_t r = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  r_ = r;
  if (sgn(b_) == 0) r_ = 1;
  return *this;
}

QSqrt& QSqrt::operator-=(const QSqrt& o) { return *this += -o; }

QSqrt& QSqrt::operator*=(const QSqrt& o) {
  std::int64_t r = common_radicand(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * rational_from_int(r);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  r_ = r;
  if (sgn(b_) == 0) r_ = 1;
  return *this;
}

QSqrt& QSqrt::operator/=(const QSqrt& o) {
  if (o.is_zero()) throw Error(ErrorKind::InternalInconsistency, "division by zero");
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * rational_from_int(o.r_);
  QSqrt conj_o = o;
  conj_o.b_ = -conj_o.b_;
  *this *= conj_o;
  a_ /= norm;
  b_ /= norm;
  return *this;
}

bool operator==(const QSqrt& x, const QSqrt& y) {
  if (x.is_rational() && y.is_rational()) return x.a_ == y.a_;
  return x.a_ == y.a_ && x.b_ == y.b_ && x.r_ == y.r_;
}

double QSqrt::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(r_));
}

std::string QSqrt::to_string() const {
  if (is_rational()) return a_.get_str();
  std::ostringstream os;
  os << a_.get_str() << (sgn(b_) < 0 ? "-" : "+") << Rational(abs(b_)).get_str() << "*sqrt(" << r_ << ")";
  return os.str();
}

Complex to_complex(const QSqrt& x) { return {x.to_double(), 0.0}; }

}  // namespace symwave
