#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace symwave {

using Rational = mpq_class;
using Complex = std::complex<double>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational rational_from_int(std::int64_t v);

/// Element a + b*sqrt(r) of Q(sqrt r) with r square-free.
///
/// r == 1 marks a plain rational (b is then zero). Mixing two different
/// irrational radicands throws BackendMismatch.
class QSqrt {
public:
  QSqrt() = default;
  QSqrt(int v) : a_(v) {}
  QSqrt(long v) : a_(v) {}
  QSqrt(Rational a) : a_(std::move(a)) { a_.canonicalize(); }
  QSqrt(Rational a, Rational b, std::int64_t radicand);

  /// Exact square root of a positive integer.
  static QSqrt sqrt_of(std::int64_t m);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return r_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QSqrt operator-() const;
  QSqrt& operator+=(const QSqrt& o);
  QSqrt& operator-=(const QSqrt& o);
  QSqrt& operator*=(const QSqrt& o);
  QSqrt& operator/=(const QSqrt& o);

  friend QSqrt operator+(QSqrt x, const QSqrt& y) { return x += y; }
  friend QSqrt operator-(QSqrt x, const QSqrt& y) { return x -= y; }
  friend QSqrt operator*(QSqrt x, const QSqrt& y) { return x *= y; }
  friend QSqrt operator/(QSqrt x, const QSqrt& y) { return x /= y; }
  friend bool operator==(const QSqrt& x, const QSqrt& y);
  friend bool operator!=(const QSqrt& x, const QSqrt& y) { return !(x == y); }

  double to_double() const;
  std::string to_string() const;

private:
  void normalize();
  std::int64_t common_radicand(const QSqrt& o) const;

  Rational a_{0};
  Rational b_{0};
  std::int64_t r_ = 1;
};

/// Arithmetic traits shared by generic polynomial code.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<QSqrt> {
  static constexpr bool exact = true;
  static QSqrt zero() { return QSqrt(); }
  static QSqrt one() { return QSqrt(1); }
  static QSqrt from_rational(const Rational& q) { return QSqrt(q); }
  static QSqrt from_int(std::int64_t v) { return QSqrt(rational_from_int(v)); }
  static QSqrt sqrt_int(std::int64_t m) { return QSqrt::sqrt_of(m); }
  static QSqrt conj(const QSqrt& x) { return x; }
  static bool is_zero(const QSqrt& x) { return x.is_zero(); }
  static Complex to_complex(const QSqrt& x) { return {x.to_double(), 0.0}; }
  static double magnitude(const QSqrt& x) { return std::abs(x.to_double()); }
  static bool near(const QSqrt& x, const QSqrt& y, double) { return x == y; }
};

/// Pruning threshold for float coefficients (terms at or below it are dropped).
double float_prune_tolerance();
void set_float_prune_tolerance(double tol);

template <>
struct CoeffTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static Complex from_int(std::int64_t v) { return {static_cast<double>(v), 0.0}; }
  static Complex sqrt_int(std::int64_t m) { return {std::sqrt(static_cast<double>(m)), 0.0}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static bool is_zero(const Complex& x) { return std::abs(x) <= float_prune_tolerance(); }
  static Complex to_complex(const Complex& x) { return x; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static bool near(const Complex& x, const Complex& y, double tol) { return std::abs(x - y) <= tol; }
};

Complex to_complex(const QSqrt& x);

}  // namespace symwave
