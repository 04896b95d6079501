#pragma once

#include "symwave/errors.hpp"
#include "symwave/intmat.hpp"
#include "symwave/numeric.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace symwave {

/// Sparse trigonometric polynomial sum_k h_k e^{2 pi i (k, xi)}.
template <class C>
class TrigPoly {
public:
  using Coeff = C;
  using Traits = CoeffTraits<C>;
  using Terms = std::map<IVec, C>;

  TrigPoly() = default;
  explicit TrigPoly(std::size_t dim) : dim_(dim) {}

  static TrigPoly constant(std::size_t dim, const C& c) { return monomial(zero_vec(dim), c); }
  static TrigPoly monomial(const IVec& k, const C& c = Traits::one()) {
    TrigPoly t(k.size());
    t.add_term(k, c);
    return t;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coeff(const IVec& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  void add_term(const IVec& k, const C& c) {
    if (Traits::is_zero(c)) return;
    check_dim(k.size());
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  void set(const IVec& k, const C& c) {
    check_dim(k.size());
    if (Traits::is_zero(c)) terms_.erase(k);
    else terms_[k] = c;
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    adopt_dim(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    adopt_dim(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  TrigPoly operator-() const {
    TrigPoly out(dim_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
  }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out(a.dim_ ? a.dim_ : b.dim_);
    if (a.dim_ && b.dim_ && a.dim_ != b.dim_)
      throw Error(ErrorKind::BackendMismatch, "polynomial dimensions differ");
    for (const auto& [k, c] : a.terms_)
      for (const auto& [l, e] : b.terms_) out.add_term(add(k, l), c * e);
    return out;
  }
  TrigPoly& operator*=(const TrigPoly& o) { return *this = *this * o; }

  TrigPoly scaled(const C& s) const {
    TrigPoly out(dim_);
    for (const auto& [k, c] : terms_) out.add_term(k, c * s);
    return out;
  }
  TrigPoly shifted(const IVec& r) const {
    TrigPoly out(dim_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(add(k, r), c);
    return out;
  }
  /// conj(t)(xi): coefficient conj(h_k) at exponent -k.
  TrigPoly conjugate() const {
    TrigPoly out(dim_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(neg(k), Traits::conj(c));
    return out;
  }
  /// t(A^T xi): exponent k maps to A k.
  TrigPoly compose_linear(const IMat& A) const {
    TrigPoly out(dim_);
    for (const auto& [k, c] : terms_) out.add_term(mul(A, k), c);
    return out;
  }

  C value_at_zero() const {
    C s = Traits::zero();
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  Complex eval(const std::vector<double>& xi) const {
    Complex s{0.0, 0.0};
    for (const auto& [k, c] : terms_) {
      double ph = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) ph += static_cast<double>(k[i]) * xi[i];
      ph *= 2.0 * std::numbers::pi;
      s += Traits::to_complex(c) * Complex(std::cos(ph), std::sin(ph));
    }
    return s;
  }

  double max_abs() const {
    double out = 0.0;
    for (const auto& [k, c] : terms_) out = std::max(out, Traits::magnitude(c));
    return out;
  }

  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const TrigPoly& a, const TrigPoly& b) { return !(a == b); }

private:
  void check_dim(std::size_t d) {
    if (dim_ == 0) dim_ = d;
    else if (d != dim_) throw Error(ErrorKind::BackendMismatch, "exponent dimension mismatch");
  }
  void adopt_dim(const TrigPoly& o) {
    if (o.dim_) check_dim(o.dim_);
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

using ExactPoly = TrigPoly<QSqrt>;
using FloatPoly = TrigPoly<Complex>;

template <class C>
bool approx_equal(const TrigPoly<C>& a, const TrigPoly<C>& b, double tol) {
  if constexpr (CoeffTraits<C>::exact) {
    return a == b;
  } else {
    TrigPoly<C> d = a - b;
    return d.max_abs() <= tol;
  }
}

/// Maximum coefficient modulus of a - b.
template <class C>
double residual(const TrigPoly<C>& a, const TrigPoly<C>& b) {
  return (a - b).max_abs();
}

FloatPoly to_float(const ExactPoly& t);

/// True when every coefficient is rational.
bool is_rational_poly(const ExactPoly& t);

/// Coefficients as rationals (throws ExactPathUnavailable when a radical part is present).
std::map<IVec, Rational> rational_terms(const ExactPoly& t);

}  // namespace symwave
