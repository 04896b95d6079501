#pragma once

#include "symwave/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symwave {

using IVec = std::vector<std::int64_t>;
using RVec = std::vector<Rational>;

/// Small dense square integer matrix, row-major.
class IMat {
public:
  IMat() = default;
  explicit IMat(std::size_t n) : n_(n), a_(n * n, 0) {}
  IMat(std::size_t n, std::vector<std::int64_t> entries);

  static IMat identity(std::size_t n);
  static IMat from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t dim() const { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<std::int64_t>& data() const { return a_; }

  IMat transpose() const;
  std::int64_t det() const;
  IMat adjugate() const;
  std::vector<std::vector<std::int64_t>> rows() const;
  std::string to_string() const;

  friend IMat operator*(const IMat& x, const IMat& y);
  friend bool operator==(const IMat& x, const IMat& y) { return x.n_ == y.n_ && x.a_ == y.a_; }
  friend bool operator!=(const IMat& x, const IMat& y) { return !(x == y); }
  friend bool operator<(const IMat& x, const IMat& y) { return x.a_ < y.a_; }

private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

IVec mul(const IMat& a, const IVec& v);
RVec mul(const IMat& a, const RVec& v);
IVec add(const IVec& a, const IVec& b);
IVec sub(const IVec& a, const IVec& b);
IVec neg(const IVec& a);
IVec zero_vec(std::size_t n);
bool is_zero(const IVec& v);
std::int64_t sup_norm(const IVec& v);

RVec to_rvec(const IVec& v);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
bool is_integral(const RVec& v);
/// Converts an integral rational vector; throws NonIntegral otherwise.
IVec to_ivec(const RVec& v);

std::string to_string(const IVec& v);
std::string to_string(const RVec& v);

}  // namespace symwave
