#pragma once

#include "symwave/numeric.hpp"

#include <cstdint>
#include <vector>

namespace symwave {

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<std::int64_t>& cyclotomic(std::int64_t N);

/// Remainder of sum_j v_j x^j modulo Phi_N (degree < phi(N)).
std::vector<Rational> reduce_mod_cyclotomic(const std::vector<Rational>& v, std::int64_t N);

/// True when sum_j v_j zeta_N^j = 0 for a primitive N-th root of unity.
bool vanishes_at_primitive_root(const std::vector<Rational>& v, std::int64_t N);

}  // namespace symwave
