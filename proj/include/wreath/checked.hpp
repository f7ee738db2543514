#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "wreath/errors.hpp"

namespace wreath {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
  return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

/// Least non-negative residue; `m` must be positive.
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int abs_int(Int a) { return a < 0 ? checked_neg(a) : a; }

inline Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) throw ArithmeticOverflow("integer does not fit in 64 bits");
  return z.get_si();
}

inline mpz_class to_mpz(Int v) { return mpz_class(static_cast<long>(v)); }

}  // namespace wreath
