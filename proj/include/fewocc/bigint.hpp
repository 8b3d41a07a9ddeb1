#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fewocc {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// 2^e as an exact integer.
inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

/// 2^e - 1, the number of clauses of K⁻ on e variables.
inline BigInt pow2_minus_one(unsigned long e) { return pow2(e) - 1; }

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

/// Parses a nonnegative decimal integer; throws fewocc::Error on junk.
BigInt parse_bigint(std::string_view text);

/// log2(v) for v > 0, accurate to double precision even for huge v.
double log2_of(const BigInt& v);

}  // namespace fewocc
