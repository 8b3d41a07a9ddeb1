#include "fewocc/bigint.hpp"

#include <cmath>

#include "fewocc/error.hpp"

namespace fewocc {

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw Error("expected a nonnegative integer, got empty string");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error("expected a nonnegative integer, got '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

double log2_of(const BigInt& v) {
  if (sgn(v) <= 0) throw Error("log2 of a nonpositive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return static_cast<double>(exp) + std::log2(mant);
}

}  // namespace fewocc
