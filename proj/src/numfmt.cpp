#include "fewocc/numfmt.hpp"

#include <cmath>
#include <cstdio>

#include "fewocc/error.hpp"

namespace fewocc {

namespace {

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// q * 10^e for signed e.
BigRational scale10(const BigRational& q, long e) {
  BigRational r = q;
  if (e >= 0) {
    r *= BigRational(pow10(static_cast<unsigned long>(e)));
  } else {
    r /= BigRational(pow10(static_cast<unsigned long>(-e)));
  }
  r.canonicalize();
  return r;
}

// Rounds a positive rational to the nearest integer, ties to even.
BigInt round_half_even(const BigRational& q) {
  BigInt floor_v;
  mpz_fdiv_q(floor_v.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  const BigRational frac = q - BigRational(floor_v);
  const int c = cmp(frac, BigRational(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(floor_v.get_mpz_t()))) floor_v += 1;
  return floor_v;
}

}  // namespace

std::string format_sig6(const BigRational& value) {
  if (sgn(value) == 0) return "0";
  if (sgn(value) < 0) return "-" + format_sig6(BigRational(-value));

  // Decimal exponent e with 10^e <= value < 10^(e+1).
  const long bits = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2)) -
                   static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  long e = static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398120));
  while (cmp(scale10(value, -e), BigRational(1)) < 0) --e;
  while (cmp(scale10(value, -e), BigRational(10)) >= 0) ++e;

  BigInt digits = round_half_even(scale10(value, 5 - e));
  if (digits == pow10(6)) {
    digits = pow10(5);
    ++e;
  }
  std::string ds = digits.get_str(10);  // exactly 6 digits

  auto strip = [](std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };

  if (e < -4 || e >= 6) {
    std::string mant = strip(ds.substr(0, 1) + "." + ds.substr(1));
    char buf[32];
    std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
    return mant + buf;
  }
  if (e >= 0) {
    const auto int_len = static_cast<std::size_t>(e + 1);
    return strip(ds.substr(0, int_len) + "." + ds.substr(int_len));
  }
  return strip("0." + std::string(static_cast<std::size_t>(-e - 1), '0') + ds);
}

std::string format_sig6(double value) {
  if (!std::isfinite(value)) throw Error("cannot format a non-finite value");
  BigRational q;
  mpq_set_d(q.get_mpq_t(), value);
  return format_sig6(q);
}

BigInt lll_lower_bound(unsigned k) {
  if (k == 0) throw Error("k must be at least 1");
  const BigRational numerator(pow2(k));
  unsigned terms = k + 16;
  while (true) {
    // low = sum_{i<=terms} 1/i!, and the tail is below 2/(terms+1)!.
    BigRational low(0);
    BigInt fact(1);
    for (unsigned i = 0; i <= terms; ++i) {
      if (i > 0) fact *= i;
      low += BigRational(1, fact);
    }
    fact *= terms + 1;
    BigRational high = low + BigRational(2, fact);
    low.canonicalize();
    high.canonicalize();

    auto floor_of = [&](const BigRational& e_approx) {
      BigRational q = numerator / (e_approx * k);
      BigInt f;
      mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      return f;
    };
    BigInt a = floor_of(high);
    BigInt b = floor_of(low);
    if (a == b) return a;
    terms *= 2;
  }
}

}  // namespace fewocc
