#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "modforms/error.hpp"

namespace modforms {

using Integer = mpz_class;
/// Exact rational; every arithmetic result of mpq_class is already in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  require(den != 0, Errc::bad_input, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// "num/den" in lowest terms, or plain "num" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(10); }
inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  require(!s.empty(), Errc::bad_input, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) fail(Errc::bad_input, "malformed rational '" + s + "'");
  require(r.get_den() != 0, Errc::bad_input, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Integer ipow(long base, unsigned long e) { return ipow(Integer(base), e); }

/// base^e for possibly negative e.
inline Rational rpow(const Rational& base, long e) {
  if (e >= 0) {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return make_rational(n, d);
  }
  require(base != 0, Errc::bad_input, "zero to a negative power");
  Rational inv = 1 / base;
  return rpow(inv, -e);
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

/// Generalized binomial C(x, k) for rational x.
inline Rational binomial(const Rational& x, long k) {
  if (k < 0) return 0;
  Rational out = 1;
  for (long i = 0; i < k; ++i) out = out * (x - i) / (i + 1);
  return out;
}

inline bool is_perfect_square(const Integer& z) {
  return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

inline bool is_rational_square(const Rational& r) {
  return r >= 0 && is_perfect_square(r.get_num()) && is_perfect_square(r.get_den());
}

inline long to_long(const Integer& z) {
  require(z.fits_slong_p(), Errc::bad_input, "integer does not fit in 64 bits: " + to_string(z));
  return z.get_si();
}

}  // namespace modforms
