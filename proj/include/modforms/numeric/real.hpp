#pragma once

// MPFR-backed real and complex numbers with per-value precision.
// Binary operations round to the larger of the operand precisions.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "modforms/error.hpp"
#include "modforms/rational.hpp"

namespace modforms::num {

/// Bits needed for `digits` significant decimal digits.
inline mpfr_prec_t bits_for_digits(long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 4;
}

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, mpfr_prec_t bits) : Real(bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const Rational& x, mpfr_prec_t bits) : Real(bits) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  Real(const Integer& x, mpfr_prec_t bits) : Real(bits) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(double x, mpfr_prec_t bits) : Real(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const std::string& s, mpfr_prec_t bits) : Real(bits) {
    require(mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) == 0, Errc::bad_input, "not a decimal number: " + s);
  }

  Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// floor(log10 |x|), or a large negative number for zero.
  long exponent10() const {
    if (is_zero()) return -1000000000L;
    Real a(prec());
    mpfr_abs(a.v_, v_, MPFR_RNDN);
    mpfr_log10(a.v_, a.v_, MPFR_RNDN);
    mpfr_floor(a.v_, a.v_);
    return mpfr_get_si(a.v_, MPFR_RNDN);
  }

  /// Scientific notation with `digits` significant digits.
  std::string to_string(long digits) const {
    digits = std::max(1L, digits);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", static_cast<int>(digits - 1), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) { return a + (-b); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Rational& b) {
    Real r(a.prec());
    mpfr_mul_q(r.v_, a.v_, b.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, const Rational& b) {
    Real r(a.prec());
    mpfr_add_q(r.v_, a.v_, b.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Rational& b) {
    Real r(a.prec());
    mpfr_sub_q(r.v_, a.v_, b.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

#define MODFORMS_REAL_UNARY(name, fn)      \
  inline Real name(const Real& x) {        \
    Real r(x.prec());                      \
    fn(r.get(), x.get(), MPFR_RNDN);       \
    return r;                              \
  }
MODFORMS_REAL_UNARY(exp, mpfr_exp)
MODFORMS_REAL_UNARY(log, mpfr_log)
MODFORMS_REAL_UNARY(sqrt, mpfr_sqrt)
MODFORMS_REAL_UNARY(cbrt, mpfr_cbrt)
MODFORMS_REAL_UNARY(sin, mpfr_sin)
MODFORMS_REAL_UNARY(cos, mpfr_cos)
MODFORMS_REAL_UNARY(cosh, mpfr_cosh)
MODFORMS_REAL_UNARY(abs, mpfr_abs)
MODFORMS_REAL_UNARY(gamma, mpfr_gamma)
MODFORMS_REAL_UNARY(expm1, mpfr_expm1)
#undef MODFORMS_REAL_UNARY

inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.prec(), x.prec()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, long e) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, const Real& e) {
  Real r(std::max(x.prec(), e.prec()));
  mpfr_pow(r.get(), x.get(), e.get(), MPFR_RNDN);
  return r;
}

inline Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

/// zeta(n) for an integer n >= 2.
inline Real zeta(unsigned long n, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
  return r;
}

/// 10^e at the given precision.
inline Real pow10(long e, mpfr_prec_t bits) { return pow(Real(10L, bits), e); }

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

class Complex {
 public:
  explicit Complex(mpfr_prec_t bits = 128) : re_(bits), im_(bits) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(const Real& re) : re_(re), im_(re.prec()) {}
  Complex(long re, long im, mpfr_prec_t bits) : re_(re, bits), im_(im, bits) {}

  static Complex i(mpfr_prec_t bits) { return Complex(0, 1, bits); }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

  Real norm() const { return re_ * re_ + im_ * im_; }
  Real abs() const {
    Real r(prec());
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
    return r;
  }
  Real arg() const { return atan2(im_, re_); }
  Complex conj() const { return {re_, -im_}; }

  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }
  friend Complex operator+(const Complex& a, const Real& b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, const Real& b) { return {a.re_ - b, a.im_}; }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return a * b; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator*(const Complex& a, long b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator*(const Complex& a, const Rational& b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator+(const Complex& a, long b) { return {a.re_ + b, a.im_}; }
  friend Complex operator+(const Complex& a, const Rational& b) { return {a.re_ + b, a.im_}; }
  friend Complex operator-(const Complex& a, const Rational& b) { return {a.re_ - b, a.im_}; }
  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }

  /// In-place acc = acc * q + c, the Horner step, with scratch storage.
  void horner_step(const Complex& q, const Rational& c, Real& t1, Real& t2) {
    mpfr_mul(t1.get(), re_.get(), q.re_.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), im_.get(), q.im_.get(), MPFR_RNDN);
    mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), re_.get(), q.im_.get(), MPFR_RNDN);
    mpfr_fma(im_.get(), im_.get(), q.re_.get(), t2.get(), MPFR_RNDN);
    mpfr_swap(re_.get(), t1.get());
    if (c != 0) mpfr_add_q(re_.get(), re_.get(), c.get_mpq_t(), MPFR_RNDN);
  }

  std::string to_string(long digits) const {
    std::string s = re_.to_string(digits);
    std::string t = im_.to_string(digits);
    if (!t.empty() && t[0] == '-') return s + " - " + t.substr(1) + "i";
    return s + " + " + t + "i";
  }

 private:
  Real re_, im_;
};

inline Real abs(const Complex& z) { return z.abs(); }

inline Complex exp(const Complex& z) {
  Real m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

/// Principal logarithm, arg in (-pi, pi].
inline Complex log(const Complex& z) { return {log(z.abs()), z.arg()}; }

/// Principal square root.
inline Complex sqrt(const Complex& z) {
  if (z.re().is_zero() && z.im().is_zero()) return z;
  Real r = z.abs();
  Real a = sqrt((r + z.re()) / 2L);
  Real b = sqrt((r - z.re()) / 2L);
  if (z.im().sign() < 0) b = -b;
  return {a, b};
}

inline Complex pow(const Complex& z, long e) {
  if (e < 0) return Complex(1, 0, z.prec()) / pow(z, -e);
  Complex result(1, 0, z.prec()), base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// Principal power z^s = exp(s log z).
inline Complex pow(const Complex& z, const Real& s) { return exp(log(z) * s); }

/// i^n for an integer n.
inline Complex i_pow(long n, mpfr_prec_t bits) {
  switch (((n % 4) + 4) % 4) {
    case 0: return Complex(1, 0, bits);
    case 1: return Complex(0, 1, bits);
    case 2: return Complex(-1, 0, bits);
    default: return Complex(0, -1, bits);
  }
}

/// Working precision for evaluations: `digits` requested plus `guard_digits` kept internally.
struct EvalContext {
  long digits = 38;
  long guard_digits = 12;

  mpfr_prec_t bits() const { return bits_for_digits(digits + guard_digits); }
  Real real(long x) const { return Real(x, bits()); }
  Real real(const Rational& x) const { return Real(x, bits()); }
  Real real(const std::string& s) const { return Real(s, bits()); }
  Complex complex(const std::string& re, const std::string& im) const { return {real(re), real(im)}; }
  /// 10^-e at working precision.
  Real tol(long e) const { return pow10(-e, bits()); }
  EvalContext with_digits(long d) const { return {d, guard_digits}; }
};

inline void validate(const EvalContext& ctx) {
  require(ctx.digits >= 15, Errc::bad_input, "precision_digits must be >= 15");
  require(ctx.guard_digits >= 0, Errc::bad_input, "guard digits must be >= 0");
}

}  // namespace modforms::num
