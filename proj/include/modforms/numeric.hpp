#pragma once

// Numerical layer: evaluation of q-expansions on the upper half-plane,
// L-values at integer points, periods, CM values and special-value identities.

#include <cmath>
#include <functional>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "modforms/arith.hpp"
#include "modforms/forms.hpp"
#include "modforms/numeric/real.hpp"

namespace modforms::num {

/// Result of a numerical identity check.
struct CheckReport {
  std::string check;
  std::string expected;
  std::string computed;
  Real residual;
  Real tolerance;
  bool pass = false;
};

inline CheckReport make_report(std::string check, std::string expected, const Real& computed, const Real& residual,
                               const Real& tolerance, long digits) {
  return {std::move(check), std::move(expected), computed.to_string(digits), residual, tolerance,
          abs(residual) < tolerance};
}

inline void require_upper(const Complex& tau) {
  require(tau.im().sign() > 0, Errc::not_in_upper_half_plane, "tau must have positive imaginary part");
}

// ---------------------------------------------------------------------------
// Truncation

/// Coefficient model used to bound the tail of a q-series:
/// |c_n| <= 10^log10_scale * n^degree, times exp(4 pi sqrt n) when `exponential`.
struct Growth {
  double degree = 0;
  double log10_scale = 0;
  bool exponential = false;
};

namespace detail {

inline double log10_abs(const Rational& x) {
  if (x == 0) return -1e300;
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_num_mpz_t());
  long f = 0;
  double d = mpz_get_d_2exp(&f, x.get_den_mpz_t());
  return std::log10(std::abs(m / d)) + static_cast<double>(e - f) * std::log10(2.0);
}

constexpr double kLog10E = 0.43429448190325182765;
constexpr double kPi = 3.14159265358979323846;

inline double growth_log10(const Growth& g, double n) {
  double v = g.log10_scale + g.degree * std::log10(std::max(n, 1.0));
  if (g.exponential) v += 4 * kPi * std::sqrt(std::max(n, 0.0)) * kLog10E;
  return v;
}

}  // namespace detail

/// Growth model from the weight and the first stored coefficients.
inline Growth growth_of(const QExp& f, double weight) {
  Growth g;
  g.degree = std::max(weight, 0.0) + 1;
  g.exponential = f.offset() < 0;
  double scale = 0;
  long off = static_cast<long>(std::floor(f.offset().get_d()));
  long count = std::min<long>(f.prec(), 64);
  for (long i = 0; i < count; ++i) {
    double n = static_cast<double>(off + i);
    if (n < 1) continue;
    Growth unit{g.degree, 0, g.exponential};
    scale = std::max(scale, detail::log10_abs(f[i]) - detail::growth_log10(unit, n));
  }
  g.log10_scale = scale + 1;  // one digit of slack
  return g;
}

/// Smallest M such that terms with exponent >= M sum to less than 10^-target
/// for |q| = exp(log_abs_q).
inline long terms_needed(const Growth& g, double log_abs_q, double target) {
  require(log_abs_q < 0, Errc::not_in_upper_half_plane, "|q| must be below 1");
  double lq = log_abs_q * detail::kLog10E;
  for (long n = 1; n < 50'000'000; ++n) {
    double here = detail::growth_log10(g, n) + n * lq;
    double next = detail::growth_log10(g, n + 1) + (n + 1) * lq;
    double step = next - here;
    if (step >= 0) continue;
    double tail = here - std::log10(1 - std::pow(10.0, step));
    if (tail < -target) return n;
  }
  fail(Errc::insufficient_precision, "series converges too slowly at this point");
}

// ---------------------------------------------------------------------------
// Series evaluation

/// q = exp(2 pi i tau) at the working precision.
inline Complex q_of(const Complex& tau, const EvalContext& ctx) {
  Real two_pi = pi(ctx.bits()) * 2L;
  return exp(Complex(-(two_pi * tau.im()), two_pi * tau.re()));
}

/// exp(2 pi i tau x) for rational x (the principal branch of q^x).
inline Complex q_power(const Complex& tau, const Rational& x, const EvalContext& ctx) {
  Real two_pi_x = pi(ctx.bits()) * 2L * x;
  return exp(Complex(-(two_pi_x * tau.im()), two_pi_x * tau.re()));
}

/// Sum of the first `terms` stored coefficients times q^(offset + i), by Horner's rule.
inline Complex eval_truncated(const QExp& f, const Complex& tau, long terms, const EvalContext& ctx) {
  require_upper(tau);
  require(terms <= f.prec(), Errc::insufficient_precision, "not enough stored coefficients");
  mpfr_prec_t bits = ctx.bits();
  Complex q = q_of(tau, ctx);
  Complex acc(bits);
  Real t1(bits), t2(bits);
  for (long i = terms - 1; i >= 0; --i) acc.horner_step(q, f[i], t1, t2);
  if (f.offset() != 0) acc = acc * q_power(tau, f.offset(), ctx);
  return acc;
}

/// Evaluate with the tail below 10^-(digits + guard + 5) under the growth model `g`.
inline Complex eval_series(const QExp& f, const Growth& g, const Complex& tau, const EvalContext& ctx) {
  require_upper(tau);
  double log_abs_q = -2 * detail::kPi * tau.im().to_double();
  long M = terms_needed(g, log_abs_q, static_cast<double>(ctx.digits + ctx.guard_digits + 5));
  long off = static_cast<long>(std::floor(f.offset().get_d()));
  long terms = std::max<long>(M - off, 1);
  if (terms > f.prec())
    fail(Errc::insufficient_precision, "evaluation needs " + std::to_string(terms) + " coefficients, " +
                                           std::to_string(f.prec()) + " stored");
  return eval_truncated(f, tau, terms, ctx);
}

inline Complex eval_form(const NamedForm& f, const Complex& tau, const EvalContext& ctx) {
  return eval_series(f.series, growth_of(f.series, f.desc.weight().get_d()), tau, ctx);
}

/// Produces a form with `prec` coefficients; lets evaluations size the series themselves.
using FormMaker = std::function<NamedForm(long)>;

/// Number of coefficients `make` must produce for evaluation at tau.
inline long coefficients_for(const FormMaker& make, const Complex& tau, const EvalContext& ctx) {
  require_upper(tau);
  NamedForm probe = make(64);
  Growth g = growth_of(probe.series, probe.desc.weight().get_d());
  double log_abs_q = -2 * detail::kPi * tau.im().to_double();
  long M = terms_needed(g, log_abs_q, static_cast<double>(ctx.digits + ctx.guard_digits + 5));
  long off = static_cast<long>(std::floor(probe.series.offset().get_d()));
  return std::max<long>(M - off, 1) + 2;
}

inline Complex eval_form(const FormMaker& make, const Complex& tau, const EvalContext& ctx) {
  NamedForm f = make(std::max(coefficients_for(make, tau, ctx), 2L));
  return eval_form(f, tau, ctx);
}

inline FormMaker eisenstein_maker(long k) {
  if (k == 2) return [](long p) { return eisenstein_E2(p); };
  return [k](long p) { return eisenstein_E(k, p); };
}

inline FormMaker delta_maker() {
  return [](long p) { return delta(std::max(p, 2L)); };
}

// ---------------------------------------------------------------------------
// Sparse products: eta and theta

/// Smallest exponent e with |q|^e below 10^-(digits + guard + 5) for |q| = exp(-2 pi y).
inline double exponent_cutoff(const Complex& tau, const EvalContext& ctx) {
  double y = tau.im().to_double();
  return static_cast<double>(ctx.digits + ctx.guard_digits + 8) / (2 * detail::kPi * y * detail::kLog10E);
}

/// eta(tau) = q^(1/24) sum_k (-1)^k q^(k(3k-1)/2), k over Z.
inline Complex eta_value(const Complex& tau, const EvalContext& ctx) {
  require_upper(tau);
  double cut = exponent_cutoff(tau, ctx);
  Complex sum(1, 0, ctx.bits());
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (static_cast<double>(e1) > cut) break;
    Complex t = q_power(tau, e1, ctx) + q_power(tau, e2, ctx);
    sum = (k % 2 == 0) ? sum + t : sum - t;
  }
  return q_power(tau, make_rational(1, 24), ctx) * sum;
}

/// theta(tau) = sum_{n in Z} q^(n^2).
inline Complex theta_value(const Complex& tau, const EvalContext& ctx) {
  require_upper(tau);
  double cut = exponent_cutoff(tau, ctx);
  Complex sum(0, 0, ctx.bits());
  for (long n = 1; static_cast<double>(n * n) <= cut + 1; ++n) sum += q_power(tau, n * n, ctx);
  return sum * 2L + 1L;
}

// ---------------------------------------------------------------------------
// Modularity residuals

inline Complex eisenstein_value(long k, const Complex& tau, const EvalContext& ctx) {
  return eval_form(eisenstein_maker(k), tau, ctx);
}

inline Complex delta_value(const Complex& tau, const EvalContext& ctx) { return eval_form(delta_maker(), tau, ctx); }

inline Complex neg_inverse(const Complex& tau) { return -(Complex(1, 0, tau.prec()) / tau); }

/// |E2(-1/tau) - tau^2 E2(tau) - 12 tau/(2 pi i)|.
inline Real quasi_modularity_residual(const Complex& tau, const EvalContext& ctx) {
  mpfr_prec_t bits = ctx.bits();
  Complex lhs = eisenstein_value(2, neg_inverse(tau), ctx);
  Complex two_pi_i(Real(bits), pi(bits) * 2L);
  Complex rhs = tau * tau * eisenstein_value(2, tau, ctx) + tau * 12L / two_pi_i;
  return abs(lhs - rhs);
}

/// E2*(tau) = E2(tau) - 3/(pi Im tau).
inline Complex e2_star(const Complex& tau, const EvalContext& ctx) {
  return eisenstein_value(2, tau, ctx) - Real(3L, ctx.bits()) / (pi(ctx.bits()) * tau.im());
}

/// |E2*(-1/tau) - tau^2 E2*(tau)|.
inline Real e2_star_residual(const Complex& tau, const EvalContext& ctx) {
  return abs(e2_star(neg_inverse(tau), ctx) - tau * tau * e2_star(tau, ctx));
}

/// |eta(-1/tau) - sqrt(tau/i) eta(tau)|.
inline Real eta_inversion_residual(const Complex& tau, const EvalContext& ctx) {
  Complex s = sqrt(tau / Complex::i(ctx.bits()));
  return abs(eta_value(neg_inverse(tau), ctx) - s * eta_value(tau, ctx));
}

/// |theta(-1/(4 tau)) - sqrt(2 tau/i) theta(tau)|.
inline Real theta_w4_residual(const Complex& tau, const EvalContext& ctx) {
  Complex w = neg_inverse(tau * 4L);
  Complex s = sqrt(tau * 2L / Complex::i(ctx.bits()));
  return abs(theta_value(w, ctx) - s * theta_value(tau, ctx));
}

/// |Delta(-1/tau) - tau^12 Delta(tau)|.
inline Real delta_modularity_residual(const Complex& tau, const EvalContext& ctx) {
  return abs(delta_value(neg_inverse(tau), ctx) - pow(tau, 12) * delta_value(tau, ctx));
}

/// |theta^2(g tau) - (-4/d)(c tau + d) theta^2(tau)| for g = (a b; c d) in Gamma_0(4).
inline Real theta_sq_twist_residual(long a, long b, long c, long d, const Complex& tau, const EvalContext& ctx) {
  require(a * d - b * c == 1, Errc::bad_matrix, "matrix must have determinant 1");
  require(c % 4 == 0, Errc::bad_matrix, "matrix must lie in Gamma_0(4)");
  require_upper(tau);
  Complex num = tau * a + b;
  Complex den = tau * c + d;
  Complex gt = num / den;
  Complex lhs = pow(theta_value(gt, ctx), 2);
  Complex rhs = den * pow(theta_value(tau, ctx), 2) * arith::kronecker(-4, d);
  return abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Real theta functions

/// T(a) = sum_{n in Z} exp(-a pi n^2).
inline Real theta_real(const Real& a, const EvalContext& ctx) {
  require(a.sign() > 0, Errc::bad_input, "a must be positive");
  Real pa = pi(ctx.bits()) * a;
  Real sum = ctx.real(0);
  Real eps = ctx.tol(ctx.digits + ctx.guard_digits + 5);
  for (long n = 1;; ++n) {
    Real t = exp(-(pa * (n * n)));
    sum += t;
    if (t < eps) break;
  }
  return sum * 2L + 1L;
}

/// T_2(a) = sum_{n in Z} 1/cosh(pi n a).
inline Real cosh_sum(const Real& a, const EvalContext& ctx) {
  require(a.sign() > 0, Errc::bad_input, "a must be positive");
  Real pa = pi(ctx.bits()) * a;
  Real sum = ctx.real(0);
  Real eps = ctx.tol(ctx.digits + ctx.guard_digits + 5);
  Real one = ctx.real(1);
  for (long n = 1;; ++n) {
    Real t = one / cosh(pa * n);
    sum += t;
    if (t < eps) break;
  }
  return sum * 2L + 1L;
}

/// |T(1/a) - sqrt(a) T(a)|.
inline Real theta_fe_residual(const Real& a, const EvalContext& ctx) {
  return abs(theta_real(ctx.real(1) / a, ctx) - sqrt(a) * theta_real(a, ctx));
}

/// |T_2(1/a) - a T_2(a)|.
inline Real cosh_fe_residual(const Real& a, const EvalContext& ctx) {
  return abs(cosh_sum(ctx.real(1) / a, ctx) - a * cosh_sum(a, ctx));
}

/// |T_2(a) - T(a)^2|.
inline Real cosh_theta_residual(const Real& a, const EvalContext& ctx) {
  Real t = theta_real(a, ctx);
  return abs(cosh_sum(a, ctx) - t * t);
}

// ---------------------------------------------------------------------------
// L-values at integer points

/// G_m(x) = Gamma(m, x) / x^m = (m-1)! e^-x sum_{j<m} x^j/j! / x^m for integer m >= 1.
inline Real incomplete_gamma_ratio(long m, const Real& x) {
  require(m >= 1, Errc::bad_range, "order must be >= 1");
  Real term(1L, x.prec()), sum(1L, x.prec());
  for (long j = 1; j < m; ++j) {
    term = term * x / j;
    sum += term;
  }
  Real fact(1L, x.prec());
  for (long j = 2; j < m; ++j) fact = fact * j;
  return fact * exp(-x) * sum / pow(x, m);
}

/// Coefficients needed for L-series at level N with the given weight.
inline long lambda_terms(const QExp& a, long k, long N, const EvalContext& ctx) {
  Growth g = growth_of(a, static_cast<double>(k));
  return terms_needed(g, -2 * detail::kPi / std::sqrt(static_cast<double>(N)),
                      static_cast<double>(ctx.digits + ctx.guard_digits + 5));
}

/// Lambda(F, s) = N^(s/2) (2 pi)^-s Gamma(s) L(F, s), with the Mellin integral split at t = c / sqrt N:
///   sum a(n) [c^s G_s(c x_n) + eps i^k c^(s-k) G_(k-s)(x_n / c)], x_n = 2 pi n / sqrt N.
/// The value is independent of c exactly when the functional equation holds; at c = 1 it is symmetric by
/// construction, so functional-equation checks should use another split.
inline Real lambda_series_split(const QExp& a, long k, long N, int eps, long s, const Real& c, const EvalContext& ctx) {
  require(k >= 2 && k % 2 == 0, Errc::bad_weight, "L-values are implemented for even weight");
  require(s >= 1 && s <= k - 1, Errc::bad_range, "s must lie in [1, k-1]");
  require(eps == 1 || eps == -1, Errc::bad_input, "epsilon must be +1 or -1");
  require(a.offset() == 0 || a.offset() == 1, Errc::bad_input, "expected an integral q-expansion");
  double cd = c.to_double();
  require(cd >= 0.5 && cd <= 2, Errc::bad_range, "split must lie in [1/2, 2]");
  long M = static_cast<long>(std::ceil(lambda_terms(a, k, N, ctx) * std::max(cd, 1 / cd))) + 1;
  require(a.abs_prec() > M, Errc::insufficient_precision,
          "L-value needs coefficients up to q^" + std::to_string(M));
  mpfr_prec_t bits = ctx.bits();
  const Real& cc = c;
  Real step = pi(bits) * 2L / sqrt(Real(N, bits));
  long sign = eps * (((k / 2) % 2 == 0) ? 1 : -1);  // eps i^k
  Real left = pow(cc, s), right = pow(cc, s - k) * sign;
  Real sum(bits);
  for (long n = 1; n <= M; ++n) {
    Rational an = a.coefficient(n);
    if (an == 0) continue;
    Real x = step * n;
    sum += (left * incomplete_gamma_ratio(s, x * cc) + right * incomplete_gamma_ratio(k - s, x / cc)) * an;
  }
  return sum;
}

/// Lambda(F, s) with the integral split at the fixed point of the Fricke involution.
inline Real lambda_series(const QExp& a, long k, long N, int eps, long s, const EvalContext& ctx) {
  return lambda_series_split(a, k, N, eps, s, Real(1L, ctx.bits()), ctx);
}

/// max over s in [1, k-1] and splits c in {4/5, 5/4, 3/5} of |Lambda(s; c) - Lambda(k - s; 1)|.
/// Zero up to rounding exactly when F satisfies the functional equation with sign eps.
inline Real functional_equation_residual(const QExp& a, long k, long N, int eps, const EvalContext& ctx) {
  Real worst(ctx.bits());
  for (long s = 1; s <= k - 1; ++s) {
    Real ref = lambda_series(a, k, N, eps, k - s, ctx);
    for (const char* c : {"0.8", "1.25", "0.6"})
      worst = max(worst, abs(lambda_series_split(a, k, N, eps, s, ctx.real(std::string(c)), ctx) - ref));
  }
  return worst;
}

inline Real lambda_level1(const NamedForm& f, long k, long s, const EvalContext& ctx) {
  require(f.desc.cuspidal && f.desc.level == 1, Errc::bad_input, "expected a level-1 cusp form");
  require(f.desc.weight2 == 2 * k, Errc::bad_weight, "weight does not match the form");
  return lambda_series(f.series, k, 1, 1, s, ctx);
}

inline Real lambda_levelN(const NamedForm& f, long k, long N, int eps, long s, const EvalContext& ctx) {
  require(f.desc.cuspidal, Errc::bad_input, "expected a cusp form");
  require(f.desc.weight2 == 2 * k, Errc::bad_weight, "weight does not match the form");
  return lambda_series(f.series, k, N, eps, s, ctx);
}

/// Delta with enough coefficients for L-values at this precision.
inline NamedForm delta_for_lvalues(const EvalContext& ctx) {
  long M = lambda_terms(delta(64).series, 12, 1, ctx);
  return delta(2 * M + 2);  // room for any split in [1/2, 2]
}

inline Real lambda_delta(long s, const EvalContext& ctx) {
  return lambda_level1(delta_for_lvalues(ctx), 12, s, ctx);
}

/// L(F, k/2) = (1 + (-1)^(k/2)) sum a(n)/n^(k/2) e^(-2 pi n) P_(k/2)(2 pi n),
/// P_m(X) = sum_{j<m} X^j/j!. Exactly zero when k = 2 (mod 4).
inline Real central_value(const NamedForm& f, long k, const EvalContext& ctx) {
  require(k % 2 == 0 && k >= 2, Errc::bad_weight, "central value needs even k");
  mpfr_prec_t bits = ctx.bits();
  if (k % 4 == 2) return Real(bits);
  long m = k / 2;
  long M = lambda_terms(f.series, k, 1, ctx);
  require(f.series.abs_prec() > M, Errc::insufficient_precision, "central value needs more coefficients");
  Real two_pi = pi(bits) * 2L;
  Real sum(bits);
  for (long n = 1; n <= M; ++n) {
    Rational c = f.series.coefficient(n);
    if (c == 0) continue;
    Real x = two_pi * n;
    Real term(1L, bits), p(1L, bits);
    for (long j = 1; j < m; ++j) {
      term = term * x / j;
      p += term;
    }
    sum += p * exp(-x) / pow(Real(n, bits), m) * c;
  }
  return sum * 2L;
}

struct ManinReport {
  std::vector<Real> lambda;  ///< Lambda(Delta, s) at index s = 1..11 (index 0 unused)
  Real omega_minus, omega_plus;
  std::vector<Rational> odd_expected, even_expected;
  std::vector<Real> odd_ratios, even_ratios;
  Real max_deviation;
  bool pass = false;
};

inline const std::vector<Rational>& manin_odd_expected() {
  static const std::vector<Rational> v{make_rational(1620, 691), 1, make_rational(9, 14),
                                       make_rational(9, 14),     1, make_rational(1620, 691)};
  return v;
}

inline const std::vector<Rational>& manin_even_expected() {
  static const std::vector<Rational> v{1, make_rational(25, 48), make_rational(5, 12), make_rational(25, 48), 1};
  return v;
}

/// Lambda(Delta, j) for j = 1..11 divided by omega_- = Lambda(Delta, 3) (odd j) and
/// omega_+ = Lambda(Delta, 2) (even j). Raises RatioMismatch beyond `tolerance`
/// unless `throw_on_mismatch` is false.
inline ManinReport manin_ratios(const EvalContext& ctx, double tolerance = 1e-9, bool throw_on_mismatch = true) {
  NamedForm d = delta_for_lvalues(ctx);
  ManinReport r;
  r.lambda.emplace_back(ctx.bits());
  for (long s = 1; s <= 11; ++s) r.lambda.push_back(lambda_level1(d, 12, s, ctx));
  r.omega_minus = r.lambda[3];
  r.omega_plus = r.lambda[2];
  r.odd_expected = manin_odd_expected();
  r.even_expected = manin_even_expected();
  r.max_deviation = ctx.real(0);
  for (long s = 1; s <= 11; s += 2) {
    Real ratio = r.lambda[s] / r.omega_minus;
    r.max_deviation = max(r.max_deviation, abs(ratio - r.odd_expected[(s - 1) / 2]));
    r.odd_ratios.push_back(ratio);
  }
  for (long s = 2; s <= 10; s += 2) {
    Real ratio = r.lambda[s] / r.omega_plus;
    r.max_deviation = max(r.max_deviation, abs(ratio - r.even_expected[(s - 2) / 2]));
    r.even_ratios.push_back(ratio);
  }
  r.pass = r.max_deviation.to_double() < tolerance;
  if (!r.pass && throw_on_mismatch)
    fail(Errc::ratio_mismatch, "Manin ratio deviates by " + r.max_deviation.to_string(6));
  return r;
}

/// <Delta, Delta> = (225/2048) Lambda(Delta, 2) Lambda(Delta, 3), with dmu = dx dy / y^2.
inline Real petersson_delta(const EvalContext& ctx) {
  NamedForm d = delta_for_lvalues(ctx);
  return lambda_level1(d, 12, 2, ctx) * lambda_level1(d, 12, 3, ctx) * make_rational(225, 2048);
}

/// P(F; X) = -sum_{j=0}^{k-2} (-i)^(k-1-j) C(k-2, j) Lambda(F, k-1-j) X^j, coefficients by j.
inline std::vector<Complex> period_polynomial(const NamedForm& f, long k, const EvalContext& ctx) {
  std::vector<Complex> p;
  mpfr_prec_t bits = ctx.bits();
  for (long j = 0; j <= k - 2; ++j) {
    Real lam = lambda_level1(f, k, k - 1 - j, ctx);
    Complex c = i_pow(-(k - 1 - j), bits) * (lam * Rational(binomial(k - 2, j)));
    // (-i)^m = i^(-m)
    p.push_back(-c);
  }
  return p;
}

inline Complex eval_poly(const std::vector<Complex>& p, const Complex& x) {
  Complex acc(x.prec());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// |P|_{2-k} S + P| at x, where (P|_{2-k} S)(X) = X^(k-2) P(-1/X).
inline Real period_relation_residual(const std::vector<Complex>& p, const Complex& x) {
  long k = static_cast<long>(p.size()) + 1;
  Complex sp = pow(x, k - 2) * eval_poly(p, neg_inverse(x));
  return abs(sp + eval_poly(p, x));
}

// ---------------------------------------------------------------------------
// Lambert series and special values

/// F(k) = sum_{n>=1} n^k / (e^(2 pi n) - 1).
inline Real lambert_value(long k, const EvalContext& ctx) {
  require(k >= 0, Errc::bad_k, "k must be >= 0");
  mpfr_prec_t bits = ctx.bits();
  Real two_pi = pi(bits) * 2L;
  Real sum(bits);
  Real eps = ctx.tol(ctx.digits + ctx.guard_digits + 5);
  for (long n = 1;; ++n) {
    Real t = pow(Real(n, bits), k) / expm1(two_pi * n);
    sum += t;
    if (static_cast<double>(n) > static_cast<double>(k) / (2 * detail::kPi) + 1 && t < eps) break;
  }
  return sum;
}

/// Gamma(1/4), computed by MPFR at the working precision.
inline Real gamma_quarter(mpfr_prec_t bits) { return gamma(Real(make_rational(1, 4), bits)); }

/// F(1), F(3), F(5), F(9) against their closed forms.
inline std::vector<CheckReport> lambert_identity_report(const EvalContext& ctx, long tol_exp = 30) {
  mpfr_prec_t bits = ctx.bits();
  Real p = pi(bits);
  Real tol = ctx.tol(tol_exp);
  std::vector<CheckReport> out;
  auto add = [&](long k, const std::string& label, const Real& expected) {
    Real v = lambert_value(k, ctx);
    out.push_back(make_report("lambert F(" + std::to_string(k) + ")", label + " = " + expected.to_string(ctx.digits),
                              v, v - expected, tol, ctx.digits));
  };
  add(1, "1/24 - 1/(8 pi)", Real(make_rational(1, 24), bits) - ctx.real(1) / (p * 8L));
  Real g = gamma_quarter(bits);
  add(3, "Gamma(1/4)^8/(80 (2 pi)^6) - 1/240", pow(g, 8) / (pow(p * 2L, 6) * 80L) - make_rational(1, 240));
  add(5, "1/504", ctx.real(make_rational(1, 504)));
  add(9, "1/264", ctx.real(make_rational(1, 264)));
  return out;
}

/// sum_{gcd(m, N) = 1} m / (e^(2 pi m / sqrt N) - 1) - phi(N)/24, for squarefree N with mu(N) = 1.
inline Real fricke_sum_check(long N, const EvalContext& ctx) {
  require(N > 1 && arith::moebius(N) == 1, Errc::bad_n, "N must satisfy mu(N) = 1 and N > 1");
  mpfr_prec_t bits = ctx.bits();
  Real step = pi(bits) * 2L / sqrt(Real(N, bits));
  Real sum(bits);
  Real eps = ctx.tol(ctx.digits + ctx.guard_digits + 5);
  for (long m = 1;; ++m) {
    if (std::gcd(m, N) != 1) continue;
    Real t = Real(m, bits) / expm1(step * m);
    sum += t;
    if (t < eps) break;
  }
  return sum - make_rational(arith::euler_phi(N), 24);
}

/// sum_{n>=1} sigma_-3(n) q^n.
inline Complex sigma_minus3_series(const Complex& tau, const EvalContext& ctx) {
  FormMaker make = [](long p) {
    std::vector<Rational> c(static_cast<std::size_t>(p), 0);
    for (long n = 1; n < p; ++n) c[n] = Rational(arith::sigma(3, n)) / Rational(ipow(n, 3));
    return NamedForm{FormDesc{0, 1, 0, false, false}, QExp(std::move(c)), "sigma_-3"};
  };
  return eval_form(make, tau, ctx);
}

/// F_4*(tau) = -(pi^3/180)(tau/i)^3 + sum sigma_-3(n) q^n.
inline Complex f4_star(const Complex& tau, const EvalContext& ctx) {
  Real p3 = pow(pi(ctx.bits()), 3);
  Complex t = tau / Complex::i(ctx.bits());
  return sigma_minus3_series(tau, ctx) - pow(t, 3) * (p3 / 180L);
}

/// F_4**(tau) = F_4*(tau) - (pi^3/72)(tau/i) + zeta(3)/2.
inline Complex f4_star_star(const Complex& tau, const EvalContext& ctx) {
  mpfr_prec_t bits = ctx.bits();
  Complex t = tau / Complex::i(bits);
  return f4_star(tau, ctx) - t * (pow(pi(bits), 3) / 72L) + zeta(3, bits) / 2L;
}

/// |F_4**(-1/tau) - tau^-2 F_4**(tau)|.
inline Real f4star_residual(const Complex& tau, const EvalContext& ctx) {
  require_upper(tau);
  return abs(f4_star_star(neg_inverse(tau), ctx) - f4_star_star(tau, ctx) / (tau * tau));
}

/// |tau^2 F_4*(-1/tau) - F_4*(tau) - zeta(3)/2 (1 - tau^2) + (pi^3/36)(tau/i)|.
inline Real f4star_first_residual(const Complex& tau, const EvalContext& ctx) {
  require_upper(tau);
  mpfr_prec_t bits = ctx.bits();
  Complex t = tau / Complex::i(bits);
  Complex one(1, 0, bits);
  Complex rhs = f4_star(tau, ctx) + (one - tau * tau) * (zeta(3, bits) / 2L) - t * (pow(pi(bits), 3) / 36L);
  return abs(tau * tau * f4_star(neg_inverse(tau), ctx) - rhs);
}

// ---------------------------------------------------------------------------
// CM values of j

/// Move tau into the standard fundamental domain for SL2(Z).
inline Complex reduce_to_fundamental_domain(Complex tau) {
  require_upper(tau);
  for (int iter = 0; iter < 1000; ++iter) {
    Real shift(tau.prec());
    mpfr_round(shift.get(), tau.re().get());
    tau.re() = tau.re() - shift;
    if (tau.norm().to_double() < 1 - 1e-30) tau = neg_inverse(tau);
    else return tau;
  }
  return tau;
}

/// j(tau) = E4(tau)^3 / Delta(tau), evaluated at the reduced point.
inline Complex j_value(const Complex& tau, const EvalContext& ctx) {
  Complex t = reduce_to_fundamental_domain(tau);
  return pow(eisenstein_value(4, t, ctx), 3) / delta_value(t, ctx);
}

/// tau = (a + b sqrt(-c)) / d.
struct CMPoint {
  long a = 0, b = 1, c = 1, d = 1;

  Complex tau(const EvalContext& ctx) const {
    mpfr_prec_t bits = ctx.bits();
    return {Real(make_rational(a, d), bits), sqrt(Real(c, bits)) * make_rational(b, d)};
  }
  std::string to_string() const {
    std::string s = b == 1 ? "i" : std::to_string(b) + "i";
    if (c != 1) s += "*sqrt(" + std::to_string(c) + ")";
    if (a != 0) s = std::to_string(a) + "+" + s;
    if (d != 1) s = "(" + s + ")/" + std::to_string(d);
    return s;
  }
};

/// Parses "i", "2i", "i*sqrt(2)", "(1+i*sqrt(163))/2", "(1+3i*sqrt(3))/2".
inline CMPoint parse_cm_point(const std::string& text) {
  static const std::regex re(
      R"(^\s*\(?\s*(?:(-?\d+)\s*\+\s*)?(\d*)\s*i\s*(?:\*?\s*sqrt\(\s*(\d+)\s*\))?\s*\)?\s*(?:/\s*(\d+))?\s*$)");
  std::smatch m;
  require(std::regex_match(text, m, re), Errc::bad_input, "cannot parse CM point '" + text + "'");
  CMPoint p;
  p.a = m[1].matched ? std::stol(m[1]) : 0;
  p.b = (m[2].matched && !m[2].str().empty()) ? std::stol(m[2]) : 1;
  p.c = m[3].matched ? std::stol(m[3]) : 1;
  p.d = m[4].matched ? std::stol(m[4]) : 1;
  require(p.b > 0 && p.c > 0 && p.d > 0, Errc::bad_input, "CM point must lie in the upper half-plane");
  return p;
}

inline Complex cm_j(const CMPoint& p, const EvalContext& ctx) { return j_value(p.tau(ctx), ctx); }

struct CMEntry {
  CMPoint point;
  std::string label;
  std::function<Real(const EvalContext&)> value;
};

/// The table of rational and quadratic CM values of j.
inline std::vector<CMEntry> cm_table() {
  auto integer = [](const char* v) { return [s = std::string(v)](const EvalContext& c) { return c.real(s); }; };
  std::vector<CMEntry> t{
      {{1, 1, 3, 2}, "0", integer("0")},
      {{0, 1, 1, 1}, "1728", integer("1728")},
      {{1, 1, 7, 2}, "-3375", integer("-3375")},
      {{0, 1, 2, 1}, "8000", integer("8000")},
      {{1, 1, 11, 2}, "-32768", integer("-32768")},
      {{1, 1, 163, 2}, "-640320^3", integer("-262537412640768000")},
      {{0, 1, 3, 1}, "54000", integer("54000")},
      {{0, 2, 1, 1}, "287496", integer("287496")},
      {{1, 3, 3, 2}, "-12288000", integer("-12288000")},
      {{1, 1, 15, 2},
       "(-191025 - 85995 sqrt(5))/2",
       [](const EvalContext& c) { return (c.real(-191025) - sqrt(c.real(5)) * 85995L) / 2L; }},
  };
  return t;
}

/// j at each CM point against the table, with relative error (absolute for j = 0).
inline std::vector<CheckReport> cm_j_report(const EvalContext& ctx, long tol_exp = 0) {
  if (tol_exp == 0) tol_exp = ctx.digits - 8;
  std::vector<CheckReport> out;
  for (const auto& e : cm_table()) {
    Complex j = cm_j(e.point, ctx);
    Real expected = e.value(ctx);
    Real err = abs(j - Complex(expected));
    if (!expected.is_zero()) err = err / abs(expected);
    out.push_back(make_report("j(" + e.point.to_string() + ")", e.label, j.re(), err, ctx.tol(tol_exp), ctx.digits));
  }
  return out;
}

struct AlmostIntegerReport {
  Real epsilon;    ///< 640320 - (e^(pi sqrt 163) - 744)^(1/3)
  Real predicted;  ///< 65628 e^(-(5/3) pi sqrt 163)
  Real ratio;
  bool epsilon_in_range = false;  ///< 0 < epsilon < 10^-24
  bool ratio_close = false;       ///< |ratio - 1| < 10^-3
};

inline AlmostIntegerReport almost_integer_report(const EvalContext& ctx) {
  require(ctx.digits >= 40, Errc::insufficient_precision, "the almost-integer check needs >= 40 digits");
  mpfr_prec_t bits = ctx.bits();
  Real x = pi(bits) * sqrt(Real(163L, bits));
  AlmostIntegerReport r;
  r.epsilon = Real(640320L, bits) - cbrt(exp(x) - 744L);
  r.predicted = exp(-(x * 5L) / 3L) * 65628L;
  r.ratio = r.epsilon / r.predicted;
  r.epsilon_in_range = r.epsilon.sign() > 0 && r.epsilon < ctx.tol(24);
  r.ratio_close = abs(r.ratio - 1L) < ctx.tol(3);
  return r;
}

// ---------------------------------------------------------------------------
// Fricke involution

/// (F|_k W_N)(tau) = N^(-k/2) tau^(-k) F(-1/(N tau)).
inline Complex fricke_image(const FormMaker& make, long k, long N, const Complex& tau, const EvalContext& ctx) {
  Complex w = neg_inverse(tau * N);
  Complex v = eval_form(make, w, ctx);
  Real scale = pow(sqrt(Real(N, ctx.bits())), -k);
  return v * scale / pow(tau, k);
}

/// The sign eps with F|_k W_N = eps F, from the ratio at tau0 = 1.2 i / sqrt N.
inline int fricke_sign(const FormMaker& make, long N, const EvalContext& ctx) {
  NamedForm probe = make(8);
  long k = probe.desc.k();
  mpfr_prec_t bits = ctx.bits();
  Complex tau0(Real(bits), Real(make_rational(6, 5), bits) / sqrt(Real(N, bits)));
  Complex ratio = fricke_image(make, k, N, tau0, ctx) / eval_form(make, tau0, ctx);
  Real tol = ctx.tol(ctx.digits / 2);
  if (abs(ratio - Real(1L, bits)) < tol) return 1;
  if (abs(ratio + 1L) < tol) return -1;
  fail(Errc::inconclusive, "Fricke ratio " + ratio.to_string(12) + " is not +-1");
}

inline int fricke_sign(const NamedForm& f, long N, const EvalContext& ctx) {
  return fricke_sign([&f](long p) { return NamedForm{f.desc, f.series.truncate(std::min(p, f.series.prec())), f.name}; },
                     N, ctx);
}

/// G(tau) = sum_{d | N} mu(d) d^(k/2) F(d tau) satisfies G|_k W_N = mu(N) G for squarefree N;
/// checked at three sample points to relative tolerance 10^-(digits - 10).
inline bool fricke_eta_identity_check(long N, long k, const FormMaker& make, const EvalContext& ctx) {
  require(N >= 1 && arith::moebius(N) != 0, Errc::bad_n, "N must be squarefree");
  mpfr_prec_t bits = ctx.bits();
  auto G = [&](const Complex& tau) {
    Complex acc(bits);
    for (long d : arith::divisors(N)) {
      long mu = arith::moebius(d);
      if (mu == 0) continue;
      Complex v = eval_form(make, tau * d, ctx) * pow(sqrt(Real(d, bits)), k);
      acc = mu > 0 ? acc + v : acc - v;
    }
    return acc;
  };
  Real rootN = sqrt(Real(N, bits));
  const std::pair<const char*, const char*> pts[] = {{"0.13", "1.1"}, {"-0.21", "0.8"}, {"0.05", "1.3"}};
  long mu = arith::moebius(N);
  for (const auto& [x, y] : pts) {
    Complex tau = Complex(ctx.real(x), ctx.real(y)) / rootN;
    Complex w = neg_inverse(tau * N);
    Complex lhs = G(w) * pow(rootN, -k) / pow(tau, k);
    Complex rhs = G(tau) * mu;
    Real scale = max(abs(rhs), ctx.real(1) * ctx.tol(ctx.digits));
    if (!(abs(lhs - rhs) / scale < ctx.tol(ctx.digits - 10))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gaussian sum

struct GaussianSumReport {
  Real difference;  ///< sum_{n>=1} e^(-(n/10)^2) - (5 sqrt(pi) - 1/2)
  Real predicted;   ///< 10 sqrt(pi) e^(-100 pi^2), the leading Poisson term
  bool below_bound = false;  ///< |difference| < 10^-400
  bool nonzero = false;
};

/// Needs about 450 digits: the difference is near 10^-427.
inline GaussianSumReport gaussian_sum_report(const EvalContext& ctx) {
  require(ctx.digits >= 450, Errc::insufficient_precision, "the Gaussian sum check needs >= 450 digits");
  mpfr_prec_t bits = ctx.bits();
  Real sum(bits);
  Real eps = ctx.tol(ctx.digits + ctx.guard_digits + 5);
  for (long n = 1;; ++n) {
    Real t = exp(-Real(make_rational(n * n, 100), bits));
    sum += t;
    if (t < eps) break;
  }
  GaussianSumReport r;
  Real sp = sqrt(pi(bits));
  r.difference = sum - (sp * 5L - make_rational(1, 2));
  r.predicted = sp * 10L * exp(-(pi(bits) * pi(bits) * 100L));
  r.below_bound = abs(r.difference) < ctx.tol(400);
  r.nonzero = !r.difference.is_zero() && r.difference.exponent10() > -(ctx.digits + ctx.guard_digits);
  return r;
}

}  // namespace modforms::num
