#pragma once

// Named modular forms and exact identities between their q-expansions.
//
// Unless stated otherwise, `prec` is the number of coefficients starting at q^0,
// so the series is known below q^prec.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modforms/arith.hpp"
#include "modforms/dims.hpp"
#include "modforms/matrix.hpp"
#include "modforms/qexp.hpp"

namespace modforms {

struct FormDesc {
  long weight2 = 0;     ///< twice the weight
  long level = 1;
  long character = 0;   ///< Kronecker label D of (D/.), 0 for the trivial character
  bool cuspidal = false;
  bool modular = true;  ///< false for quasi-modular series such as E2

  Rational weight() const { return make_rational(weight2, 2); }
  bool integral_weight() const { return weight2 % 2 == 0; }
  long k() const {
    require(integral_weight(), Errc::bad_weight, "form has half-integral weight");
    return weight2 / 2;
  }
};

struct NamedForm {
  FormDesc desc;
  QExp series;
  std::string name;
};

namespace detail {

inline std::vector<Integer> sigma_coeffs(unsigned k, long prec) {
  return arith::sigma_table(k, std::max(prec - 1, 0L));
}

inline QExp eisenstein_series(long k, long prec) {
  Rational c = -2 * Rational(k) / arith::bernoulli(static_cast<unsigned>(k));
  auto s = sigma_coeffs(static_cast<unsigned>(k - 1), prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec));
  if (prec > 0) v[0] = 1;
  for (long n = 1; n < prec; ++n) v[n] = c * Rational(s[n]);
  return QExp(std::move(v));
}

inline void require_prec(long prec, long min = 1) {
  require(prec >= min, Errc::bad_input, "precision must be at least " + std::to_string(min));
}

}  // namespace detail

/// Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k even >= 4.
inline NamedForm eisenstein_E(long k, long prec) {
  require(k >= 4 && k % 2 == 0, Errc::bad_weight,
          "E_k needs even k >= 4, got " + std::to_string(k));
  detail::require_prec(prec);
  return {FormDesc{2 * k, 1, 0, false, true}, detail::eisenstein_series(k, prec),
          "E" + std::to_string(k)};
}

/// The quasi-modular E_2 = 1 - 24 sum sigma(n) q^n.
inline NamedForm eisenstein_E2(long prec) {
  detail::require_prec(prec);
  return {FormDesc{4, 1, 0, false, false}, detail::eisenstein_series(2, prec), "E2"};
}

enum class DeltaMethod { eta24, e4e6, recursion };

inline DeltaMethod parse_delta_method(const std::string& s) {
  if (s == "eta24") return DeltaMethod::eta24;
  if (s == "e4e6") return DeltaMethod::e4e6;
  if (s == "recursion") return DeltaMethod::recursion;
  fail(Errc::bad_input, "unknown Delta method '" + s + "'");
}

/// Delta = q prod (1 - q^n)^24, by any of three independent routes.
inline NamedForm delta(long prec, DeltaMethod method = DeltaMethod::eta24) {
  detail::require_prec(prec, 2);
  QExp s;
  switch (method) {
    case DeltaMethod::eta24:
      s = eta_quotient({{1, 24}}, prec - 1).with_offset(0);
      break;
    case DeltaMethod::e4e6: {
      QExp e4 = detail::eisenstein_series(4, prec), e6 = detail::eisenstein_series(6, prec);
      s = make_rational(1, 1728) * (pow(e4, 3) - pow(e6, 2));
      break;
    }
    case DeltaMethod::recursion: {
      // D(Delta) = E2 Delta gives (n-1) tau(n) = -24 sum_{m<n} sigma(m) tau(n-m).
      auto s1 = detail::sigma_coeffs(1, prec);
      std::vector<Integer> t(static_cast<std::size_t>(prec), 0);
      t[1] = 1;
      for (long n = 2; n < prec; ++n) {
        Integer acc = 0;
        for (long m = 1; m < n; ++m) mpz_addmul(acc.get_mpz_t(), s1[m].get_mpz_t(), t[n - m].get_mpz_t());
        t[n] = -24 * acc / (n - 1);
      }
      s = QExp(std::vector<Rational>(t.begin(), t.end()));
      break;
    }
  }
  return {FormDesc{24, 1, 0, true, true}, s, "Delta"};
}

/// j = E4^3 / Delta as a Laurent series with `prec` coefficients from q^-1.
inline NamedForm jfunction(long prec) {
  detail::require_prec(prec, 2);
  QExp d = delta(prec + 1).series;
  QExp e4 = detail::eisenstein_series(4, prec + 1);
  QExp j = div(pow(e4, 3), d);
  return {FormDesc{0, 1, 0, false, true}, j.truncate(prec), "j"};
}

/// theta = sum_{n in Z} q^(n^2).
inline QExp theta_series(long prec) {
  std::vector<Rational> v(static_cast<std::size_t>(prec), 0);
  for (long n = 0; n * n < prec; ++n) v[n * n] = (n == 0) ? 1 : 2;
  return QExp(std::move(v));
}

inline NamedForm theta(long prec) {
  detail::require_prec(prec);
  return {FormDesc{1, 4, 0, false, true}, theta_series(prec), "theta"};
}

/// theta^m, of weight m/2 on Gamma_0(4); character (-4/.) when m = 2 mod 4.
inline NamedForm theta_power(long m, long prec) {
  require(m >= 1, Errc::bad_input, "theta_power needs m >= 1");
  detail::require_prec(prec);
  long chi = (m % 4 == 2) ? -4 : 0;
  return {FormDesc{m, 4, chi, false, true}, pow(theta_series(prec), static_cast<unsigned long>(m)),
          "theta^" + std::to_string(m)};
}

inline std::string monomial_name(long a, long b) {
  std::string out;
  auto part = [&](const char* base, long e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += base;
    if (e > 1) out += "^" + std::to_string(e);
  };
  part("E4", a);
  part("E6", b);
  return out.empty() ? "1" : out;
}

/// Exponent pairs (a, b) with 4a + 6b = k, a descending.
inline std::vector<std::pair<long, long>> e4e6_exponents(long k) {
  std::vector<std::pair<long, long>> out;
  for (long a = k / 4; a >= 0; --a) {
    long rest = k - 4 * a;
    if (rest % 6 == 0) out.emplace_back(a, rest / 6);
  }
  return out;
}

/// Monomials E4^a E6^b spanning M_k(SL2(Z)), a descending.
inline std::vector<NamedForm> mk_basis(long k, long prec) {
  require(k >= 0 && k % 2 == 0, Errc::bad_weight, "mk_basis needs even k >= 0");
  detail::require_prec(prec);
  auto ex = e4e6_exponents(k);
  std::vector<NamedForm> out;
  if (ex.empty()) return out;
  QExp e4 = detail::eisenstein_series(4, prec), e6 = detail::eisenstein_series(6, prec);
  for (auto [a, b] : ex) {
    QExp s = mul(pow(e4, static_cast<unsigned long>(a)), pow(e6, static_cast<unsigned long>(b)));
    out.push_back({FormDesc{2 * k, 1, 0, false, true}, s.truncate(prec), monomial_name(a, b)});
  }
  return out;
}

/// Delta times the basis of M_{k-12}.
inline std::vector<NamedForm> sk_basis(long k, long prec) {
  require(k >= 0 && k % 2 == 0, Errc::bad_weight, "sk_basis needs even k >= 0");
  detail::require_prec(prec);
  std::vector<NamedForm> out;
  if (k < 12) return out;
  QExp d = delta(std::max(prec, 2L)).series;
  for (auto& f : mk_basis(k - 12, prec)) {
    std::string name = f.name == "1" ? "Delta" : "Delta*" + f.name;
    out.push_back({FormDesc{2 * k, 1, 0, true, true}, mul(d, f.series).truncate(prec), name});
  }
  return out;
}

/// Coordinates of `f` in terms of `basis`, using every coefficient all of them know.
inline std::vector<Rational> to_basis(const QExp& f, const std::vector<QExp>& basis) {
  require(!basis.empty(), Errc::bad_input, "empty basis");
  Rational lo = f.offset(), hi = f.abs_prec();
  for (const auto& b : basis) {
    require(is_integer(b.offset() - f.offset()), Errc::incompatible_grid, "basis on a different grid");
    lo = std::min(lo, b.offset());
    hi = std::min(hi, b.abs_prec());
  }
  long rows = std::max(0L, to_long(Rational(hi - lo).get_num()));
  long n = static_cast<long>(basis.size());
  require(rows >= n, Errc::insufficient_precision, "fewer coefficients than basis elements");
  RatMatrix A(rows, n);
  std::vector<Rational> rhs(static_cast<std::size_t>(rows));
  for (long i = 0; i < rows; ++i) {
    Rational e = lo + i;
    for (long j = 0; j < n; ++j) A(i, j) = basis[j].coefficient(e);
    rhs[i] = f.coefficient(e);
  }
  return solve(A, rhs);
}

inline std::vector<Rational> to_basis(const NamedForm& f, const std::vector<NamedForm>& basis) {
  for (const auto& b : basis)
    require(b.desc.weight2 == f.desc.weight2 && b.desc.level == f.desc.level, Errc::bad_input,
            "basis and form differ in weight or level");
  std::vector<QExp> bs;
  for (const auto& b : basis) bs.push_back(b.series);
  return to_basis(f.series, bs);
}

/// A polynomial in E4 and E6: (a, b) -> coefficient of E4^a E6^b.
using E4E6Poly = std::map<std::pair<long, long>, Rational>;

inline E4E6Poly operator*(const E4E6Poly& x, const E4E6Poly& y) {
  E4E6Poly out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) out[{mx.first + my.first, mx.second + my.second}] += cx * cy;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline QExp evaluate(const E4E6Poly& p, long prec) {
  QExp e4 = detail::eisenstein_series(4, prec), e6 = detail::eisenstein_series(6, prec);
  QExp out = QExp::zero(prec);
  for (const auto& [m, c] : p)
    out = out + scale(c, mul(pow(e4, static_cast<unsigned long>(m.first)),
                             pow(e6, static_cast<unsigned long>(m.second))));
  return out;
}

inline std::string to_string(const E4E6Poly& p) {
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational mag = abs(c);
    std::string mono = monomial_name(m.first, m.second);
    if (mono == "1") out += modforms::to_string(mag);
    else if (mag == 1) out += mono;
    else out += modforms::to_string(mag) + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

/// zeta(2m) / pi^(2m) = (-1)^(m+1) B_{2m} 2^(2m-1) / (2m)!.
inline Rational zeta_even_over_pi(long m) {
  Rational b = arith::bernoulli(static_cast<unsigned>(2 * m));
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * m));
  Rational out = b * Rational(ipow(2, static_cast<unsigned long>(2 * m - 1))) / Rational(fact);
  return (m % 2 == 1) ? out : Rational(-out);
}

/// E_k as a polynomial in E4, E6 via the recursion for the lattice sums
/// G_{2m} = 2 zeta(2m) E_{2m}, run with the powers of pi divided out.
inline E4E6Poly eisenstein_poly_in_e4e6(long k) {
  require(k >= 4 && k % 2 == 0, Errc::bad_weight, "needs even k >= 4");
  long K = k / 2;
  std::vector<E4E6Poly> g(static_cast<std::size_t>(K + 1));  // g[m] = G_{2m} / pi^{2m}
  g[2][{1, 0}] = 2 * zeta_even_over_pi(2);
  if (K >= 3) g[3][{0, 1}] = 2 * zeta_even_over_pi(3);
  for (long m = 4; m <= K; ++m) {
    E4E6Poly acc;
    for (long j = 2; j <= m - 2; ++j) {
      Rational w = 3 * Rational((2 * j - 1) * (2 * (m - j) - 1));
      for (const auto& [mono, c] : g[j] * g[m - j]) acc[mono] += w * c;
    }
    Rational lhs = Rational((m - 3) * (2 * m - 1) * (2 * m + 1));
    for (auto& [mono, c] : acc) c /= lhs;
    g[m] = std::move(acc);
  }
  E4E6Poly out = g[K];
  Rational norm = 2 * zeta_even_over_pi(K);
  for (auto& [mono, c] : out) c /= norm;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// sigma_7(n) = sigma_3(n) + 120 sum_{m<n} sigma_3(m) sigma_3(n-m) for all n <= nmax.
inline bool sigma7_identity_check(long nmax) {
  require(nmax >= 1, Errc::bad_input, "nmax must be >= 1");
  auto s3 = arith::sigma_table(3, nmax), s7 = arith::sigma_table(7, nmax);
  for (long n = 1; n <= nmax; ++n) {
    Integer acc = 0;
    for (long m = 1; m < n; ++m) mpz_addmul(acc.get_mpz_t(), s3[m].get_mpz_t(), s3[n - m].get_mpz_t());
    if (s7[n] != s3[n] + 120 * acc) return false;
  }
  return true;
}

/// D(f) - (k/12) E2 f for a level-1 modular form of weight k.
inline NamedForm serre_derivative(const NamedForm& f) {
  require(f.desc.modular, Errc::bad_input, "Serre derivative needs a modular (not quasi-modular) form");
  require(f.desc.level == 1, Errc::bad_input, "Serre derivative is implemented for level 1");
  Rational k = f.desc.weight();
  QExp e2 = detail::eisenstein_series(2, std::max(f.series.prec(), 1L));
  QExp out = qderive(f.series) - scale(k / 12, mul(e2, f.series));
  FormDesc d = f.desc;
  d.weight2 += 4;
  return {d, out, "serre(" + f.name + ")"};
}

/// Bookkeeping for a bracket: weights add plus `extra_weight2` (twice the added weight).
inline FormDesc bracket_desc(const NamedForm& f1, const NamedForm& f2, long extra_weight2) {
  require(f1.desc.level == f2.desc.level, Errc::bad_input, "brackets need forms of the same level");
  long c1 = f1.desc.character, c2 = f2.desc.character;
  FormDesc d;
  d.weight2 = f1.desc.weight2 + f2.desc.weight2 + extra_weight2;
  d.level = f1.desc.level;
  if (c1 == 0) d.character = c2;
  else if (c2 == 0) d.character = c1;
  else d.character = (c1 == c2) ? 0 : c1 * c2;
  d.cuspidal = true;
  d.modular = f1.desc.modular && f2.desc.modular;
  return d;
}

/// First Rankin-Cohen bracket k2 f2 D(f1) - k1 f1 D(f2).
inline NamedForm rc_bracket1(const NamedForm& f1, const NamedForm& f2) {
  Rational k1 = f1.desc.weight(), k2 = f2.desc.weight();
  QExp out = scale(k2, mul(f2.series, qderive(f1.series))) - scale(k1, mul(f1.series, qderive(f2.series)));
  return {bracket_desc(f1, f2, 4), out, "[" + f1.name + "," + f2.name + "]_1"};
}

/// Coefficients (a, b, c) of a D^2(f1) f2 + b D(f1) D(f2) + c f1 D^2(f2).
inline std::array<Rational, 3> rc_bracket2_coefficients(const Rational& k1, const Rational& k2) {
  return {binomial(k2 + 1, 2), -(k1 + 1) * (k2 + 1), binomial(k1 + 1, 2)};
}

/// Second Rankin-Cohen bracket, normalized so the D^2(f1) f2 coefficient is C(k2+1, 2).
inline NamedForm rc_bracket2(const NamedForm& f1, const NamedForm& f2) {
  auto [a, b, c] = rc_bracket2_coefficients(f1.desc.weight(), f2.desc.weight());
  QExp d1 = qderive(f1.series), d2 = qderive(f2.series);
  QExp out = scale(a, mul(qderive(d1), f2.series)) + scale(b, mul(d1, d2)) +
             scale(c, mul(f1.series, qderive(d2)));
  return {bracket_desc(f1, f2, 8), out, "[" + f1.name + "," + f2.name + "]_2"};
}

/// Recovers (b, c) with a = C(k2+1, 2) by asking that a D^2(f1) f2 + b D(f1) D(f2)
/// + c f1 D^2(f2) lie in S_{k1+k2+4}(SL2(Z)); f1, f2 of level 1.
inline std::array<Rational, 3> rc_bracket2_solve_coefficients(const NamedForm& f1, const NamedForm& f2) {
  require(f1.desc.level == 1 && f2.desc.level == 1, Errc::bad_input, "level-1 forms expected");
  long k = f1.desc.k() + f2.desc.k() + 4;
  Rational a = binomial(f2.desc.weight() + 1, 2);
  QExp d1 = qderive(f1.series), d2 = qderive(f2.series);
  QExp ta = scale(a, mul(qderive(d1), f2.series));
  QExp tb = mul(d1, d2), tc = mul(f1.series, qderive(d2));
  long prec = std::min({ta.prec(), tb.prec(), tc.prec()});
  auto cusp = sk_basis(k, prec);
  // ta + b tb + c tc = sum x_i s_i  <=>  b tb + c tc - sum x_i s_i = -ta.
  std::vector<QExp> cols{tb.truncate(prec), tc.truncate(prec)};
  for (auto& s : cusp) cols.push_back(scale(-1, s.series));
  auto x = to_basis(scale(-1, ta.truncate(prec)), cols);
  return {a, x[0], x[1]};
}

/// tau(n) = (n/12)(5 sigma_3(n) + 7 sigma_5(n)) + 70 sum_{m<n} (2n - 5m) sigma_3(m) sigma_5(n - m).
inline Rational tau_sigma_formula_components(long n) {
  require(n >= 1, Errc::bad_n, "n must be >= 1");
  auto s3 = arith::sigma_table(3, n), s5 = arith::sigma_table(5, n);
  Integer acc = 0;
  for (long m = 1; m < n; ++m) acc += (2 * n - 5 * m) * s3[m] * s5[n - m];
  return make_rational(n, 12) * Rational(5 * s3[n] + 7 * s5[n]) + Rational(70 * acc);
}

/// E_{12r-k+2} / Delta^r with r = dim M_k, as `prec` coefficients from q^-r.
inline QExp siegel_coeffs(long k, long prec) {
  require(k >= 4 && k % 2 == 0, Errc::bad_weight, "Siegel coefficients need even k >= 4");
  long r = dims::dim_mk_level1(k);
  require(prec >= r + 1, Errc::insufficient_precision, "need at least r + 1 coefficients");
  long w = 12 * r - k + 2;
  QExp e = (w == 0) ? QExp::one(prec) : detail::eisenstein_series(w, prec);
  QExp d = delta(prec + r).series;
  return mul(e, inv(pow(d, static_cast<unsigned long>(r))));
}

/// Checks sum_{0<=n<=r} c_{-n} a(n) = 0, c_{-r} = 1 and c_0 != 0 for f in M_k(SL2(Z)).
inline bool siegel_relation_check(const NamedForm& f) {
  require(f.desc.level == 1 && f.desc.modular, Errc::bad_input, "level-1 modular form expected");
  long k = f.desc.k();
  long r = dims::dim_mk_level1(k);
  QExp c = siegel_coeffs(k, r + 1);
  if (c.coefficient(-r) != 1 || c.coefficient(0) == 0) return false;
  Rational acc = 0;
  for (long n = 0; n <= r; ++n) acc += c.coefficient(-n) * f.series.coefficient(n);
  return acc == 0;
}

/// N E2(N tau) - E2(tau), a weight-2 form on Gamma_0(N) with constant term N - 1.
inline NamedForm weight2_level_eisenstein(long N, long prec) {
  require(N >= 2, Errc::bad_n, "needs N >= 2");
  detail::require_prec(prec);
  QExp e2 = detail::eisenstein_series(2, prec);
  QExp e2N = substitute_qm(detail::eisenstein_series(2, (prec + N - 1) / N), N).truncate(prec);
  return {FormDesc{4, N, 0, false, true}, scale(N, e2N) - e2,
          std::to_string(N) + "*E2(" + std::to_string(N) + "tau)-E2"};
}

enum class Gamma04 { W1, F1, F2 };

/// Eisenstein series on Gamma_0(4) with character (-4/.):
/// W1 = 1 + 4 sum sigma_0^(-4)(n) q^n, F1 = 1 - 4 sum sigma_2^(-4)(n) q^n, F2 = sum sigma_2^(-4,*)(n) q^n.
inline NamedForm gamma04_eisenstein(Gamma04 which, long prec) {
  detail::require_prec(prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec), 0);
  for (long n = 1; n < prec; ++n) {
    switch (which) {
      case Gamma04::W1: v[n] = 4 * Rational(arith::sigma_twisted(-4, 0, n)); break;
      case Gamma04::F1: v[n] = -4 * Rational(arith::sigma_twisted(-4, 2, n)); break;
      case Gamma04::F2: v[n] = Rational(arith::sigma_twisted_star(-4, 2, n)); break;
    }
  }
  if (which != Gamma04::F2) v[0] = 1;
  long w2 = which == Gamma04::W1 ? 2 : 6;
  const char* name = which == Gamma04::W1 ? "W1" : (which == Gamma04::F1 ? "F1" : "F2");
  return {FormDesc{w2, 4, -4, which == Gamma04::F2, true}, QExp(std::move(v)), name};
}

/// Closed forms for r_k(n), the number of x in Z^k with |x|^2 = n, k in {2, 4, 6, 8}.
inline Integer rk_formula(long k, long n) {
  require(n >= 0, Errc::bad_n, "n must be >= 0");
  require(k == 2 || k == 4 || k == 6 || k == 8, Errc::bad_k, "r_k formulas exist for k in {2,4,6,8}");
  if (n == 0) return 1;
  using arith::sigma;
  switch (k) {
    case 2: return 4 * arith::sigma_twisted(-4, 0, n);
    case 4: return 8 * (sigma(1, n) - 4 * sigma(1, make_rational(n, 4)));
    case 6: return -4 * arith::sigma_twisted(-4, 2, n) + 16 * arith::sigma_twisted_star(-4, 2, n);
    default:
      return 16 * (sigma(3, n) - 2 * sigma(3, make_rational(n, 2)) + 16 * sigma(3, make_rational(n, 4)));
  }
}

/// r_k(n) by enumerating lattice points one coordinate at a time.
inline Integer rk_bruteforce(long k, long n) {
  require(k >= 1 && n >= 0, Errc::bad_input, "needs k >= 1 and n >= 0");
  // count(j, m): points of Z^j with norm m; recurse on the last coordinate.
  std::vector<std::vector<std::optional<Integer>>> memo(
      static_cast<std::size_t>(k + 1), std::vector<std::optional<Integer>>(static_cast<std::size_t>(n + 1)));
  auto count = [&](auto&& self, long j, long m) -> Integer {
    if (j == 0) return m == 0 ? 1 : 0;
    auto& slot = memo[j][m];
    if (slot) return *slot;
    Integer total = 0;
    for (long x = -n; x <= n; ++x)
      if (x * x <= m) total += self(self, j - 1, m - x * x);
    slot = total;
    return total;
  };
  return count(count, k, n);
}

/// Solves theta^4 = alpha (2E2(2tau) - E2) + beta (4E2(4tau) - E2), then checks
/// that the r_4 formula reproduces theta^4 and that theta^6 = F1 + 16 F2.
struct Theta4Decomposition {
  Rational alpha, beta;
  bool r4_formula_holds;
  bool theta6_holds;
};

inline Theta4Decomposition theta4_decomposition(long prec) {
  require(prec >= 4, Errc::bad_input, "theta4_decomposition needs prec >= 4");
  QExp t4 = theta_power(4, prec).series;
  QExp A = weight2_level_eisenstein(2, prec).series, B = weight2_level_eisenstein(4, prec).series;
  auto x = to_basis(t4, {A, B});
  Theta4Decomposition out{x[0], x[1], true, true};
  for (long n = 0; n < prec; ++n)
    if (t4.coefficient(n) != Rational(rk_formula(4, n))) out.r4_formula_holds = false;
  QExp t6 = theta_power(6, prec).series;
  QExp rhs = gamma04_eisenstein(Gamma04::F1, prec).series + scale(16, gamma04_eisenstein(Gamma04::F2, prec).series);
  out.theta6_holds = (t6 == rhs);
  return out;
}

inline bool theta4_decomposition_check(long prec) {
  auto d = theta4_decomposition(prec);
  return d.r4_formula_holds && d.theta6_holds;
}

/// A q-series times the root of unity exp(pi i * phase), phase taken mod 2.
struct PhasedSeries {
  Rational phase;
  QExp series;
};

inline Rational reduce_phase(Rational p) {
  Rational two = 2;
  mpz_class fl;
  Rational t = p / two;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return p - two * Rational(fl);
}

inline PhasedSeries operator*(const PhasedSeries& x, const PhasedSeries& y) {
  return {reduce_phase(x.phase + y.phase), mul(x.series, y.series)};
}

inline PhasedSeries operator/(const PhasedSeries& x, const PhasedSeries& y) {
  return {reduce_phase(x.phase - y.phase), div(x.series, y.series)};
}

/// f(tau + 1/2): the coefficient of q^(n + off) gains exp(pi i (n + off)).
inline PhasedSeries shift_half(const QExp& f) {
  std::vector<Rational> v = f.coeffs();
  for (std::size_t n = 0; n < v.size(); ++n)
    if (n % 2 == 1) v[n] = -v[n];
  return {reduce_phase(f.offset()), QExp(std::move(v), f.offset())};
}

/// f(tau + 1): the coefficient of q^(n + off) gains exp(2 pi i off).
inline PhasedSeries shift_one(const QExp& f) { return {reduce_phase(2 * f.offset()), f}; }

/// g(m tau) for a phased g.
inline PhasedSeries substitute_qm(const PhasedSeries& g, long m) {
  return {g.phase, substitute_qm(g.series, m)};
}

/// theta = eta^5(2tau) / (eta^2(tau) eta^2(4tau)) exactly, and
/// theta = eta^2(tau + 1/2) / eta(2tau + 1) with the roots of unity tracked exactly.
/// `exponents` = (r2, r1, r4) of the second quotient, (5, -2, -2) for the true identity.
inline bool eta_theta_relation_check(long prec, std::array<long, 3> exponents = {5, -2, -2}) {
  require(prec >= 8, Errc::bad_input, "eta_theta_relation_check needs prec >= 8");
  QExp th = theta_series(prec);
  auto [r2, r1, r4] = exponents;
  QExp quotient = eta_quotient({{2, r2}, {1, r1}, {4, r4}}, prec);
  if (!agree(quotient, th) || quotient.abs_prec() < prec) return false;

  QExp eta = pentagonal_eta(prec + 1);
  PhasedSeries num = shift_half(eta) * shift_half(eta);
  PhasedSeries den = substitute_qm(shift_one(eta), 2);  // eta(2tau + 1)
  PhasedSeries first = num / den;
  return first.phase == 0 && agree(first.series, th) && first.series.abs_prec() >= prec;
}

/// f_5 = sum_{x,y} (x^4 - 6x^2y^2 + y^4) q^(x^2+y^2), a cusp form in S_5(Gamma_0(4), (-4/.)).
inline NamedForm spherical_theta_f5(long prec) {
  detail::require_prec(prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec), 0);
  for (long x = 0; x * x < prec; ++x)
    for (long y = 0; x * x + y * y < prec; ++y) {
      long w = (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
      Integer p = Integer(x * x * x * x) - 6 * x * x * y * y + Integer(y * y * y * y);
      v[x * x + y * y] += Rational(p * w);
    }
  return {FormDesc{10, 4, -4, true, true}, QExp(std::move(v)), "f5"};
}

/// Bivariate polynomial as (i, j) -> coefficient of x^i y^j.
using XYPoly = std::map<std::pair<long, long>, Rational>;

inline XYPoly laplacian(const XYPoly& p) {
  XYPoly out;
  for (const auto& [m, c] : p) {
    auto [i, j] = m;
    if (i >= 2) out[{i - 2, j}] += c * i * (i - 1);
    if (j >= 2) out[{i, j - 2}] += c * j * (j - 1);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline XYPoly spherical_f5_polynomial() { return {{{4, 0}, 1}, {{2, 2}, -6}, {{0, 4}, 1}}; }

inline bool spherical_laplacian_check() { return laplacian(spherical_f5_polynomial()).empty(); }

}  // namespace modforms
