#pragma once

// Ramanujan's tau function: tables by several independent methods, the
// Hurwitz class number trace formula, congruences and bounds.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modforms/arith.hpp"
#include "modforms/qexp.hpp"

namespace modforms {

enum class TauMethod { series, recursion, pentagonal, triangular, sigma, hybrid };

inline TauMethod parse_tau_method(const std::string& s) {
  if (s == "series") return TauMethod::series;
  if (s == "recursion") return TauMethod::recursion;
  if (s == "pentagonal") return TauMethod::pentagonal;
  if (s == "triangular") return TauMethod::triangular;
  if (s == "sigma") return TauMethod::sigma;
  if (s == "hybrid") return TauMethod::hybrid;
  fail(Errc::bad_input, "unknown tau method '" + s + "'");
}

inline std::string tau_method_name(TauMethod m) {
  switch (m) {
    case TauMethod::series: return "series";
    case TauMethod::recursion: return "recursion";
    case TauMethod::pentagonal: return "pentagonal";
    case TauMethod::triangular: return "triangular";
    case TauMethod::sigma: return "sigma";
    case TauMethod::hybrid: return "hybrid";
  }
  return "?";
}

/// tau(1..upto); values[0] is unused and set to 0.
struct TauTable {
  long upto = 0;
  TauMethod method = TauMethod::series;
  std::vector<Integer> values;

  const Integer& operator()(long n) const {
    require(n >= 1 && n <= upto, Errc::bad_range, "tau table index out of range");
    return values[static_cast<std::size_t>(n)];
  }
};

namespace detail {

/// Delta = q (eta^3 / q^(1/8))^8, with the eighth power taken by three squarings.
inline std::vector<Integer> tau_by_series(long upto) {
  std::size_t len = static_cast<std::size_t>(upto);
  std::vector<Integer> a(len, 0);
  for (long k = 0; k * (k + 1) / 2 < upto; ++k) a[k * (k + 1) / 2] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  for (int i = 0; i < 3; ++i) a = convolve(a, a, len);
  std::vector<Integer> out(len + 1, 0);
  for (std::size_t n = 1; n <= len; ++n) out[n] = a[n - 1];
  return out;
}

/// (n - 1) tau(n) = -24 sum_{m=1}^{n-1} sigma_1(m) tau(n - m).
inline std::vector<Integer> tau_by_recursion(long upto) {
  auto s1 = arith::sigma_table(1, upto);
  std::vector<unsigned long> s(s1.size());
  for (std::size_t i = 0; i < s1.size(); ++i) s[i] = s1[i].get_ui();
  std::vector<Integer> t(static_cast<std::size_t>(upto + 1), 0);
  t[1] = 1;
  Integer acc;
  for (long n = 2; n <= upto; ++n) {
    acc = 0;
    for (long m = 1; m < n; ++m) mpz_addmul_ui(acc.get_mpz_t(), t[n - m].get_mpz_t(), s[m]);
    acc *= -24;
    mpz_divexact_ui(t[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n - 1));
  }
  return t;
}

/// rop += x * w for a signed machine integer w.
inline void addmul_si(mpz_ptr rop, mpz_srcptr x, long w) {
  if (w >= 0) ::mpz_addmul_ui(rop, x, static_cast<unsigned long>(w));
  else ::mpz_submul_ui(rop, x, static_cast<unsigned long>(-w));
}

/// Recursion from Delta = q A^r where A = sum_j c_j q^(e_j) is sparse:
/// A D(Delta) = A Delta + r Delta D(A) gives
///   sum_j c_j (n - 1 - (r + 1) e_j) tau(n - e_j) = 0.
inline std::vector<Integer> tau_by_sparse_recursion(long upto, const std::vector<std::pair<long, long>>& terms,
                                                    long r) {
  std::vector<Integer> t(static_cast<std::size_t>(upto + 1), 0);
  t[1] = 1;
  Integer acc;
  for (long n = 2; n <= upto; ++n) {
    acc = 0;
    for (const auto& [e, c] : terms) {
      if (e == 0) continue;
      if (e >= n) break;
      long w = c * (n - 1 - (r + 1) * e);
      addmul_si(acc.get_mpz_t(), t[n - e].get_mpz_t(), w);
    }
    // The e = 0 term is (n - 1) tau(n).
    acc = -acc;
    mpz_divexact_ui(t[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n - 1));
  }
  return t;
}

/// Pentagonal exponents k(3k+1)/2, k in Z, with signs (-1)^k, in increasing order.
inline std::vector<std::pair<long, long>> pentagonal_terms(long upto) {
  std::vector<std::pair<long, long>> terms{{0, 1}};
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 >= upto) break;
    long sign = k % 2 == 0 ? 1 : -1;
    terms.emplace_back(e1, sign);
    if (e2 < upto) terms.emplace_back(e2, sign);
  }
  return terms;
}

/// Triangular exponents k(k+1)/2 with coefficients (-1)^k (2k+1).
inline std::vector<std::pair<long, long>> triangular_terms(long upto) {
  std::vector<std::pair<long, long>> terms;
  for (long k = 0; k * (k + 1) / 2 < upto; ++k) terms.emplace_back(k * (k + 1) / 2, (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
  return terms;
}

/// tau(n) = (n/12)(5 sigma_3(n) + 7 sigma_5(n)) + 70 sum_{m=1}^{n-1} (2n - 5m) sigma_3(m) sigma_5(n - m),
/// with the two convolutions computed as series products.
inline std::vector<Integer> tau_by_sigma(long upto) {
  auto s3 = arith::sigma_table(3, upto);
  auto s5 = arith::sigma_table(5, upto);
  std::size_t len = static_cast<std::size_t>(upto + 1);
  std::vector<Integer> a3(len, 0), ma3(len, 0), a5(len, 0);
  for (long m = 1; m <= upto; ++m) {
    a3[m] = s3[m];
    ma3[m] = s3[m] * m;
    a5[m] = s5[m];
  }
  auto c = convolve(a3, a5, len);
  auto mc = convolve(ma3, a5, len);
  std::vector<Integer> t(len, 0);
  for (long n = 1; n <= upto; ++n) {
    Integer head = Integer(n) * (5 * s3[n] + 7 * s5[n]);
    if (head % 12 != 0) fail(Errc::internal_inconsistency, "tau sigma formula: n(5s3+7s5) not divisible by 12");
    Integer sum = 2 * n * c[n] - 5 * mc[n];
    t[n] = head / 12 + 70 * sum;
  }
  return t;
}

}  // namespace detail

/// tau(p) = 28p^6 - 28p^5 - 90p^4 - 35p^3 - 1
///          - 128 sum_{1 <= t < sqrt p} t^6 (4t^4 - 9pt^2 + 7p^2) H_3(p - t^2)
/// for odd primes p, with H_3(N) = H(4N) + 2H(N).
inline Integer tau_trace_formula(long p, const arith::HurwitzTable& table) {
  require(p != 2 && arith::is_prime(p), Errc::bad_prime,
          "the trace formula is used for odd primes only, got " + std::to_string(p));
  Integer P = p;
  Integer main = 28 * ipow(P, 6) - 28 * ipow(P, 5) - 90 * ipow(P, 4) - 35 * ipow(P, 3) - 1;
  Rational s = 0;
  for (long t = 1; t * t < p; ++t) {
    Integer T = t;
    Integer w = ipow(T, 6) * (4 * ipow(T, 4) - 9 * P * T * T + 7 * P * P);
    s += Rational(w) * arith::h3(table, p - t * t);
  }
  Rational v = Rational(main) - 128 * s;
  require(is_integer(v), Errc::internal_inconsistency, "trace formula gave a non-integer");
  return v.get_num();
}

inline Integer tau_trace_formula(long p) {
  require(p >= 2, Errc::bad_prime, "p must be prime");
  return tau_trace_formula(p, arith::HurwitzTable(4 * p));
}

namespace detail {

/// tau(p) for every prime p <= upto by the trace formula (tau(2) = -24 stored).
inline std::vector<std::pair<long, Integer>> tau_at_primes(long upto) {
  std::vector<std::pair<long, Integer>> out;
  arith::HurwitzTable table(4 * std::max(upto, 2L));
  for (long p : arith::primes_up_to(upto)) out.emplace_back(p, p == 2 ? Integer(-24) : tau_trace_formula(p, table));
  return out;
}

/// tau(p^e) for e = 0..emax from tau(p) by tau(p^(e+1)) = tau(p) tau(p^e) - p^11 tau(p^(e-1)).
inline std::vector<Integer> tau_prime_powers(long p, const Integer& tp, long emax) {
  std::vector<Integer> v{1, tp};
  Integer p11 = ipow(Integer(p), 11);
  while (static_cast<long>(v.size()) <= emax) v.push_back(tp * v.back() - p11 * v[v.size() - 2]);
  return v;
}

inline std::vector<Integer> tau_by_hybrid(long upto) {
  std::vector<Integer> t(static_cast<std::size_t>(upto + 1), 0);
  if (upto >= 1) t[1] = 1;
  for (const auto& [p, tp] : tau_at_primes(upto)) {
    long emax = 0;
    for (long q = p; q <= upto; q *= p) {
      ++emax;
      if (q > upto / p) break;
    }
    auto pw = tau_prime_powers(p, tp, emax);
    long q = 1;
    for (long e = 1; e <= emax; ++e) {
      q *= p;
      t[q] = pw[e];
    }
  }
  // Other n: split off the smallest prime power.
  for (long n = 2; n <= upto; ++n) {
    auto f = arith::factorize(n);
    if (f.size() <= 1) continue;
    long pe = to_long(ipow(Integer(f[0].first), static_cast<unsigned long>(f[0].second)));
    t[n] = t[pe] * t[n / pe];
  }
  return t;
}

}  // namespace detail

inline TauTable tau_table(long upto, TauMethod method = TauMethod::series) {
  require(upto >= 1, Errc::bad_n, "upto must be >= 1");
  TauTable t;
  t.upto = upto;
  t.method = method;
  switch (method) {
    case TauMethod::series: t.values = detail::tau_by_series(upto); break;
    case TauMethod::recursion: t.values = detail::tau_by_recursion(upto); break;
    case TauMethod::pentagonal:
      t.values = detail::tau_by_sparse_recursion(upto, detail::pentagonal_terms(upto), 24);
      break;
    case TauMethod::triangular:
      t.values = detail::tau_by_sparse_recursion(upto, detail::triangular_terms(upto), 8);
      break;
    case TauMethod::sigma: t.values = detail::tau_by_sigma(upto); break;
    case TauMethod::hybrid: t.values = detail::tau_by_hybrid(upto); break;
  }
  return t;
}

/// tau(n) by factoring n: trace formula at odd primes, tau(2) = -24, the prime-power
/// recursion, and multiplicativity.
inline Integer tau(long n) {
  require(n >= 1, Errc::bad_n, "tau(n) needs n >= 1");
  Integer out = 1;
  for (auto [p, e] : arith::factorize(n)) {
    Integer tp = p == 2 ? Integer(-24) : tau_trace_formula(p);
    out *= detail::tau_prime_powers(p, tp, e)[static_cast<std::size_t>(e)];
  }
  return out;
}

/// tau(n) = n sigma_1(n) = n sigma_5(n) (mod 5) and tau(n) = n sigma_3(n) (mod 7) for n <= upto.
inline bool tau_congruence_check(const TauTable& t) {
  auto s1 = arith::sigma_table(1, t.upto);
  auto s3 = arith::sigma_table(3, t.upto);
  auto s5 = arith::sigma_table(5, t.upto);
  auto cong = [](const Integer& a, const Integer& b, long m) { return Integer(a - b) % m == 0; };
  for (long n = 1; n <= t.upto; ++n) {
    const Integer& v = t(n);
    if (!cong(v, n * s1[n], 5) || !cong(v, n * s5[n], 5) || !cong(v, n * s3[n], 7)) return false;
  }
  return true;
}

inline bool tau_congruence_check(long upto) { return tau_congruence_check(tau_table(upto)); }

struct DeligneReport {
  long pmax = 0;
  long primes_checked = 0;
  bool bound_holds = true;     ///< |tau(p)| < 2 p^(11/2) for every p <= pmax
  double max_ratio = 0;        ///< max |tau(p)| / (2 p^(11/2))
  long argmax = 0;
  long strict_violations = 0;  ///< primes with |tau(p)| >= p^(11/2)
  std::optional<long> first_strict_violation;
};

/// Compare tau(p)^2 with 4 p^11 and with p^11 exactly, for primes p <= pmax.
inline DeligneReport deligne_bound_check(const TauTable& t, long pmax) {
  require(pmax >= 2 && pmax <= t.upto, Errc::bad_range, "pmax must lie in [2, table size]");
  DeligneReport r;
  r.pmax = pmax;
  for (long p : arith::primes_up_to(pmax)) {
    ++r.primes_checked;
    Integer sq = t(p) * t(p);
    Integer p11 = ipow(Integer(p), 11);
    if (sq >= 4 * p11) r.bound_holds = false;
    if (sq >= p11) {
      ++r.strict_violations;
      if (!r.first_strict_violation) r.first_strict_violation = p;
    }
    double ratio = std::abs(t(p).get_d()) / (2 * std::pow(static_cast<double>(p), 5.5));
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = p;
    }
  }
  return r;
}

inline DeligneReport deligne_bound_check(long pmax) { return deligne_bound_check(tau_table(pmax), pmax); }

/// First n <= upto with tau(n) = 0 in the given values (index 1..), if any.
inline std::optional<long> lehmer_scan(const std::vector<Integer>& values, long upto) {
  for (long n = 1; n <= upto && n < static_cast<long>(values.size()); ++n)
    if (values[n] == 0) return n;
  return std::nullopt;
}

inline std::optional<long> lehmer_scan(long upto) {
  require(upto >= 1, Errc::bad_n, "upto must be >= 1");
  return lehmer_scan(tau_table(upto).values, upto);
}

}  // namespace modforms
