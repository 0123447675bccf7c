#pragma once

// Classical q-series identities, each side computed independently in integer
// arithmetic: Pochhammer-type product/sum identities, the partition generating
// function and Jacobi's triple product.

#include <cstddef>
#include <string>
#include <vector>

#include "modforms/qexp.hpp"

namespace modforms {

namespace detail {

using IntSeries = std::vector<Integer>;

/// In-place multiplication by 1/(1 - t^step), truncated to the vector length.
inline void divide_by_one_minus(IntSeries& v, std::size_t step) {
  for (std::size_t i = step; i < v.size(); ++i) v[i] += v[i - step];
}

/// In-place multiplication by (1 + c t^step) with c an integer.
inline void multiply_by_binomial(IntSeries& v, long c, std::size_t step) {
  if (step == 0) {
    for (auto& x : v) x *= 1 + c;
    return;
  }
  for (std::size_t i = v.size(); i-- > step;) v[i] += c * v[i - step];
}

}  // namespace detail

/// The specialisations of `a` in prod (1 - a q^n) that are checked.
enum class PochhammerArg { one, minus_one, minus_inv_q, sqrt_q, minus_sqrt_q };

inline PochhammerArg parse_pochhammer_arg(const std::string& s) {
  if (s == "1") return PochhammerArg::one;
  if (s == "-1") return PochhammerArg::minus_one;
  if (s == "-1/q") return PochhammerArg::minus_inv_q;
  if (s == "q^(1/2)" || s == "q^1/2" || s == "sqrt(q)") return PochhammerArg::sqrt_q;
  if (s == "-q^(1/2)" || s == "-q^1/2" || s == "-sqrt(q)") return PochhammerArg::minus_sqrt_q;
  fail(Errc::bad_input, "unknown Pochhammer argument '" + s + "'");
}

/// Checks, for a = sign * q^e,
///   prod_{n>=1} (1 - a q^n) = sum_n (-1)^n a^n q^(n(n+1)/2) / (q)_n
///   1 / prod_{n>=1} (1 - a q^n) = sum_n a^n q^n / (q)_n
/// through q^(prec-1). Half-integral e runs in t with q = t^2. For a = -1/q the
/// second sum has infinitely many constant terms and is not a formal power
/// series, so only the first identity is checked there.
inline bool pochhammer_identity_check(PochhammerArg arg, long prec) {
  require(prec >= 2, Errc::bad_input, "pochhammer_identity_check needs prec >= 2");
  long sign = 1, g = 1, e = 0;  // a = sign * t^e with q = t^g
  switch (arg) {
    case PochhammerArg::one: break;
    case PochhammerArg::minus_one: sign = -1; break;
    case PochhammerArg::minus_inv_q: sign = -1, e = -1; break;
    case PochhammerArg::sqrt_q: g = 2, e = 1; break;
    case PochhammerArg::minus_sqrt_q: sign = -1, g = 2, e = 1; break;
  }
  const std::size_t len = static_cast<std::size_t>(g * prec);
  const long L = static_cast<long>(len);

  // prod_{n>=1} (1 - sign t^(g n + e))
  detail::IntSeries product(len, 0);
  product[0] = 1;
  for (long n = 1; g * n + e < L; ++n)
    detail::multiply_by_binomial(product, -sign, static_cast<std::size_t>(g * n + e));

  // sum_n (-1)^n sign^n t^(n e + g n(n+1)/2) / (t^g; t^g)_n
  detail::IntSeries first(len, 0), inv_poch(len, 0);
  inv_poch[0] = 1;
  for (long n = 0;; ++n) {
    if (n > 0) detail::divide_by_one_minus(inv_poch, static_cast<std::size_t>(g * n));
    long shift = n * e + g * n * (n + 1) / 2;
    if (shift >= L) break;
    long c = ((n % 2 == 0) ? 1 : -1) * ((sign < 0 && n % 2 == 1) ? -1 : 1);
    for (long i = shift; i < L; ++i) first[i] += c * inv_poch[i - shift];
  }
  if (first != product) return false;
  if (arg == PochhammerArg::minus_inv_q) return true;

  // 1/prod and sum_n sign^n t^(n(e + g)) / (t^g; t^g)_n
  detail::IntSeries recip(len, 0);
  recip[0] = 1;
  for (long n = 1; g * n + e < L; ++n) {
    std::size_t step = static_cast<std::size_t>(g * n + e);
    for (std::size_t i = step; i < len; ++i) recip[i] += sign * recip[i - step];
  }
  detail::IntSeries second(len, 0);
  std::fill(inv_poch.begin(), inv_poch.end(), Integer(0));
  inv_poch[0] = 1;
  for (long n = 0;; ++n) {
    if (n > 0) detail::divide_by_one_minus(inv_poch, static_cast<std::size_t>(g * n));
    long shift = n * (e + g);
    if (shift >= L) break;
    long c = (sign < 0 && n % 2 == 1) ? -1 : 1;
    for (long i = shift; i < L; ++i) second[i] += c * inv_poch[i - shift];
  }
  return second == recip;
}

/// sum p(n) q^n as the inverse of the pentagonal expansion of prod (1 - q^n).
inline QExp partition_series(long prec) {
  require(prec >= 1, Errc::bad_input, "partition_series needs prec >= 1");
  auto v = euler_product_coeffs(prec);
  return inv(QExp(std::vector<Rational>(v.begin(), v.end())));
}

/// Compares partition_series with the Durfee-square sum sum q^(n^2) / (q)_n^2.
inline bool partition_identity_check(long prec) {
  require(prec >= 1, Errc::bad_input, "partition_identity_check needs prec >= 1");
  const std::size_t len = static_cast<std::size_t>(prec);
  detail::IntSeries durfee(len, 0), inv_poch_sq(len, 0);
  inv_poch_sq[0] = 1;
  for (long n = 0; n * n < prec; ++n) {
    if (n > 0) {
      detail::divide_by_one_minus(inv_poch_sq, static_cast<std::size_t>(n));
      detail::divide_by_one_minus(inv_poch_sq, static_cast<std::size_t>(n));
    }
    for (long i = n * n; i < prec; ++i) durfee[i] += inv_poch_sq[i - n * n];
  }
  QExp p = partition_series(prec);
  for (long i = 0; i < prec; ++i)
    if (p[i] != Rational(durfee[i])) return false;
  return true;
}

/// A Laurent polynomial in u whose coefficients are truncated integer q-series.
struct UqSeries {
  long umin = 0;                      ///< exponent of u for rows[0]
  std::vector<detail::IntSeries> rows;

  UqSeries(long umin_, long umax, std::size_t qlen)
      : umin(umin_), rows(static_cast<std::size_t>(umax - umin_ + 1), detail::IntSeries(qlen, 0)) {}

  long umax() const { return umin + static_cast<long>(rows.size()) - 1; }
  detail::IntSeries& at(long k) { return rows[static_cast<std::size_t>(k - umin)]; }
  const detail::IntSeries& at(long k) const { return rows[static_cast<std::size_t>(k - umin)]; }

  /// Multiply by (1 - c q^qe u^ue), dropping u-exponents outside the window.
  void times_one_minus(long c, long qe, long ue) {
    const long qlen = static_cast<long>(rows.front().size());
    if (qe >= qlen) return;
    auto snapshot = rows;
    for (long k = umin; k <= umax(); ++k) {
      long src = k - ue;
      if (src < umin || src > umax()) continue;
      const auto& from = snapshot[static_cast<std::size_t>(src - umin)];
      auto& to = at(k);
      for (long i = qe; i < qlen; ++i) to[i] -= c * from[i - qe];
    }
  }
};

/// The two sides of Jacobi's triple product,
///   prod_{n>=1} (1 - q^n)(1 - q^n u) prod_{n>=0} (1 - q^n / u)
///     = sum_{k>=0} (-1)^k (u^k - u^(-(k+1))) q^(k(k+1)/2),
/// as Laurent polynomials in u with |u-exponent| <= u_bound and q-precision q_prec.
/// `u_sign` = -1 replaces u by -u on the product side only (used to show the
/// comparison is not vacuous).
struct TripleProductSides {
  UqSeries product;
  UqSeries sum;
};

inline TripleProductSides triple_product_sides(long u_bound, long q_prec, long u_sign = 1) {
  const std::size_t qlen = static_cast<std::size_t>(q_prec);
  // A term u^m needs q-degree at least m(m-1)/2, so a window of this width
  // loses nothing that can reach the compared coefficients.
  long inner = u_bound + 1;
  while ((inner - 1) * (inner - 2) / 2 < q_prec) ++inner;
  UqSeries prod(-inner, inner, qlen);
  prod.at(0)[0] = 1;
  for (long n = 1; n < q_prec; ++n) {
    prod.times_one_minus(1, n, 0);
    prod.times_one_minus(u_sign, n, 1);
  }
  for (long n = 0; n < q_prec; ++n) prod.times_one_minus(u_sign, n, -1);

  UqSeries sum(-inner, inner, qlen);
  for (long k = 0; k * (k + 1) / 2 < q_prec && k + 1 <= inner; ++k) {
    long e = k * (k + 1) / 2;
    long s = (k % 2 == 0) ? 1 : -1;
    sum.at(k)[e] += s;
    sum.at(-(k + 1))[e] -= s;
  }
  UqSeries p_out(-u_bound, u_bound, qlen), s_out(-u_bound, u_bound, qlen);
  for (long k = -u_bound; k <= u_bound; ++k) {
    p_out.at(k) = prod.at(k);
    s_out.at(k) = sum.at(k);
  }
  return {std::move(p_out), std::move(s_out)};
}

inline bool triple_product_check(long u_bound, long q_prec) {
  require(u_bound >= 2 && q_prec >= 2, Errc::bad_input, "triple_product_check needs bounds >= 2");
  auto sides = triple_product_sides(u_bound, q_prec);
  return sides.product.rows == sides.sum.rows;
}

}  // namespace modforms
