#pragma once

// Hecke operators on q-expansions, Hecke matrices on S_k(SL2(Z)), exact
// eigenforms for spaces of dimension <= 2, T(n) on j, and Euler factors.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modforms/arith.hpp"
#include "modforms/forms.hpp"
#include "modforms/matrix.hpp"
#include "modforms/poly.hpp"

namespace modforms {

/// T(n) of weight k on level N:
///   b(m) = sum_{d | gcd(m, n), gcd(d, N) = 1} d^(k-1) a(mn/d^2).
/// Works on Laurent series (weight 0 uses d^-1). The output is known below
/// q^ceil(A/n) where A is the precision bound of f.
inline QExp hecke_action(const QExp& f, long k, long n, long N = 1) {
  require(n >= 1, Errc::bad_n, "Hecke operator index must be >= 1");
  require(N >= 1, Errc::bad_n, "level must be >= 1");
  require(is_integer(f.offset()), Errc::incompatible_grid, "Hecke operators need an integral exponent grid");
  if (n == 1) return f;
  long off = to_long(f.offset().get_num());
  long A = to_long(f.abs_prec().get_num());
  long out_off = off < 0 ? off * n : 0;
  // b(m) needs a(mn), known iff mn < A.
  long out_end = A > 0 ? (A + n - 1) / n : -((-A) / n);
  if (out_end <= out_off)
    fail(Errc::insufficient_precision,
         "T(" + std::to_string(n) + ") needs coefficients beyond q^" + std::to_string(A));
  auto a = [&](long e) -> Rational { return e < off ? Rational(0) : f[e - off]; };
  std::vector<Rational> out(static_cast<std::size_t>(out_end - out_off));
  std::vector<std::pair<long, Rational>> dpow;  // divisors of n coprime to N with d^(k-1)
  for (long d : arith::divisors(n))
    if (std::gcd(d, N) == 1) dpow.emplace_back(d, rpow(Rational(d), k - 1));
  for (long m = out_off; m < out_end; ++m) {
    Rational acc = 0;
    for (const auto& [d, w] : dpow) {
      if (m % d != 0) continue;
      long e = m * n / (d * d);
      if (m == 0) e = 0;
      acc += w * a(e);
    }
    out[m - out_off] = acc;
  }
  return QExp(std::move(out), out_off);
}

namespace detail {

/// Sum over d | gcd(n, m) of d^(k-1) T(nm/d^2) f.
inline QExp hecke_compose_rhs(const QExp& f, long k, long n, long m) {
  std::optional<QExp> acc;
  for (long d : arith::divisors(std::gcd(n, m))) {
    QExp t = scale(rpow(Rational(d), k - 1), hecke_action(f, k, n * m / (d * d)));
    acc = acc ? *acc + t : t;
  }
  return *acc;
}

}  // namespace detail

/// T(n) T(m) = sum_{d | gcd(n, m)} d^(k-1) T(nm/d^2) on a spanning set of M_k(SL2(Z)),
/// compared on the first `prec` coefficients.
inline bool hecke_compose_check(long n, long m, long k, long prec) {
  require(prec >= 1, Errc::bad_input, "prec must be >= 1");
  long base = n * m * prec + 1;
  auto basis = mk_basis(k, base);
  for (const auto& f : basis) {
    QExp lhs = hecke_action(hecke_action(f.series, k, m), k, n);
    QExp rhs = detail::hecke_compose_rhs(f.series, k, n, m);
    if (lhs.abs_prec() < prec || rhs.abs_prec() < prec) fail(Errc::insufficient_precision, "compose check");
    if (!(lhs.truncate(prec) == rhs.truncate(prec))) return false;
  }
  return true;
}

/// Matrix of T(n) on sk_basis(k): column j holds the coordinates of T(n) applied to basis j.
inline RatMatrix hecke_matrix(long k, long n) {
  require(k >= 12 && k % 2 == 0, Errc::bad_weight, "hecke_matrix needs even k >= 12");
  require(n >= 1, Errc::bad_n, "n must be >= 1");
  long d = dims::dim_sk_level1(k);
  long out_prec = d + 4;
  long base = n * out_prec + 1;
  auto basis = sk_basis(k, base);
  std::vector<QExp> short_basis;
  for (const auto& b : basis) short_basis.push_back(b.series.truncate(out_prec));
  RatMatrix M(d, d);
  for (long j = 0; j < d; ++j) {
    QExp img = hecke_action(basis[j].series, k, n).truncate(out_prec);
    auto c = to_basis(img, short_basis);
    for (long i = 0; i < d; ++i) M(i, j) = c[i];
  }
  return M;
}

/// a + b sqrt(d) with d a squarefree integer (d = 1 is reserved for rationals, b = 0).
struct QuadNumber {
  Rational a = 0, b = 0;
  Integer d = 1;

  static QuadNumber rational(const Rational& x) { return {x, 0, 1}; }

  bool is_rational() const { return b == 0; }

  friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
    return {x.a + y.a, x.b + y.b, x.is_rational() ? y.d : x.d};
  }
  friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) {
    return {x.a - y.a, x.b - y.b, x.is_rational() ? y.d : x.d};
  }
  friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
    Integer d = x.is_rational() ? y.d : x.d;
    return {x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a, d};
  }
  QuadNumber conjugate() const { return {a, -b, d}; }
  Rational norm() const { return a * a - b * b * Rational(d); }
  friend QuadNumber operator/(const QuadNumber& x, const QuadNumber& y) {
    Rational nrm = y.norm();
    require(nrm != 0, Errc::bad_input, "division by zero in Q(sqrt d)");
    QuadNumber t = x * y.conjugate();
    return {t.a / nrm, t.b / nrm, t.d};
  }
  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a == y.a && x.b == y.b && (x.b == 0 || x.d == y.d);
  }
  double to_double() const { return a.get_d() + b.get_d() * std::sqrt(Rational(d).get_d()); }

  std::string to_string() const {
    if (b == 0) return modforms::to_string(a);
    std::string s = (a == 0 ? "" : modforms::to_string(a) + (b < 0 ? " - " : " + "));
    if (a == 0 && b < 0) s += "-";
    Rational mag = abs(b);
    if (mag != 1) s += modforms::to_string(mag) + "*";
    return s + "sqrt(" + modforms::to_string(d) + ")";
  }
};

/// Squarefree part decomposition: r = s^2 * d with d squarefree, s rational.
inline std::pair<Rational, Integer> split_square(const Rational& r) {
  require(r != 0, Errc::bad_input, "split_square of zero");
  // r = num/den = num*den / den^2.
  Integer m = r.get_num() * r.get_den();
  Integer sign = m < 0 ? -1 : 1;
  Integer absm = abs(m);
  Integer sq = 1, d = 1;
  Integer rest = absm;
  for (Integer p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      sq *= p;
    }
    if (rest % p == 0) {
      rest /= p;
      d *= p;
    }
  }
  d *= rest;
  return {make_rational(sq, r.get_den()), sign * d};
}

/// Exact roots of a polynomial of degree 1 or 2 in Q or Q(sqrt d).
inline std::vector<QuadNumber> roots_low_degree(const Poly& p) {
  require(p.degree() >= 1 && p.degree() <= 2, Errc::unsupported_dimension, "exact roots only for degree 1, 2");
  if (p.degree() == 1) return {QuadNumber::rational(-p[0] / p[1])};
  Rational disc = quadratic_discriminant(p);
  Rational two_a = 2 * p[2];
  if (disc == 0) return {QuadNumber::rational(-p[1] / two_a)};
  auto [s, d] = split_square(disc);
  if (d == 1) {
    return {QuadNumber::rational((-p[1] + s) / two_a), QuadNumber::rational((-p[1] - s) / two_a)};
  }
  return {QuadNumber{-p[1] / two_a, s / two_a, d}, QuadNumber{-p[1] / two_a, -s / two_a, d}};
}

/// Approximate complex roots by Durand-Kerner iteration (used when degree > 2).
inline std::vector<std::complex<long double>> numeric_roots(const Poly& p) {
  long n = p.degree();
  require(n >= 1, Errc::bad_input, "numeric_roots needs degree >= 1");
  std::vector<long double> c(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) c[i] = static_cast<long double>(p[i].get_d() / p.leading().get_d());
  using C = std::complex<long double>;
  auto eval = [&](C x) {
    C acc = 0;
    for (long i = n; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  long double bound = 1;
  for (long i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(c[i]));
  std::vector<C> z(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) z[i] = std::polar(bound, 0.4L + 2.0L * 3.14159265358979323846L * i / n);
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (long i = 0; i < n; ++i) {
      C den = 1;
      for (long j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[i])));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

/// A series with coefficients in Q(sqrt d): rational_part + sqrt(d) * irrational_part.
struct QuadSeries {
  QExp rational_part;
  QExp irrational_part;
  Integer d = 1;

  QuadNumber coefficient(long e) const {
    return {rational_part.coefficient(e), irrational_part.coefficient(e), d};
  }
};

/// One normalized Hecke eigenform in S_k(SL2(Z)).
struct EigenData {
  long weight = 0;
  Poly charpoly;                     ///< characteristic polynomial of T(2) on S_k
  std::optional<QuadNumber> eigenvalue;            ///< T(2) eigenvalue when degree <= 2
  std::optional<std::complex<long double>> approx;  ///< numeric eigenvalue otherwise
  std::vector<QuadNumber> coordinates;  ///< in sk_basis(k), empty when not exact
  std::optional<QuadSeries> series;     ///< normalized a(1) = 1 q-expansion when exact
};

/// Normalized eigenforms of S_k(SL2(Z)), exact when dim S_k <= 2.
inline std::vector<EigenData> eigenforms(long k, long prec = 30) {
  long dim = dims::dim_sk_level1(k);
  std::vector<EigenData> out;
  if (dim == 0) return out;
  RatMatrix M = hecke_matrix(k, 2);
  Poly cp = charpoly(M);
  if (dim > 2) {
    for (auto z : numeric_roots(cp)) {
      EigenData e;
      e.weight = k;
      e.charpoly = cp;
      e.approx = z;
      out.push_back(std::move(e));
    }
    return out;
  }
  auto basis = sk_basis(k, prec);
  for (const QuadNumber& lam : roots_low_degree(cp)) {
    std::vector<QuadNumber> v;
    if (dim == 1) {
      v = {QuadNumber::rational(1)};
    } else if (!lam.is_rational()) {
      v = {QuadNumber::rational(M(0, 1)), lam - QuadNumber::rational(M(0, 0))};
    } else {
      RatMatrix shifted = M - lam.a * RatMatrix::identity(dim);
      auto ns = nullspace(shifted);
      require(ns.size() == 1, Errc::internal_inconsistency, "repeated Hecke eigenvalue");
      for (const auto& x : ns[0]) v.push_back(QuadNumber::rational(x));
    }
    // Normalize so that a(1) = 1.
    QuadNumber a1 = QuadNumber::rational(0);
    for (long j = 0; j < dim; ++j)
      a1 = a1 + v[j] * QuadNumber::rational(basis[j].series.coefficient(1));
    for (auto& x : v) x = x / a1;
    QExp rp = QExp::zero(prec), ip = QExp::zero(prec);
    for (long j = 0; j < dim; ++j) {
      rp = rp + scale(v[j].a, basis[j].series);
      ip = ip + scale(v[j].b, basis[j].series);
    }
    EigenData e;
    e.weight = k;
    e.charpoly = cp;
    e.eigenvalue = lam;
    e.coordinates = v;
    e.series = QuadSeries{rp, ip, lam.d};
    out.push_back(std::move(e));
  }
  return out;
}

/// True iff the characteristic polynomial of T(n) on S_k(SL2(Z)) is irreducible over Q
/// (degree <= 2 only; a linear polynomial counts as irreducible).
inline bool maeda_check(long k, long n) {
  long dim = dims::dim_sk_level1(k);
  require(dim >= 1, Errc::unsupported_dimension, "S_k is zero");
  require(dim <= 2, Errc::unsupported_dimension, "exact irreducibility only for dim S_k <= 2");
  return is_irreducible_low_degree(charpoly(hecke_matrix(k, n)));
}

/// T(n) applied (in weight 0) to a modular function F = q^-1 + ..., written as
/// a polynomial in F. The principal part is removed by subtracting powers of F;
/// the remainder must be constant.
inline Poly hecke_on_modular_function(const QExp& F, long n) {
  require(F.offset() == -1 && F.coefficient(-1) == 1, Errc::bad_input,
          "expected a Laurent series starting with q^-1");
  QExp g = hecke_action(F, 0, n);
  require(g.abs_prec() >= 2, Errc::insufficient_precision, "need more coefficients of F");
  std::vector<Rational> coeffs(static_cast<std::size_t>(n + 1), 0);
  std::vector<QExp> powers(static_cast<std::size_t>(n + 1));
  powers[0] = QExp::one(F.prec());
  for (long m = 1; m <= n; ++m) powers[m] = mul(powers[m - 1], F);
  for (long m = n; m >= 1; --m) {
    Rational c = g.coefficient(-m);
    coeffs[m] = c;
    if (c != 0) g = g - scale(c, powers[m]);
  }
  coeffs[0] = g.coefficient(0);
  long end = to_long(g.abs_prec().get_num());
  for (long e = to_long(g.offset().get_num()); e < end; ++e)
    if (e != 0 && g.coefficient(e) != 0)
      fail(Errc::internal_inconsistency, "T(" + std::to_string(n) + ") image is not a polynomial in F");
  return Poly(std::move(coeffs));
}

/// T(n)(j) as a polynomial in j.
inline Poly tn_on_j(long n) {
  require(n >= 1, Errc::bad_n, "n must be >= 1");
  long prec = n * (n + 6) + 2;
  return hecke_on_modular_function(jfunction(prec).series, n);
}

/// Local factor 1 - a_p X + chi(p) p^(k-1) X^2 as (1, -a_p, chi(p) p^(k-1)),
/// with chi the character (D/.) restricted to p not dividing N.
inline std::array<Rational, 3> euler_factor(const Rational& a_p, long p, long k, long N = 1, long D = 0) {
  require(arith::is_prime(p), Errc::bad_prime, "euler_factor needs a prime");
  long chi = (N % p == 0) ? 0 : arith::character(D, p);
  return {1, -a_p, chi * Rational(ipow(p, static_cast<unsigned long>(k - 1)))};
}

/// a(1..nmax) from a(p) for primes p <= nmax, using the Euler factors and multiplicativity.
inline std::vector<Rational> coefficients_from_euler(const std::map<long, Rational>& a_p, long k, long N,
                                                     long D, long nmax) {
  require(nmax >= 1, Errc::bad_n, "nmax must be >= 1");
  std::vector<Rational> a(static_cast<std::size_t>(nmax + 1), 0);
  a[1] = 1;
  for (long p : arith::primes_up_to(nmax)) {
    auto it = a_p.find(p);
    if (it == a_p.end()) fail(Errc::missing_prime, "a(" + std::to_string(p) + ") not supplied");
    auto ef = euler_factor(it->second, p, k, N, D);
    Rational prev = 1, cur = it->second;
    for (long q = p; q <= nmax; q *= p) {
      a[q] = cur;
      Rational next = it->second * cur + (-ef[2]) * prev;  // a(p^(e+1)) = a_p a(p^e) - chi p^(k-1) a(p^(e-1))
      prev = cur;
      cur = next;
      if (q > nmax / p) break;
    }
  }
  for (long n = 2; n <= nmax; ++n) {
    auto f = arith::factorize(n);
    if (f.size() <= 1) continue;
    Rational v = 1;
    for (auto [p, e] : f) v *= a[static_cast<std::size_t>(to_long(ipow(p, static_cast<unsigned long>(e))))];
    a[n] = v;
  }
  return a;
}

}  // namespace modforms
