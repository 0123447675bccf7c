#pragma once

// Exact scalar number theory: divisor sums, Kronecker symbols, Bernoulli
// numbers, Hurwitz class numbers and special values of quadratic zeta and
// L-functions.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "modforms/rational.hpp"

namespace modforms::arith {

using Factorization = std::vector<std::pair<long, int>>;

inline Factorization factorize(long n) {
  require(n >= 1, Errc::bad_input, "factorize expects n >= 1");
  Factorization out;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  for (long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (long m = p * p; m <= n; m += p) composite[m] = true;
  }
  return out;
}

/// Positive divisors in increasing order.
inline std::vector<long> divisors(long n) {
  require(n >= 1, Errc::bad_input, "divisors expects n >= 1");
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// sum_{d | n, d > 0} d^k; zero for n <= 0.
inline Integer sigma(unsigned k, long n) {
  if (n <= 0) return 0;
  Integer out = 0;
  for (long d : divisors(n)) out += ipow(d, k);
  return out;
}

/// sigma at a rational argument: zero unless the argument is a positive integer.
inline Integer sigma(unsigned k, const Rational& x) {
  if (!is_integer(x) || x <= 0) return 0;
  return sigma(k, to_long(x.get_num()));
}

/// sigma_k(n) for 0 <= n <= nmax (entry 0 is 0), by a divisor sieve.
inline std::vector<Integer> sigma_table(unsigned k, long nmax) {
  std::vector<Integer> out(static_cast<std::size_t>(std::max(nmax, 0L) + 1), 0);
  for (long d = 1; d <= nmax; ++d) {
    Integer dk = ipow(d, k);
    for (long m = d; m <= nmax; m += d) out[m] += dk;
  }
  return out;
}

inline long moebius(long n) {
  long mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline long euler_phi(long n) {
  long phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

/// Kronecker symbol (D/n), including n even, n <= 0.
inline int kronecker(long D, long n) {
  return mpz_kronecker_si(Integer(D).get_mpz_t(), n);
}

/// Value of the character labelled by D at n; D = 0 is the trivial character.
inline int character(long D, long n) {
  if (D == 0) return 1;
  return kronecker(D, n);
}

inline bool is_discriminant_like(long D) {
  long r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

inline bool is_squarefree(long n) {
  n = std::labs(n);
  if (n == 0) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

/// D = 1 is excluded (it is the discriminant of Q, not of a quadratic field).
inline bool is_fundamental_discriminant(long D) {
  if (D == 0 || D == 1) return false;
  long r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(D);
  if (r != 0) return false;
  long m = D / 4;
  long rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

/// sum_{d | n} (D/d) d^k.
inline Integer sigma_twisted(long D, unsigned k, long n) {
  if (n <= 0) return 0;
  Integer out = 0;
  for (long d : divisors(n)) out += character(D, d) * ipow(d, k);
  return out;
}

/// sum_{d | n} (D/(n/d)) d^k.
inline Integer sigma_twisted_star(long D, unsigned k, long n) {
  if (n <= 0) return 0;
  Integer out = 0;
  for (long d : divisors(n)) out += character(D, n / d) * ipow(d, k);
  return out;
}

/// B_0..B_kmax with B_1 = -1/2.
inline std::vector<Rational> bernoulli_numbers(unsigned kmax) {
  std::vector<Rational> b(kmax + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= kmax; ++m) {
    Rational acc = 0;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -acc / (m + 1);
  }
  return b;
}

inline Rational bernoulli(unsigned k) { return bernoulli_numbers(k)[k]; }

/// Bernoulli polynomial B_n(x).
inline Rational bernoulli_poly(unsigned n, const Rational& x) {
  auto b = bernoulli_numbers(n);
  Rational out = 0;
  Rational xp = 1;
  // sum_j C(n, j) B_j x^(n-j), accumulated from j = n downwards.
  for (unsigned i = 0; i <= n; ++i) {
    unsigned j = n - i;
    out += Rational(binomial(n, j)) * b[j] * xp;
    xp *= x;
  }
  return out;
}

/// B_{n,chi_D} = f^(n-1) sum_{a=1}^{f} chi_D(a) B_n(a/f), f = |D|.
inline Rational generalized_bernoulli(unsigned n, long D) {
  require(D != 0, Errc::invalid_discriminant, "generalized Bernoulli needs D != 0");
  long f = std::labs(D);
  Rational acc = 0;
  for (long a = 1; a <= f; ++a) {
    int chi = kronecker(D, a);
    if (chi != 0) acc += chi * bernoulli_poly(n, make_rational(a, f));
  }
  return acc * Rational(ipow(f, n - 1));
}

/// L(chi_D, -m) = -B_{m+1,chi}/(m+1) for m >= 0.
inline Rational dirichlet_l_negative(long D, unsigned m) {
  return -generalized_bernoulli(m + 1, D) / (m + 1);
}

namespace detail {

/// Six times the weighted class count of the reduced forms (a, ±b, c), b >= 0.
inline long reduced_form_weight6(long a, long b, long c) {
  // b = 0 or |b| = a or a = c give a single class; otherwise (a, ±b, c) are two.
  if (a == b && b == c) return 2;
  if (b == 0 && a == c) return 3;
  if (b == 0 || b == a || a == c) return 6;
  return 12;
}

}  // namespace detail

/// Hurwitz class number H(N): classes of positive definite binary quadratic forms
/// of discriminant -N (not necessarily primitive), the classes of a(x^2+y^2) and
/// a(x^2+xy+y^2) weighted 1/2 and 1/3. H(0) = -1/12.
inline Rational hurwitz(long N) {
  if (N == 0) return make_rational(-1, 12);
  if (N < 0) return 0;
  long r = N % 4;
  if (r == 1 || r == 2) return 0;
  Integer out = 0;
  for (long b = N % 2; 3 * b * b <= N; b += 2) {
    long m = (b * b + N) / 4;
    for (long a = std::max(b, 1L); a * a <= m; ++a) {
      if (m % a != 0) continue;
      out += detail::reduced_form_weight6(a, b, m / a);
    }
  }
  return make_rational(out, 6);
}

/// H(0..limit), filled by one pass over reduced forms.
class HurwitzTable {
 public:
  explicit HurwitzTable(long limit) : limit_(limit) {
    require(limit >= 0, Errc::bad_input, "HurwitzTable limit must be >= 0");
    // Weights scaled by 6 keep the accumulation in integers.
    std::vector<long> six(static_cast<std::size_t>(limit + 1), 0);
    for (long a = 1; 3 * a * a <= limit; ++a) {
      for (long b = 0; b <= a; ++b) {
        for (long c = a; 4 * a * c - b * b <= limit; ++c) {
          six[4 * a * c - b * b] += detail::reduced_form_weight6(a, b, c);
        }
      }
    }
    values_.reserve(six.size());
    for (long n = 0; n <= limit; ++n) values_.push_back(make_rational(six[n], 6));
    values_[0] = make_rational(-1, 12);
  }

  long limit() const noexcept { return limit_; }

  const Rational& operator()(long N) const {
    require(N >= 0 && N <= limit_, Errc::bad_range, "HurwitzTable index out of range");
    return values_[static_cast<std::size_t>(N)];
  }

 private:
  long limit_;
  std::vector<Rational> values_;
};

/// H(4N) + 2H(N).
inline Rational h3(long N) {
  require(N >= 1, Errc::bad_input, "h3 expects N >= 1");
  return hurwitz(4 * N) + 2 * hurwitz(N);
}

inline Rational h3(const HurwitzTable& table, long N) { return table(4 * N) + 2 * table(N); }

namespace detail {

inline void require_real_fundamental(long D) {
  require(D > 0 && is_discriminant_like(D), Errc::invalid_discriminant,
          "D must be a positive integer = 0,1 mod 4, got " + std::to_string(D));
  require(!is_perfect_square(Integer(D)), Errc::invalid_discriminant,
          "D must not be a perfect square, got " + std::to_string(D));
  require(is_fundamental_discriminant(D), Errc::invalid_discriminant,
          "D must be a fundamental discriminant, got " + std::to_string(D));
}

/// sum_{|s| < sqrt(D)} sigma_k(g(s)) for g(s) = (D - s^2)/div.
inline Integer sigma_over_s(long D, unsigned k, long div) {
  Integer acc = 0;
  for (long s = 0; s * s < D; ++s) {
    Integer term = sigma(k, make_rational(D - s * s, div));
    acc += (s == 0) ? term : 2 * term;
  }
  return acc;
}

}  // namespace detail

/// zeta_K(-1) (m = 1) or zeta_K(-3) (m = 3) for K = Q(sqrt(D)), D > 0 fundamental.
inline Rational zeta_k_special(long D, int m) {
  detail::require_real_fundamental(D);
  require(m == 1 || m == 3, Errc::bad_input, "zeta_k_special supports m = 1 or 3");
  Integer sum = detail::sigma_over_s(D, static_cast<unsigned>(m), 4);
  return Rational(sum) / (m == 1 ? 60 : 120);
}

/// Number of representations of D as a sum of 5 squares, via zeta_K(-1).
inline Integer r5_via_zeta(long D) {
  Rational z = zeta_k_special(D, 1);
  Rational r = 480 * (5 - 2 * kronecker(D, 2)) * z;
  require(is_integer(r), Errc::internal_inconsistency, "r5 formula produced a non-integer");
  return r.get_num();
}

/// Number of representations of D as a sum of 7 squares, for -D fundamental.
inline Integer r7_via_L(long D) {
  require(D > 0 && is_fundamental_discriminant(-D), Errc::invalid_discriminant,
          "-D must be a fundamental discriminant, got D = " + std::to_string(D));
  Rational l = dirichlet_l_negative(-D, 2);
  Rational r = -28 * (41 - 4 * kronecker(D, 2)) * l;
  require(is_integer(r), Errc::internal_inconsistency, "r7 formula produced a non-integer");
  return r.get_num();
}

/// Both sigma_1 and sigma_3 sum identities against zeta_K(-1), zeta_K(-3).
inline bool sigma_sum_identity_check(long D) {
  int chi2 = kronecker(D, 2);
  Rational lhs1 = Rational(detail::sigma_over_s(D, 1, 1));
  Rational lhs3 = Rational(detail::sigma_over_s(D, 3, 1));
  return lhs1 == 60 * (9 - 2 * chi2) * zeta_k_special(D, 1) &&
         lhs3 == 120 * (129 - 8 * chi2) * zeta_k_special(D, 3);
}

}  // namespace modforms::arith
