#pragma once

// Dimensions of M_k and S_k for SL2(Z) and Gamma_0(N), and of new subspaces.

#include <numeric>
#include <string>

#include "modforms/arith.hpp"

namespace modforms::dims {

enum class Space { full, cusp, new_cusp };

inline Space parse_space(const std::string& s) {
  if (s == "full" || s == "M") return Space::full;
  if (s == "cusp" || s == "S") return Space::cusp;
  if (s == "new" || s == "new_cusp") return Space::new_cusp;
  fail(Errc::bad_input, "unknown space '" + s + "' (expected full, cusp or new)");
}

inline void require_even_weight(long k) {
  require(k >= 0 && k % 2 == 0, Errc::bad_weight,
          "weight must be even and nonnegative, got " + std::to_string(k));
}

inline long dim_mk_level1(long k) {
  require_even_weight(k);
  return (k % 12 == 2) ? k / 12 : k / 12 + 1;
}

inline long dim_sk_level1(long k) {
  require_even_weight(k);
  if (k < 12) return 0;
  return dim_mk_level1(k) - 1;
}

/// The four terms A1, A23, A24, A3 of the Gamma_0(N) dimension formula.
struct Gamma0Terms {
  Rational a1, a23, a24, a3;
};

inline Gamma0Terms gamma0_terms(long N, long k) {
  require(N >= 1, Errc::bad_n, "level must be positive");
  require_even_weight(k);
  require(k >= 2, Errc::bad_weight, "the Gamma_0(N) formula needs k >= 2");
  auto fac = arith::factorize(N);
  Gamma0Terms t;
  Rational index = N;
  for (auto [p, e] : fac) index *= make_rational(p + 1, p);
  t.a1 = make_rational(k - 1, 12) * index;
  t.a23 = 0;
  if (N % 9 != 0) {
    Rational prod = 1;
    for (auto [p, e] : fac) prod *= 1 + arith::kronecker(-3, p);
    t.a23 = (make_rational(k - 1, 3) - k / 3) * prod;
  }
  t.a24 = 0;
  if (N % 4 != 0) {
    Rational prod = 1;
    for (auto [p, e] : fac) prod *= 1 + arith::kronecker(-4, p);
    t.a24 = (make_rational(k - 1, 4) - k / 4) * prod;
  }
  long s = 0;
  for (long d : arith::divisors(N)) s += arith::euler_phi(std::gcd(d, N / d));
  t.a3 = make_rational(s, 2);
  return t;
}

/// dim M_k(Gamma_0(N)) or dim S_k(Gamma_0(N)) for even k >= 0.
inline long dim_gamma0(long N, long k, Space space) {
  require(N >= 1, Errc::bad_n, "level must be positive");
  require_even_weight(k);
  require(space != Space::new_cusp, Errc::bad_input, "use dim_new for new subspaces");
  if (k == 0) return space == Space::full ? 1 : 0;
  Gamma0Terms t = gamma0_terms(N, k);
  Rational d = t.a1 - t.a23 - t.a24;
  if (space == Space::full) d += t.a3;
  else d += (k == 2 ? 1 : 0) - t.a3;
  require(is_integer(d), Errc::internal_inconsistency,
          "dimension formula gave the non-integer " + to_string(d));
  return to_long(d.get_num());
}

/// beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3, extended multiplicatively.
inline long beta(long n) {
  long out = 1;
  for (auto [p, e] : arith::factorize(n)) {
    if (e == 1) out *= -2;
    else if (e >= 3) return 0;
  }
  return out;
}

inline long dim_new(long N, long k) {
  require(N >= 1, Errc::bad_n, "level must be positive");
  require_even_weight(k);
  require(k >= 2, Errc::bad_weight, "new subspaces need k >= 2");
  long total = 0;
  for (long M : arith::divisors(N)) total += beta(N / M) * dim_gamma0(M, k, Space::cusp);
  return total;
}

inline long dim(long N, long k, Space space) {
  return space == Space::new_cusp ? dim_new(N, k) : dim_gamma0(N, k, space);
}

/// dim S_k(Gamma_0(N)) = sum_{M | N} sigma_0(N/M) dim S_k^new(Gamma_0(M)).
inline bool olddecomp_check(long N, long k) {
  long total = 0;
  for (long M : arith::divisors(N))
    total += static_cast<long>(arith::divisors(N / M).size()) * dim_new(M, k);
  return total == dim_gamma0(N, k, Space::cusp);
}

}  // namespace modforms::dims
