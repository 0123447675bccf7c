#pragma once

// Truncated q-expansions with exact rational coefficients.
//
// A QExp stores c_0..c_{prec-1} and represents
//     sum_{n < prec} c_n q^(n + offset) + O(q^(prec + offset)),
// where offset = offset_num/offset_den and offset_den divides 24. A negative
// offset gives a Laurent series (e.g. j = q^-1 + 744 + ...). Every operation
// reports only the precision that is mathematically justified by its inputs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "modforms/rational.hpp"

namespace modforms {

class QExp {
 public:
  /// The zero series known to O(q^0).
  QExp() : offset_(0) {}

  explicit QExp(std::vector<Rational> coeffs, Rational offset = 0)
      : coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
    offset_.canonicalize();
    if (24 % offset_.get_den() != 0)
      fail(Errc::incompatible_grid, "exponent offset denominator must divide 24, got " + to_string(offset_));
  }

  QExp(std::vector<Rational> coeffs, long offset_num, long offset_den)
      : QExp(std::move(coeffs), make_rational(offset_num, offset_den)) {}

  static QExp constant(const Rational& c, long prec) {
    require(prec >= 0, Errc::bad_input, "negative precision");
    std::vector<Rational> v(static_cast<std::size_t>(prec), 0);
    if (prec > 0) v[0] = c;
    return QExp(std::move(v));
  }

  static QExp one(long prec) { return constant(1, prec); }
  static QExp zero(long prec) { return constant(0, prec); }

  /// c * q^exponent, known up to (but excluding) q^(exponent + prec).
  static QExp monomial(const Rational& c, const Rational& exponent, long prec) {
    QExp out = constant(c, prec);
    out.offset_ = exponent;
    out.offset_.canonicalize();
    require(24 % out.offset_.get_den() == 0, Errc::incompatible_grid, "bad monomial exponent");
    return out;
  }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& offset() const noexcept { return offset_; }
  long offset_num() const { return to_long(offset_.get_num()); }
  long offset_den() const { return to_long(offset_.get_den()); }
  long prec() const noexcept { return static_cast<long>(coeffs_.size()); }

  /// Exponent bound: coefficients of q^e are known exactly for e < abs_prec().
  Rational abs_prec() const { return offset_ + prec(); }

  const Rational& operator[](long n) const { return coeffs_.at(static_cast<std::size_t>(n)); }

  /// Index of the first nonzero stored coefficient, or prec() if none.
  long valuation_index() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return static_cast<long>(i);
    return prec();
  }

  /// Exponent of the leading nonzero term (abs_prec() for an all-zero series).
  Rational valuation() const { return offset_ + valuation_index(); }

  bool is_zero() const { return valuation_index() == prec(); }

  /// Exact coefficient of q^exponent.
  Rational coefficient(const Rational& exponent) const {
    Rational idx = exponent - offset_;
    if (!is_integer(idx))
      fail(Errc::out_of_grid, "exponent " + to_string(exponent) + " is not on the grid " +
                                  to_string(offset_) + " + Z");
    if (idx < 0) return 0;
    if (idx >= prec())
      fail(Errc::out_of_precision,
           "exponent " + to_string(exponent) + " beyond precision " + to_string(abs_prec()));
    return coeffs_[static_cast<std::size_t>(idx.get_num().get_si())];
  }

  Rational coefficient(long exponent) const { return coefficient(Rational(exponent)); }

  /// The first `count` stored coefficients (starting at the offset).
  std::vector<Rational> head(long count) const {
    require(count <= prec(), Errc::out_of_precision, "head beyond precision");
    return {coeffs_.begin(), coeffs_.begin() + count};
  }

  /// Keep at most `count` stored coefficients.
  QExp truncate(long count) const {
    QExp out = *this;
    if (count < prec()) out.coeffs_.resize(static_cast<std::size_t>(std::max(count, 0L)));
    return out;
  }

  /// Re-express with a lower offset by prepending zero coefficients.
  QExp with_offset(const Rational& new_offset) const {
    Rational shift = offset_ - new_offset;
    if (!is_integer(shift) || shift < 0)
      fail(Errc::incompatible_grid,
           "cannot move offset " + to_string(offset_) + " to " + to_string(new_offset));
    long s = to_long(shift.get_num());
    std::vector<Rational> v(static_cast<std::size_t>(s), 0);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return QExp(std::move(v), new_offset);
  }

  /// Drop leading zero coefficients, moving the offset up.
  QExp normalized() const {
    long v = valuation_index();
    if (v == 0 || v == prec()) return *this;
    return QExp({coeffs_.begin() + v, coeffs_.end()}, offset_ + v);
  }

  /// Exact equality as truncated series: same precision and same coefficients.
  friend bool operator==(const QExp& f, const QExp& g) {
    if (f.abs_prec() != g.abs_prec()) return false;
    return agree(f, g);
  }

  /// True if f and g agree on every exponent both of them know.
  friend bool agree(const QExp& f, const QExp& g) {
    Rational diff = f.offset_ - g.offset_;
    if (!is_integer(diff)) return f.is_zero() && g.is_zero();
    Rational lo = std::min(f.offset_, g.offset_);
    Rational hi = std::min(f.abs_prec(), g.abs_prec());
    for (Rational e = lo; e < hi; e += 1) {
      Rational a = (e < f.offset_) ? Rational(0) : f.coefficient(e);
      Rational b = (e < g.offset_) ? Rational(0) : g.coefficient(e);
      if (a != b) return false;
    }
    return true;
  }

 private:
  std::vector<Rational> coeffs_;
  Rational offset_;
};

namespace detail {

inline std::size_t bit_length(const Integer& z) {
  return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

inline std::size_t count_nonzero(const std::vector<Integer>& a) {
  return static_cast<std::size_t>(
      std::count_if(a.begin(), a.end(), [](const Integer& z) { return z != 0; }));
}

/// Truncated product of integer sequences by direct convolution; zero terms are skipped.
inline std::vector<Integer> convolve_schoolbook(const std::vector<Integer>& a,
                                                const std::vector<Integer>& b, std::size_t len) {
  std::vector<Integer> out(len, 0);
  const auto& sparse = count_nonzero(a) <= count_nonzero(b) ? a : b;
  const auto& dense = (&sparse == &a) ? b : a;
  for (std::size_t i = 0; i < sparse.size() && i < len; ++i) {
    if (sparse[i] == 0) continue;
    std::size_t lim = std::min(dense.size(), len - i);
    for (std::size_t j = 0; j < lim; ++j)
      mpz_addmul(out[i + j].get_mpz_t(), sparse[i].get_mpz_t(), dense[j].get_mpz_t());
  }
  return out;
}

/// Packs nonnegative values into fixed-width limb slots of one big integer.
inline Integer kronecker_pack(const std::vector<Integer>& v, std::size_t slot_limbs) {
  std::vector<std::uint64_t> limbs(v.size() * slot_limbs, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    std::size_t count = 0;
    mpz_export(limbs.data() + i * slot_limbs, &count, -1, sizeof(std::uint64_t), 0, 0,
               v[i].get_mpz_t());
  }
  Integer out;
  mpz_import(out.get_mpz_t(), limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  return out;
}

inline std::vector<Integer> kronecker_unpack(const Integer& packed, std::size_t slot_limbs,
                                             std::size_t len) {
  std::size_t total = (mpz_sizeinbase(packed.get_mpz_t(), 2) + 63) / 64;
  std::vector<std::uint64_t> limbs(std::max(total, len * slot_limbs), 0);
  std::size_t count = 0;
  if (packed != 0)
    mpz_export(limbs.data(), &count, -1, sizeof(std::uint64_t), 0, 0, packed.get_mpz_t());
  std::vector<Integer> out(len);
  for (std::size_t i = 0; i < len; ++i)
    mpz_import(out[i].get_mpz_t(), slot_limbs, -1, sizeof(std::uint64_t), 0, 0,
               limbs.data() + i * slot_limbs);
  return out;
}

/// Truncated product by Kronecker substitution: the sequences are evaluated at
/// 2^(64 s) and multiplied as single integers (GMP switches to FFT multiplication
/// for large operands). Signs are handled by splitting into positive and negative parts.
inline std::vector<Integer> convolve_kronecker(std::vector<Integer> a, std::vector<Integer> b,
                                               std::size_t len) {
  if (a.size() > len) a.resize(len);
  if (b.size() > len) b.resize(len);
  if (a.empty() || b.empty()) return std::vector<Integer>(len, 0);
  auto split = [](const std::vector<Integer>& v) {
    std::vector<Integer> pos(v.size(), 0), neg(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] > 0) pos[i] = v[i];
      else if (v[i] < 0) neg[i] = -v[i];
    }
    return std::pair{pos, neg};
  };
  std::size_t bits_a = 0, bits_b = 0;
  for (const auto& z : a) bits_a = std::max(bits_a, bit_length(z));
  for (const auto& z : b) bits_b = std::max(bits_b, bit_length(z));
  std::size_t terms = std::min(a.size(), b.size());
  std::size_t log_terms = 0;
  while ((std::size_t{1} << log_terms) < terms) ++log_terms;
  std::size_t bits = bits_a + bits_b + log_terms + 2;
  std::size_t slot = (bits + 63) / 64;

  auto [ap, an] = split(a);
  auto [bp, bn] = split(b);
  Integer pa = kronecker_pack(ap, slot), na = kronecker_pack(an, slot);
  Integer pb = kronecker_pack(bp, slot), nb = kronecker_pack(bn, slot);
  Integer plus = pa * pb + na * nb;
  Integer minus = pa * nb + na * pb;
  auto up = kronecker_unpack(plus, slot, len);
  auto um = kronecker_unpack(minus, slot, len);
  for (std::size_t i = 0; i < len; ++i) up[i] -= um[i];
  return up;
}

}  // namespace detail

/// Series products switch from direct convolution to Kronecker substitution
/// above this many output terms; results are identical either way.
struct MulOptions {
  std::size_t kronecker_threshold = 4096;
};

/// Truncated integer convolution with the strategy selected by `opts`.
inline std::vector<Integer> convolve(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                     std::size_t len, MulOptions opts = {}) {
  std::size_t sparse = std::min(detail::count_nonzero(a), detail::count_nonzero(b));
  if (len <= opts.kronecker_threshold || sparse <= 64)
    return detail::convolve_schoolbook(a, b, len);
  return detail::convolve_kronecker(a, b, len);
}

namespace detail {

/// Common denominator and integer numerators of the first `len` coefficients.
inline std::pair<std::vector<Integer>, Integer> clear_denominators(const QExp& f, std::size_t len) {
  Integer den = 1;
  std::size_t n = std::min(len, static_cast<std::size_t>(f.prec()));
  for (std::size_t i = 0; i < n; ++i)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.coeffs()[i].get_den_mpz_t());
  std::vector<Integer> num(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& c = f.coeffs()[i];
    num[i] = c.get_num() * (den / c.get_den());
  }
  return {std::move(num), den};
}

inline std::vector<Rational> over_denominator(const std::vector<Integer>& num, const Integer& den) {
  std::vector<Rational> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = make_rational(num[i], den);
  return out;
}

}  // namespace detail

inline QExp operator-(const QExp& f) {
  std::vector<Rational> v = f.coeffs();
  for (auto& c : v) c = -c;
  return QExp(std::move(v), f.offset());
}

inline QExp add(const QExp& f, const QExp& g) {
  if (!is_integer(f.offset() - g.offset()))
    fail(Errc::incompatible_grid, "cannot add series with offsets " + to_string(f.offset()) +
                                      " and " + to_string(g.offset()));
  Rational lo = std::min(f.offset(), g.offset());
  Rational hi = std::min(f.abs_prec(), g.abs_prec());
  long count = std::max(0L, to_long(Rational(hi - lo).get_num()));
  QExp fa = f.with_offset(lo), ga = g.with_offset(lo);
  std::vector<Rational> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) v[i] = fa[i] + ga[i];
  return QExp(std::move(v), lo);
}

inline QExp scale(const Rational& c, const QExp& f) {
  std::vector<Rational> v = f.coeffs();
  for (auto& x : v) x *= c;
  return QExp(std::move(v), f.offset());
}

inline QExp sub(const QExp& f, const QExp& g) { return add(f, -g); }

/// Cauchy product. Precision: min(A_f + v_g, A_g + v_f) in absolute exponents,
/// where A is the precision bound and v the exponent of the leading nonzero term.
inline QExp mul(const QExp& f, const QExp& g, MulOptions opts = {}) {
  Rational offset = f.offset() + g.offset();
  Rational bound = std::min(f.abs_prec() + g.valuation(), g.abs_prec() + f.valuation());
  long len = std::max(0L, to_long(Rational(bound - offset).get_num()));
  auto [fn, fd] = detail::clear_denominators(f, static_cast<std::size_t>(len));
  auto [gn, gd] = detail::clear_denominators(g, static_cast<std::size_t>(len));
  auto prod = convolve(fn, gn, static_cast<std::size_t>(len), opts);
  return QExp(detail::over_denominator(prod, fd * gd), offset);
}

inline QExp operator+(const QExp& f, const QExp& g) { return add(f, g); }
inline QExp operator-(const QExp& f, const QExp& g) { return sub(f, g); }
inline QExp operator*(const QExp& f, const QExp& g) { return mul(f, g); }
inline QExp operator*(const Rational& c, const QExp& f) { return scale(c, f); }

/// Multiplicative inverse. The leading nonzero coefficient must exist.
inline QExp inv(const QExp& f) {
  long v = f.valuation_index();
  require(v < f.prec(), Errc::zero_leading_coefficient, "cannot invert a series with no nonzero term");
  QExp g = f.normalized();
  long r = g.prec();
  auto [num, den] = detail::clear_denominators(g, static_cast<std::size_t>(r));
  // With G = den * g integral and c = G_0: H_n = c^(n+1) h_n satisfies
  // H_0 = 1, H_n = -sum_{i=1}^n G_i c^(i-1) H_{n-i}, and 1/g = den * h.
  const Integer& c = num[0];
  std::vector<Integer> cpow(static_cast<std::size_t>(r) + 1);
  cpow[0] = 1;
  for (long i = 1; i <= r; ++i) cpow[i] = cpow[i - 1] * c;
  std::vector<Integer> scaled(static_cast<std::size_t>(r));  // G_i c^(i-1)
  for (long i = 1; i < r; ++i) scaled[i] = num[i] * cpow[i - 1];
  std::vector<Integer> H(static_cast<std::size_t>(r), 0);
  if (r > 0) H[0] = 1;
  for (long n = 1; n < r; ++n) {
    Integer acc = 0;
    for (long i = 1; i <= n; ++i)
      if (num[i] != 0) mpz_addmul(acc.get_mpz_t(), scaled[i].get_mpz_t(), H[n - i].get_mpz_t());
    H[n] = -acc;
  }
  std::vector<Rational> out(static_cast<std::size_t>(r));
  for (long n = 0; n < r; ++n) out[n] = make_rational(H[n] * den, cpow[n + 1]);
  return QExp(std::move(out), -g.offset());
}

inline QExp div(const QExp& f, const QExp& g) { return mul(f, inv(g)); }
inline QExp operator/(const QExp& f, const QExp& g) { return div(f, g); }

/// Binary powering; pow(f, 0) is 1 known to the relative precision of f.
inline QExp pow(const QExp& f, unsigned long m, MulOptions opts = {}) {
  long rel = f.prec() - f.valuation_index();
  QExp result = QExp::one(std::max(rel, 1L));
  if (m == 0) return result;
  QExp base = f;
  bool first = true;
  while (m > 0) {
    if (m & 1) {
      result = first ? base : mul(result, base, opts);
      first = false;
    }
    m >>= 1;
    if (m > 0) base = mul(base, base, opts);
  }
  return result;
}

/// Integer power, negative exponents through inv.
inline QExp pow_signed(const QExp& f, long m) {
  if (m >= 0) return pow(f, static_cast<unsigned long>(m));
  return pow(inv(f), static_cast<unsigned long>(-m));
}

/// D = q d/dq: c_n q^e -> e c_n q^e.
inline QExp qderive(const QExp& f) {
  std::vector<Rational> v = f.coeffs();
  for (std::size_t n = 0; n < v.size(); ++n) v[n] *= f.offset() + static_cast<long>(n);
  return QExp(std::move(v), f.offset());
}

/// f(q^d): exponents multiplied by d.
inline QExp substitute_qm(const QExp& f, long d) {
  require(d >= 1, Errc::bad_input, "substitute_qm expects d >= 1");
  std::vector<Rational> v(static_cast<std::size_t>(f.prec() * d), 0);
  for (long n = 0; n < f.prec(); ++n) v[n * d] = f[n];
  return QExp(std::move(v), f.offset() * d);
}

/// Apply a coefficient map c_n -> op(exponent, c_n).
template <typename Op>
QExp map_coefficients(const QExp& f, Op op) {
  std::vector<Rational> v = f.coeffs();
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = op(f.offset() + static_cast<long>(n), v[n]);
  return QExp(std::move(v), f.offset());
}

/// prod_{n>=1} (1 - q^n) via the pentagonal number theorem, `prec` terms from q^0.
inline std::vector<Integer> euler_product_coeffs(long prec) {
  std::vector<Integer> v(static_cast<std::size_t>(std::max(prec, 0L)), 0);
  if (prec > 0) v[0] = 1;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 >= prec) break;
    int sign = (k % 2 == 0) ? 1 : -1;
    v[e1] += sign;
    if (e2 < prec) v[e2] += sign;
  }
  return v;
}

/// eta(tau) = q^(1/24) prod (1 - q^n), expanded by the pentagonal number theorem.
inline QExp pentagonal_eta(long prec) {
  auto v = euler_product_coeffs(prec);
  std::vector<Rational> c(v.begin(), v.end());
  return QExp(std::move(c), 1, 24);
}

/// eta(tau)^3 = q^(1/8) sum_{k>=0} (-1)^k (2k+1) q^(k(k+1)/2).
inline QExp jacobi_eta_cube(long prec) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(prec, 0L)), 0);
  for (long k = 0; k * (k + 1) / 2 < prec; ++k) c[k * (k + 1) / 2] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  return QExp(std::move(c), 1, 8);
}

struct EtaFactor {
  long m;  ///< eta(m tau)
  long r;  ///< exponent
};

/// prod eta(m tau)^r, `prec` coefficients from the offset sum m r / 24.
inline QExp eta_quotient(const std::vector<EtaFactor>& factors, long prec) {
  require(!factors.empty(), Errc::bad_input, "eta quotient needs at least one factor");
  require(prec >= 1, Errc::bad_input, "eta quotient needs prec >= 1");
  QExp out = QExp::one(prec);
  for (const auto& [m, r] : factors) {
    require(m >= 1, Errc::bad_input, "eta(m tau) needs m >= 1");
    if (r == 0) continue;
    QExp eta_m = substitute_qm(pentagonal_eta((prec + m - 1) / m), m).truncate(prec);
    out = mul(out, pow_signed(eta_m, r)).truncate(prec);
  }
  return out;
}

}  // namespace modforms
