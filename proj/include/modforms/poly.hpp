#pragma once

// Dense univariate polynomials over Q, low degree first.

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "modforms/rational.hpp"

namespace modforms {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly x() { return Poly({0, 1}); }
  static Poly constant(const Rational& a) { return Poly({a}); }

  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator[](long i) const {
    return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
  }

  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  template <typename T>
  T eval(const T& x) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if constexpr (std::is_constructible_v<T, Rational>) acc = acc * x + T(*it);
      else acc = acc * x + T(static_cast<long double>(it->get_d()));
    }
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
    for (long i = 0; i < static_cast<long>(v.size()); ++i) v[i] = a[i] + b[i];
    return Poly(std::move(v));
  }

  friend Poly operator-(const Poly& a) {
    std::vector<Rational> v = a.c_;
    for (auto& x : v) x = -x;
    return Poly(std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(static_cast<std::size_t>(a.degree() + b.degree() + 1), 0);
    for (long i = 0; i <= a.degree(); ++i)
      for (long j = 0; j <= b.degree(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
  }

  friend Poly operator*(const Rational& s, const Poly& a) { return Poly::constant(s) * a; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Human-readable form in the variable `var`, highest degree first, e.g. "x^2 - 1080*x - 20468736".
  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
      const Rational& a = c_[i];
      if (a == 0) continue;
      Rational mag = abs(a);
      if (out.empty()) out += (a < 0 ? "-" : "");
      else out += (a < 0 ? " - " : " + ");
      std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
      if (mono.empty()) out += modforms::to_string(mag);
      else if (mag == 1) out += mono;
      else out += modforms::to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// b^2 - 4ac of a quadratic.
inline Rational quadratic_discriminant(const Poly& p) {
  require(p.degree() == 2, Errc::bad_input, "discriminant expects a quadratic");
  return p[1] * p[1] - 4 * p[2] * p[0];
}

/// Irreducibility over Q for degree <= 2: constants are not irreducible, linear
/// polynomials are, and a quadratic is iff its discriminant is not a rational square.
inline bool is_irreducible_low_degree(const Poly& p) {
  require(p.degree() <= 2, Errc::unsupported_dimension, "exact irreducibility test only up to degree 2");
  if (p.degree() <= 0) return false;
  if (p.degree() == 1) return true;
  return !is_rational_square(quadratic_discriminant(p));
}

}  // namespace modforms
