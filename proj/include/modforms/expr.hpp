#pragma once

// Small expression language naming forms, e.g. "(E4^3-E6^2)/1728" or "eta(1)^2*eta(11)^2".
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' int] | integer | '(' expr ')'
//   atom   := 'E' int | 'E2' | 'Delta' | 'theta' | 'j' | 'eta' '(' int ')'
//
// Exponents may carry a sign. Rational scalars are written with '/'.

#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>

#include "modforms/forms.hpp"
#include "modforms/numeric.hpp"

namespace modforms::expr {

/// Syntax errors remember where parsing stopped, as a 1-based character position.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t index, const std::string& what)
      : Error(code, "offset " + std::to_string(index + 1) + ": " + what), offset_(index + 1) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

enum class Kind { number, atom, add, sub, mul, div, pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::number;
  Integer value;      ///< number
  std::string atom;   ///< "E", "Delta", "theta", "j", "eta"
  long param = 0;     ///< weight for E, m for eta
  long exponent = 1;  ///< pow
  NodePtr lhs, rhs;   ///< binary operands; pow keeps its base in lhs
};

inline bool operator==(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::number: return a.value == b.value;
    case Kind::atom: return a.atom == b.atom && a.param == b.param;
    case Kind::pow: return a.exponent == b.exponent && *a.lhs == *b.lhs;
    default: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
}

namespace detail {

inline NodePtr make_binary(Kind k, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    if (s_.find_first_not_of(" \t") == std::string_view::npos)
      throw ParseError(Errc::syntax_error, 0, "empty expression");
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const { throw ParseError(Errc::syntax_error, pos_, what); }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  Integer digits() {
    if (!at_digit()) error("expected an integer");
    std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  long small_int(bool allow_sign) {
    skip();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    Integer v = digits();
    if (!v.fits_slong_p() || v > 1000000) throw ParseError(Errc::syntax_error, start, "integer too large");
    long x = v.get_si();
    return neg ? -x : x;
  }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      if (accept('+')) l = make_binary(Kind::add, l, term());
      else if (accept('-')) l = make_binary(Kind::sub, l, term());
      else return l;
    }
  }

  NodePtr term() {
    NodePtr l = factor();
    for (;;) {
      if (accept('*')) l = make_binary(Kind::mul, l, factor());
      else if (accept('/')) l = make_binary(Kind::div, l, factor());
      else return l;
    }
  }

  NodePtr factor() {
    skip();
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (at_digit()) {
      auto n = std::make_shared<Node>();
      n->value = digits();
      return n;
    }
    NodePtr a = atom();
    if (accept('^')) {
      auto p = std::make_shared<Node>();
      p->kind = Kind::pow;
      p->exponent = small_int(true);
      p->lhs = a;
      return p;
    }
    return a;
  }

  NodePtr atom() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name.empty()) {
      if (pos_ == s_.size()) error("unexpected end of input");
      error("unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::atom;
    n->atom = name;
    if (name == "E") {
      if (!at_digit()) throw ParseError(Errc::syntax_error, pos_, "expected weight after 'E'");
      Integer k = digits();
      if (!k.fits_slong_p() || k > 100000) throw ParseError(Errc::syntax_error, start, "weight too large");
      n->param = k.get_si();
    } else if (name == "eta") {
      expect('(');
      n->param = small_int(false);
      if (n->param < 1) throw ParseError(Errc::syntax_error, pos_, "eta(m) needs m >= 1");
      expect(')');
    } else if (name != "Delta" && name != "theta" && name != "j") {
      throw ParseError(Errc::unknown_atom, start, "unknown atom '" + name + "'");
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError(Errc::unknown_atom, start, "unknown atom '" + name + std::string(1, s_[pos_]) + "...'");
    return n;
  }
};

inline int precedence(Kind k) {
  switch (k) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    default: return 3;
  }
}

inline std::string unparse_node(const Node& n) {
  switch (n.kind) {
    case Kind::number: return to_string(n.value);
    case Kind::atom:
      if (n.atom == "E") return "E" + std::to_string(n.param);
      if (n.atom == "eta") return "eta(" + std::to_string(n.param) + ")";
      return n.atom;
    case Kind::pow: return unparse_node(*n.lhs) + "^" + std::to_string(n.exponent);
    default: break;
  }
  int p = precedence(n.kind);
  std::string l = unparse_node(*n.lhs), r = unparse_node(*n.rhs);
  if (precedence(n.lhs->kind) < p) l = "(" + l + ")";
  if (precedence(n.rhs->kind) <= p) r = "(" + r + ")";
  const char* op = n.kind == Kind::add ? "+" : n.kind == Kind::sub ? "-" : n.kind == Kind::mul ? "*" : "/";
  return l + op + r;
}

}  // namespace detail

inline NodePtr parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Canonical text with minimal parentheses; parse(unparse(t)) == t.
inline std::string unparse(const Node& n) { return detail::unparse_node(n); }

// ---------------------------------------------------------------------------
// Type inference

struct FormType {
  std::optional<long> weight2;  ///< twice the weight, unknown for inhomogeneous sums
  std::optional<long> level;
  long character = 0;
  bool quasi = false;  ///< involves E2
  bool has_pole = false;  ///< involves j or division by a non-constant
  std::optional<std::map<long, long>> eta;  ///< m -> r_m when the expression is c * prod eta(m tau)^r_m
};

namespace detail {

inline long squarefree_kernel(Integer n) {
  long out = 1;
  for (long p = 2; Integer(p) * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return out * to_long(n);
}

/// Smallest N with prod eta(m tau)^r_m on Gamma0(N), or nothing if the quotient carries a multiplier.
inline std::optional<long> eta_level(const std::map<long, long>& r) {
  long L = 1, sum_mr = 0, weight2 = 0;
  for (auto [m, e] : r) {
    if (e == 0) continue;
    L = std::lcm(L, m);
    sum_mr += m * e;
    weight2 += e;
  }
  if (weight2 % 2 != 0 || sum_mr % 24 != 0) return std::nullopt;
  for (long t = 1; t <= 24; ++t) {
    long N = L * t, s = 0;
    for (auto [m, e] : r) s += (N / m) * e;
    if (s % 24 == 0) return N;
  }
  return std::nullopt;
}

/// Kronecker label of the quadratic character of an eta quotient, 0 if trivial.
inline long eta_character(const std::map<long, long>& r) {
  long weight2 = 0;
  Integer num = 1, den = 1;
  for (auto [m, e] : r) {
    weight2 += e;
    if (e > 0) num *= ipow(m, static_cast<unsigned long>(e) % 2);
    if (e < 0) den *= ipow(m, static_cast<unsigned long>(-e) % 2);
  }
  long d = squarefree_kernel(num * den);
  if ((weight2 / 2) % 2 != 0) d = -d;
  if (d == 1) return 0;
  return ((d % 4) + 4) % 4 == 1 ? d : 4 * d;
}

inline std::optional<long> lcm_opt(const std::optional<long>& a, const std::optional<long>& b) {
  if (!a || !b) return std::nullopt;
  return std::lcm(*a, *b);
}

inline FormType finish_eta(FormType t) {
  if (!t.eta) return t;
  if (t.weight2 && *t.weight2 % 2 == 0) {
    if (auto N = eta_level(*t.eta)) {
      t.level = N;
      t.character = eta_character(*t.eta);
    }
  }
  return t;
}

inline FormType infer(const Node& n) {
  FormType t;
  switch (n.kind) {
    case Kind::number:
      t.weight2 = 0;
      t.level = 1;
      t.eta = std::map<long, long>{};
      return t;
    case Kind::atom:
      if (n.atom == "E") {
        if (n.param == 2) {
          t.weight2 = 4;
          t.level = 1;
          t.quasi = true;
          return t;
        }
        require(n.param >= 4 && n.param % 2 == 0, Errc::bad_weight,
                "E" + std::to_string(n.param) + ": weight must be even and >= 4 (or 2)");
        t.weight2 = 2 * n.param;
        t.level = 1;
        return t;
      }
      if (n.atom == "Delta") {
        t.weight2 = 24;
        t.level = 1;
        t.eta = std::map<long, long>{{1, 24}};
        return t;
      }
      if (n.atom == "theta") {
        t.weight2 = 1;
        t.level = 4;
        t.eta = std::map<long, long>{{1, -2}, {2, 5}, {4, -2}};
        return t;
      }
      if (n.atom == "j") {
        t.weight2 = 0;
        t.level = 1;
        t.has_pole = true;
        return t;
      }
      t.weight2 = 1;
      t.eta = std::map<long, long>{{n.param, 1}};
      return t;
    case Kind::pow: {
      FormType b = infer(*n.lhs);
      if (b.weight2) t.weight2 = *b.weight2 * n.exponent;
      t.level = b.level;
      t.character = n.exponent % 2 == 0 ? 0 : b.character;
      t.quasi = b.quasi;
      t.has_pole = b.has_pole || n.exponent < 0;
      if (b.eta) {
        t.eta = std::map<long, long>{};
        for (auto [m, e] : *b.eta) (*t.eta)[m] = e * n.exponent;
      }
      return finish_eta(t);
    }
    default: break;
  }
  FormType a = infer(*n.lhs), b = infer(*n.rhs);
  t.quasi = a.quasi || b.quasi;
  t.level = lcm_opt(a.level, b.level);
  if (n.kind == Kind::add || n.kind == Kind::sub) {
    if (a.weight2 && b.weight2 && *a.weight2 == *b.weight2) t.weight2 = a.weight2;
    t.character = a.character == b.character ? a.character : 0;
    t.has_pole = a.has_pole || b.has_pole;
    return t;
  }
  bool div = n.kind == Kind::div;
  if (a.weight2 && b.weight2) t.weight2 = div ? *a.weight2 - *b.weight2 : *a.weight2 + *b.weight2;
  t.character = a.character == b.character ? 0 : (a.character == 0 ? b.character : (b.character == 0 ? a.character : 0));
  bool b_constant = n.rhs->kind == Kind::number;
  t.has_pole = a.has_pole || b.has_pole || (div && !b_constant);
  if (a.eta && b.eta) {
    t.eta = *a.eta;
    for (auto [m, e] : *b.eta) (*t.eta)[m] += div ? -e : e;
    for (auto it = t.eta->begin(); it != t.eta->end();)
      it = it->second == 0 ? t.eta->erase(it) : std::next(it);
    // An eta quotient may be holomorphic even when its pieces are not individually on Gamma0(N).
    if (!t.level && t.weight2 && *t.weight2 % 2 == 0) t.level = eta_level(*t.eta);
  }
  return finish_eta(t);
}

}  // namespace detail

inline FormType infer_type(const Node& n) { return detail::infer(n); }

// ---------------------------------------------------------------------------
// Series

namespace detail {

inline QExp atom_series(const Node& n, long prec) {
  if (n.atom == "E") return n.param == 2 ? eisenstein_E2(prec).series : eisenstein_E(n.param, prec).series;
  if (n.atom == "Delta") return delta(prec).series;
  if (n.atom == "theta") return theta(prec).series;
  if (n.atom == "j") return jfunction(prec).series;
  return eta_quotient({{n.param, 1}}, prec);
}

inline QExp series_at(const Node& n, long prec) {
  switch (n.kind) {
    case Kind::number: return QExp::constant(Rational(n.value), prec);
    case Kind::atom: return atom_series(n, prec);
    case Kind::pow: return pow_signed(series_at(*n.lhs, prec), n.exponent);
    case Kind::add: return add(series_at(*n.lhs, prec), series_at(*n.rhs, prec));
    case Kind::sub: return sub(series_at(*n.lhs, prec), series_at(*n.rhs, prec));
    case Kind::mul: return mul(series_at(*n.lhs, prec), series_at(*n.rhs, prec));
    case Kind::div: return div(series_at(*n.lhs, prec), series_at(*n.rhs, prec));
  }
  fail(Errc::internal_inconsistency, "bad expression node");
}

}  // namespace detail

/// q-expansion with at least `terms` coefficients from the leading term onwards.
inline QExp series(const Node& n, long terms) {
  require(terms >= 1, Errc::bad_input, "need at least one term");
  for (long prec = terms + 2;; prec = 2 * prec) {
    QExp f = detail::series_at(n, prec).normalized();
    if (f.prec() >= terms) return f.truncate(terms);
    require(prec < 64 * (terms + 8), Errc::insufficient_precision, "expression loses too much precision");
  }
}

/// The expression as a NamedForm; unknown weight or level is recorded as 0.
inline NamedForm named_form(const Node& n, long terms) {
  FormType t = infer_type(n);
  FormDesc d;
  d.weight2 = t.weight2.value_or(0);
  d.level = t.level.value_or(0);
  d.character = t.character;
  d.modular = !t.quasi && !t.has_pole && t.weight2.has_value();
  QExp s = series(n, terms);
  d.cuspidal = d.modular && !s.is_zero() && s.valuation() > 0 && d.level == 1;
  if (!t.quasi && t.eta && t.level && t.weight2) {
    // Order at the cusp 1/c for c | N is proportional to sum_m gcd(c, m)^2 r_m / m.
    bool holomorphic = true, cusp = true;
    for (long c : arith::divisors(*t.level)) {
      Rational ord = 0;
      for (auto [m, e] : *t.eta) ord += Rational(std::gcd(c, m) * std::gcd(c, m) * e) / m;
      holomorphic = holomorphic && ord >= 0;
      cusp = cusp && ord > 0;
    }
    d.modular = holomorphic;
    d.cuspidal = holomorphic && cusp;
  }
  return {d, std::move(s), unparse(n)};
}

// ---------------------------------------------------------------------------
// Numerical values

inline num::Complex value(const Node& n, const num::Complex& tau, const num::EvalContext& ctx) {
  using num::Complex;
  switch (n.kind) {
    case Kind::number: return Complex(num::Real(Rational(n.value), ctx.bits()));
    case Kind::atom:
      if (n.atom == "E") {
        require(n.param == 2 || (n.param >= 4 && n.param % 2 == 0), Errc::bad_weight, "bad Eisenstein weight");
        return num::eisenstein_value(n.param, tau, ctx);
      }
      if (n.atom == "Delta") return num::delta_value(tau, ctx);
      if (n.atom == "theta") return num::theta_value(tau, ctx);
      if (n.atom == "j") return num::j_value(tau, ctx);
      return num::eta_value(tau * n.param, ctx);
    case Kind::pow: return num::pow(value(*n.lhs, tau, ctx), n.exponent);
    case Kind::add: return value(*n.lhs, tau, ctx) + value(*n.rhs, tau, ctx);
    case Kind::sub: return value(*n.lhs, tau, ctx) - value(*n.rhs, tau, ctx);
    case Kind::mul: return value(*n.lhs, tau, ctx) * value(*n.rhs, tau, ctx);
    case Kind::div: return value(*n.lhs, tau, ctx) / value(*n.rhs, tau, ctx);
  }
  fail(Errc::internal_inconsistency, "bad expression node");
}

}  // namespace modforms::expr
