// modforms: command-line access to the library.
//
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "modforms/expr.hpp"
#include "modforms/json.hpp"
#include "suites.hpp"

using namespace modforms;

namespace {

constexpr int kUsage = 1, kDomain = 2, kVerify = 3;

struct Options {
  bool json = false;
  long digits = 38;
};

/// A failed verification, reported with exit code 3.
struct VerificationFailure {
  std::string what;
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

num::EvalContext context(const Options& o) {
  num::EvalContext ctx{o.digits, 12};
  num::validate(ctx);
  return ctx;
}

num::Complex parse_tau(const std::string& text, const num::EvalContext& ctx) {
  // "x+yi", "x-yi", "yi", "x"
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  require(!s.empty(), Errc::bad_input, "empty tau");
  std::string re = "0", im = "0";
  if (s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = body.find_last_of("+-");
    while (split != std::string::npos && split > 0 && (body[split - 1] == 'e' || body[split - 1] == 'E'))
      split = body.find_last_of("+-", split - 1);
    if (split == std::string::npos || split == 0) {
      im = body;
    } else {
      re = body.substr(0, split);
      im = body.substr(split);
    }
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    if (im[0] == '+') im = im.substr(1);
  } else {
    re = s;
  }
  return ctx.complex(re, im);
}

Json nullable(const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); }

// ---------------------------------------------------------------------------

int cmd_coeffs(const Options& o, const std::string& text, long terms) {
  auto node = expr::parse(text);
  auto type = expr::infer_type(*node);
  NamedForm f = expr::named_form(*node, terms);
  std::vector<std::string> c;
  for (const auto& x : f.series.coeffs()) c.push_back(to_string(x));
  if (o.json) {
    Json j = form_json(f);
    j["weight2"] = nullable(type.weight2);
    j["level"] = nullable(type.level);
    j["quasi_modular"] = type.quasi;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "offset: " << to_string(f.series.offset()) << "\n" << join(c, ", ") << "\n";
  }
  return 0;
}

int cmd_dim(const Options& o, long level, long weight, const std::string& space) {
  long d = dims::dim(level, weight, dims::parse_space(space));
  if (o.json)
    std::cout << Json{{"level", level}, {"weight", weight}, {"space", space}, {"dim", d}}.dump() << "\n";
  else
    std::cout << d << "\n";
  return 0;
}

int cmd_tau(const Options& o, long upto, std::optional<long> n, const std::string& method, const std::string& out) {
  std::ostringstream s;
  if (n) {
    Integer v = tau(*n);
    if (o.json)
      s << Json{{"n", *n}, {"tau", to_string(v)}}.dump() << "\n";
    else
      s << *n << "\t" << v << "\n";
  } else {
    TauTable t = tau_table(upto, parse_tau_method(method));
    if (o.json) {
      Json a = Json::array();
      for (long i = 1; i <= upto; ++i) a.push_back(to_string(t(i)));
      s << a.dump() << "\n";
    } else {
      for (long i = 1; i <= upto; ++i) s << i << "\t" << t(i) << "\n";
    }
  }
  if (out.empty()) {
    std::cout << s.str();
  } else {
    std::ofstream f(out);
    require(static_cast<bool>(f), Errc::bad_input, "cannot write " + out);
    f << s.str();
  }
  return 0;
}

int cmd_hecke(const Options& o, long k, long n, bool matrix, bool eigen, bool on_j, long terms) {
  require(int(matrix) + int(eigen) + int(on_j) == 1, Errc::bad_input, "choose exactly one of --matrix, --eigen, --on-j");
  if (matrix) {
    RatMatrix m = hecke_matrix(k, n);
    if (o.json) {
      std::cout << matrix_json(m).dump() << "\n";
    } else {
      for (long i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row;
        for (long j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        std::cout << join(row, " ") << "\n";
      }
    }
    return 0;
  }
  if (on_j) {
    Poly p = tn_on_j(n);
    if (o.json) {
      Json c = Json::array();
      for (const auto& x : p.coeffs()) c.push_back(rational_json(x));
      std::cout << Json{{"n", n}, {"coeffs", c}, {"poly", p.to_string("j")}}.dump() << "\n";
    } else {
      std::cout << p.to_string("j") << "\n";
    }
    return 0;
  }
  auto forms = eigenforms(k, std::max(terms + 1, 3L));
  Json all = Json::array();
  for (const auto& e : forms) {
    Json j{{"weight", e.weight}, {"charpoly", e.charpoly.to_string("x")}};
    std::string ev;
    if (e.eigenvalue) {
      ev = e.eigenvalue->to_string();
    } else if (e.approx) {
      std::ostringstream s;
      s.precision(18);
      s << e.approx->real();
      if (e.approx->imag() != 0) s << (e.approx->imag() < 0 ? " - " : " + ") << std::abs(e.approx->imag()) << "i";
      ev = s.str();
    }
    j["eigenvalue_T2"] = ev;
    j["exact"] = e.eigenvalue.has_value();
    std::vector<std::string> coeffs;
    if (e.series)
      for (long m = 1; m <= terms; ++m) coeffs.push_back(e.series->coefficient(m).to_string());
    j["coefficients"] = coeffs;
    all.push_back(j);
    if (!o.json) {
      std::cout << "charpoly(T2): " << e.charpoly.to_string("x") << "\n"
                << "eigenvalue: " << ev << (e.eigenvalue ? "" : " (numeric)") << "\n";
      if (e.series) std::cout << "q-expansion: " << join(coeffs, ", ") << "\n";
    }
  }
  if (o.json) std::cout << all.dump() << "\n";
  if (forms.empty() && !o.json) std::cout << "S_" << k << " = 0\n";
  return 0;
}

int cmd_lvalue(const Options& o, const std::string& text, std::optional<long> s_opt, std::optional<long> level_opt,
               const std::string& epsilon) {
  auto ctx = context(o);
  auto node = expr::parse(text);
  auto type = expr::infer_type(*node);
  require(type.weight2 && *type.weight2 % 2 == 0, Errc::bad_weight, "L-values need an integral weight");
  long k = *type.weight2 / 2;
  long N = level_opt ? *level_opt : type.level.value_or(0);
  require(N >= 1, Errc::bad_input, "cannot infer the level; pass --level");
  num::FormMaker make = [node, N](long p) {
    NamedForm f = expr::named_form(*node, p);
    f.desc.level = N;
    return f;
  };
  NamedForm probe = make(64);
  require(probe.desc.cuspidal, Errc::bad_input, "L-values need a cusp form");
  int eps = 1;
  if (epsilon == "auto") {
    if (N > 1) eps = num::fricke_sign(make, N, ctx);
  } else if (epsilon == "1" || epsilon == "+1") {
    eps = 1;
  } else if (epsilon == "-1") {
    eps = -1;
  } else {
    fail(Errc::bad_input, "--epsilon must be auto, 1 or -1");
  }
  long M = num::lambda_terms(probe.series, k, N, ctx);
  NamedForm f = make(M + 2);
  std::vector<long> points;
  if (s_opt)
    points.push_back(*s_opt);
  else
    for (long s = 1; s <= k - 1; ++s) points.push_back(s);
  Json all = Json::array();
  for (long s : points) {
    num::Real v = num::lambda_levelN(f, k, N, eps, s, ctx);
    if (o.json)
      all.push_back({{"s", s}, {"lambda", v.to_string(ctx.digits)}});
    else
      std::cout << "Lambda(" << s << ") = " << v.to_string(ctx.digits) << "\n";
  }
  if (o.json)
    std::cout << Json{{"form", expr::unparse(*node)}, {"weight", k}, {"level", N}, {"epsilon", eps},
                      {"digits", ctx.digits}, {"values", all}}.dump()
              << "\n";
  return 0;
}

int cmd_eval(const Options& o, const std::string& text, const std::string& tau_text) {
  auto ctx = context(o);
  auto node = expr::parse(text);
  num::Complex tau = parse_tau(tau_text, ctx);
  num::require_upper(tau);
  num::Complex v = expr::value(*node, tau, ctx);
  std::string re = v.re().to_string(ctx.digits), im = v.im().to_string(ctx.digits);
  if (o.json)
    std::cout << Json{{"form", expr::unparse(*node)}, {"tau", tau_text}, {"digits", ctx.digits}, {"re", re}, {"im", im}}.dump()
              << "\n";
  else
    std::cout << "re: " << re << "\nim: " << im << "\n";
  return 0;
}

int cmd_cm(const Options& o, const std::string& point, bool table) {
  auto ctx = context(o);
  if (table) {
    auto reports = num::cm_j_report(ctx);
    Json all = Json::array();
    bool pass = true;
    for (const auto& r : reports) {
      pass = pass && r.pass;
      all.push_back(report_json(r));
      if (!o.json) std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " = " << r.expected << "\n";
    }
    if (o.json) std::cout << all.dump(2) << "\n";
    if (!pass) throw VerificationFailure{"CM table mismatch"};
    return 0;
  }
  num::CMPoint p = num::parse_cm_point(point);
  num::Complex j = num::cm_j(p, ctx);
  std::string re = j.re().to_string(ctx.digits), im = j.im().to_string(ctx.digits);
  if (o.json)
    std::cout << Json{{"point", p.to_string()}, {"digits", ctx.digits}, {"re", re}, {"im", im}}.dump() << "\n";
  else
    std::cout << "j(" << p.to_string() << ")\nre: " << re << "\nim: " << im << "\n";
  return 0;
}

int cmd_rk(const Options& o, long k, long n, bool verify) {
  Integer r = rk_formula(k, n);
  std::optional<Integer> brute;
  if (verify) brute = rk_bruteforce(k, n);
  if (o.json) {
    Json j{{"k", k}, {"n", n}, {"r", to_string(r)}};
    if (brute) j["lattice_count"] = to_string(*brute);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << r << "\n";
    if (brute) std::cout << "lattice count: " << *brute << "\n";
  }
  if (brute && *brute != r) throw VerificationFailure{"formula and lattice count differ"};
  return 0;
}

int cmd_zetak(const Options& o, long D) {
  Rational z1 = arith::zeta_k_special(D, 1), z3 = arith::zeta_k_special(D, 3);
  if (o.json)
    std::cout << Json{{"disc", D}, {"zeta_K(-1)", to_string(z1)}, {"zeta_K(-3)", to_string(z3)}}.dump() << "\n";
  else
    std::cout << "zeta_K(-1) = " << z1 << "\nzeta_K(-3) = " << z3 << "\n";
  return 0;
}

int cmd_check(const Options& o, const std::string& suite) {
  std::vector<cli::SuiteEntry> entries;
  auto ctx = context(o);
  if (suite == "identities")
    entries = cli::identities_suite();
  else if (suite == "numeric")
    entries = cli::numeric_suite(ctx);
  else if (suite == "oracles")
    entries = cli::oracles_suite();
  else
    fail(Errc::bad_input, "unknown suite '" + suite + "'");
  Json results = Json::array();
  bool pass = true;
  for (const auto& e : entries) {
    Json r;
    try {
      r = e.run();
    } catch (const Error& err) {
      r = cli::exact_entry(e.check, false);
      r["error"] = err.what();
    }
    pass = pass && r["pass"].get<bool>();
    results.push_back(r);
  }
  std::cout << Json{{"suite", suite}, {"pass", pass}, {"results", results}}.dump(2) << "\n";
  if (!pass) throw VerificationFailure{"suite " + suite + " failed"};
  return 0;
}

int cmd_bench(const Options& o, long upto) {
  // Timings vary between runs; everything else is deterministic.
  TauTable ref = tau_table(upto, TauMethod::series);
  Json all = Json::array();
  for (TauMethod m : {TauMethod::series, TauMethod::recursion, TauMethod::pentagonal, TauMethod::triangular,
                      TauMethod::sigma, TauMethod::hybrid}) {
    auto t0 = std::chrono::steady_clock::now();
    TauTable t = tau_table(upto, m);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool agree = t.values == ref.values;
    all.push_back({{"method", tau_method_name(m)}, {"seconds", secs}, {"agrees", agree}});
    if (!o.json) std::cout << tau_method_name(m) << "\t" << secs << "\t" << (agree ? "agree" : "DIFFER") << "\n";
    if (!agree) throw VerificationFailure{"tau methods disagree"};
  }
  if (o.json) std::cout << Json{{"upto", upto}, {"methods", all}}.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical computations with modular forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  if (const char* env = std::getenv("MODFORMS_PREC")) o.digits = std::atol(env);
  app.add_flag("--json", o.json, "Print JSON instead of plain text");
  app.add_option("--prec", o.digits, "Decimal digits for numerical work")->check(CLI::Range(5L, 100000L));

  std::string form, space = "full", method = "series", epsilon = "auto", tau_text, point, suite, out;
  long terms = 10, level = 1, weight = 12, upto = 20, n = 2, k = 2, disc = 5;
  std::optional<long> s_opt, level_opt, tau_n;
  bool matrix = false, eigen = false, on_j = false, table = false, verify = false;

  auto* coeffs = app.add_subcommand("coeffs", "q-expansion coefficients of a form expression");
  coeffs->add_option("form", form, "Expression such as \"(E4^3-E6^2)/1728\"")->required();
  coeffs->add_option("--terms", terms, "Number of coefficients")->check(CLI::Range(1L, 1000000L));

  auto* dim = app.add_subcommand("dim", "Dimension of M_k, S_k or S_k^new on Gamma0(N)");
  dim->add_option("--level", level)->check(CLI::Range(1L, 100000000L));
  dim->add_option("--weight", weight)->required();
  dim->add_option("--space", space, "full, cusp or new");

  auto* tau_cmd = app.add_subcommand("tau", "Ramanujan tau values");
  tau_cmd->add_option("--upto", upto, "Table size")->check(CLI::Range(1L, 100000000L));
  tau_cmd->add_option("--n", tau_n, "Single value tau(n)")->check(CLI::Range(1L, 1000000000000L));
  tau_cmd->add_option("--method", method, "series, recursion, pentagonal, triangular, sigma or hybrid");
  tau_cmd->add_option("--out", out, "Write the table to a file");

  auto* hecke = app.add_subcommand("hecke", "Hecke operators on level-1 forms");
  hecke->add_option("--weight", k, "Weight k");
  hecke->add_option("--n", n, "Operator index")->check(CLI::Range(1L, 100000L));
  hecke->add_option("--terms", terms, "Coefficients printed with --eigen");
  auto* mode = hecke->add_option_group("mode");
  mode->add_flag("--matrix", matrix, "Matrix of T(n) on S_k in the E4^a E6^b basis");
  mode->add_flag("--eigen", eigen, "Normalized eigenforms of S_k");
  mode->add_flag("--on-j", on_j, "T(n) j as a polynomial in j");
  mode->require_option(1);

  auto* lvalue = app.add_subcommand("lvalue", "Completed L-values Lambda(F, s) at integer s");
  lvalue->add_option("form", form)->required();
  lvalue->add_option("--s", s_opt, "Point s; all of 1..k-1 if omitted");
  lvalue->add_option("--level", level_opt, "Level N (inferred when possible)");
  lvalue->add_option("--epsilon", epsilon, "Sign of the functional equation: auto, 1 or -1");

  auto* eval = app.add_subcommand("eval", "Evaluate a form expression at tau");
  eval->add_option("form", form)->required();
  eval->add_option("--tau", tau_text, "Point such as \"0.1+1.2i\"")->required();

  auto* cm = app.add_subcommand("cm", "j at a CM point");
  cm->add_option("--point", point, "Point such as \"(1+i*sqrt(163))/2\"");
  cm->add_flag("--table", table, "Check the built-in table of CM values");

  auto* rk = app.add_subcommand("rk", "Representations of n as a sum of k squares");
  rk->add_option("--k", k)->required();
  rk->add_option("--n", n)->required();
  rk->add_flag("--verify", verify, "Compare with a lattice count");

  auto* zetak = app.add_subcommand("zetak", "zeta_K(-1) and zeta_K(-3) for real quadratic K");
  zetak->add_option("--disc", disc, "Fundamental discriminant D > 1")->required();

  auto* check = app.add_subcommand("check", "Run a verification suite; prints a JSON report");
  check->add_option("--suite", suite, "identities, numeric or oracles")->required();

  auto* bench = app.add_subcommand("bench", "Time the tau methods against each other");
  bench->add_option("--upto", upto)->check(CLI::Range(1L, 10000000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(o, form, terms);
    if (*dim) return cmd_dim(o, level, weight, space);
    if (*tau_cmd) return cmd_tau(o, upto, tau_n, method, out);
    if (*hecke) return cmd_hecke(o, k, n, matrix, eigen, on_j, terms);
    if (*lvalue) return cmd_lvalue(o, form, s_opt, level_opt, epsilon);
    if (*eval) return cmd_eval(o, form, tau_text);
    if (*cm) {
      if (!table && point.empty()) throw CLI::RequiredError("--point or --table");
      return cmd_cm(o, point, table);
    }
    if (*rk) return cmd_rk(o, k, n, verify);
    if (*zetak) return cmd_zetak(o, disc);
    if (*check) return cmd_check(o, suite);
    if (*bench) return cmd_bench(o, upto);
  } catch (const expr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what << "\n";
    return kVerify;
  }
  return kUsage;
}
