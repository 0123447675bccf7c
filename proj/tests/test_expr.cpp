#include <gtest/gtest.h>

#include <random>

#include "modforms/expr.hpp"
#include "modforms/hecke.hpp"
#include "modforms/json.hpp"

using namespace modforms;

namespace {

std::size_t syntax_offset(const std::string& text, Errc expected) {
  try {
    (void)expr::parse(text);
  } catch (const expr::ParseError& e) {
    EXPECT_EQ(e.code(), expected) << text;
    return e.offset();
  }
  ADD_FAILURE() << "parsed: " << text;
  return 0;
}

const char* kCorpus[] = {
    "E4",          "E2",          "Delta",       "theta",         "j",           "eta(1)^2*eta(11)^2",
    "(E4^3-E6^2)/1728",           "E4^2",        "E4*E6-E10",     "691*E12-441*E4^3-250*E6^2",
    "theta^4",     "eta(2)^5/(eta(1)^2*eta(4)^2)", "E4-(E6-E8)", "E4/(2*3)",    "E4/2/3",
    "1/2*E4+1/2*E6",              "Delta^-1",    "j-744",         "(E2*E4-E6)/3", "eta(1)^24",
    "E4 - E4",     "  Delta * ( E4 + 1 ) ",      "E4^3/Delta",    "2-3-4",       "2*(3*E4)",
};

}  // namespace

TEST(Parse, Examples) {
  auto d = expr::parse("(E4^3-E6^2)/1728");
  EXPECT_EQ(expr::series(*d, 30), delta(31).series.normalized().truncate(30));
  auto f = expr::parse("eta(1)^2*eta(11)^2");
  auto t = expr::infer_type(*f);
  EXPECT_EQ(t.weight2, 4);
  EXPECT_EQ(t.level, 11);
  EXPECT_EQ(t.character, 0);
  EXPECT_EQ(syntax_offset("E4^^2", Errc::syntax_error), 4u);
}

TEST(Parse, Errors) {
  EXPECT_EQ(syntax_offset("", Errc::syntax_error), 1u);
  EXPECT_EQ(syntax_offset("E4+", Errc::syntax_error), 4u);
  EXPECT_EQ(syntax_offset("(E4", Errc::syntax_error), 4u);
  EXPECT_EQ(syntax_offset("E4)", Errc::syntax_error), 3u);
  EXPECT_EQ(syntax_offset("E", Errc::syntax_error), 2u);
  EXPECT_EQ(syntax_offset("eta 3", Errc::syntax_error), 5u);
  EXPECT_EQ(syntax_offset("foo*E4", Errc::unknown_atom), 1u);
  EXPECT_EQ(syntax_offset("E4*Delta2", Errc::unknown_atom), 4u);
  EXPECT_EQ(syntax_offset("E4^x", Errc::syntax_error), 4u);
  EXPECT_THROW((void)expr::infer_type(*expr::parse("E5")), Error);
}

TEST(Parse, PrecedenceAndAssociativity) {
  auto a = expr::series(*expr::parse("E4/2/3"), 10), b = expr::series(*expr::parse("E4/6"), 10);
  EXPECT_EQ(a, b);
  EXPECT_EQ(expr::series(*expr::parse("2-3-4"), 3), QExp::constant(-5, 3));
  EXPECT_EQ(expr::series(*expr::parse("2+3*4"), 3), QExp::constant(14, 3));
  EXPECT_EQ(expr::series(*expr::parse("E4^2"), 20), eisenstein_E(8, 20).series);
  EXPECT_EQ(expr::unparse(*expr::parse("E4-(E6-E8)")), "E4-(E6-E8)");
  EXPECT_EQ(expr::unparse(*expr::parse("(E4*E6)*E8")), "E4*E6*E8");
  EXPECT_EQ(expr::unparse(*expr::parse("  Delta * ( E4 + 1 ) ")), "Delta*(E4+1)");
}

TEST(Parse, RoundTripCorpus) {
  for (const char* text : kCorpus) {
    auto t = expr::parse(text);
    std::string u = expr::unparse(*t);
    auto t2 = expr::parse(u);
    EXPECT_TRUE(*t == *t2) << text << " -> " << u;
    EXPECT_EQ(expr::unparse(*t2), u);
  }
}

TEST(Parse, RoundTripRandomTrees) {
  std::mt19937_64 rng(7);
  const char* atoms[] = {"E4", "E6", "E2", "Delta", "theta", "j", "eta(3)", "5", "12"};
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 1);
    switch (pick(rng)) {
      case 0: return atoms[rng() % 9];
      case 1: return rng() % 2 ? std::string(atoms[rng() % 7]) + "^" + std::to_string(static_cast<int>(rng() % 7) - 3)
                               : std::string(atoms[rng() % 9]);
      case 2: return gen(depth - 1) + "+" + gen(depth - 1);
      case 3: return gen(depth - 1) + "-" + gen(depth - 1);
      case 4: return gen(depth - 1) + "*" + gen(depth - 1);
      case 5: return gen(depth - 1) + "/" + gen(depth - 1);
      default: return "(" + gen(depth - 1) + ")";
    }
  };
  for (int i = 0; i < 300; ++i) {
    std::string text = gen(4);
    auto t = expr::parse(text);
    auto t2 = expr::parse(expr::unparse(*t));
    ASSERT_TRUE(*t == *t2) << text;
  }
}

TEST(Types, Inference) {
  auto type = [](const char* s) { return expr::infer_type(*expr::parse(s)); };
  EXPECT_EQ(type("E4*E6").weight2, 20);
  EXPECT_EQ(type("E4+E6").weight2, std::nullopt);
  EXPECT_EQ(type("theta^2").level, 4);
  EXPECT_EQ(type("theta^2").character, -4);
  EXPECT_EQ(type("theta^4").character, 0);
  EXPECT_EQ(type("Delta").level, 1);
  EXPECT_EQ(type("eta(1)^8*eta(2)^8").level, 2);
  EXPECT_EQ(type("eta(1)^4*eta(2)^4").level, std::nullopt);
  EXPECT_EQ(type("eta(1)").level, std::nullopt);
  EXPECT_TRUE(type("E2*E4").quasi);
  EXPECT_EQ(type("j").weight2, 0);
  auto f = expr::named_form(*expr::parse("eta(1)^2*eta(11)^2"), 10);
  EXPECT_TRUE(f.desc.cuspidal);
  EXPECT_EQ(f.desc.level, 11);
  auto g = expr::named_form(*expr::parse("theta^4"), 10);
  EXPECT_TRUE(g.desc.modular);
  EXPECT_FALSE(g.desc.cuspidal);
  EXPECT_FALSE(expr::named_form(*expr::parse("E4/Delta"), 10).desc.modular);
}

TEST(Series, AtomsAndPoles) {
  auto j = expr::series(*expr::parse("j"), 3);
  EXPECT_EQ(j.offset(), -1);
  EXPECT_EQ(j.head(3), (std::vector<Rational>{1, 744, 196884}));
  auto e = expr::series(*expr::parse("eta(1)^2*eta(11)^2"), 6);
  EXPECT_EQ(e.offset(), 1);
  EXPECT_EQ(e.head(6), (std::vector<Rational>{1, -2, -1, 2, 1, 2}));
  EXPECT_EQ(expr::series(*expr::parse("Delta*Delta^-1"), 10), QExp::one(10));
  EXPECT_EQ(expr::series(*expr::parse("theta^4"), 4).head(4), (std::vector<Rational>{1, 8, 24, 32}));
}

TEST(Values, MatchSeriesEvaluation) {
  num::EvalContext ctx;
  num::Complex tau = ctx.complex("0.13", "1.21");
  for (const char* text : {"(E4^3-E6^2)/1728", "E4*E6", "eta(1)^2*eta(11)^2", "theta^4", "E2*E4-E6"}) {
    auto n = expr::parse(text);
    auto f = expr::named_form(*n, 200);
    f.desc.weight2 = f.desc.weight2 == 0 ? 2 : f.desc.weight2;
    num::Complex a = expr::value(*n, tau, ctx), b = num::eval_form(f, tau, ctx);
    EXPECT_LT(num::abs(a - b).to_double(), 1e-30) << text;
  }
}

TEST(Json, QExpRoundTripIsExact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::vector<Rational> c;
    for (int k = 0; k < 20; ++k) c.push_back(make_rational(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1));
    QExp f(c, static_cast<long>(rng() % 7) - 3, 24);
    Json j = qexp_json(f);
    QExp g = qexp_from_json(Json::parse(j.dump()));
    EXPECT_EQ(f, g);
    EXPECT_EQ(f.offset(), g.offset());
    EXPECT_EQ(j.dump(), qexp_json(g).dump());
  }
  Json d = qexp_json(delta(4).series);
  EXPECT_EQ(d.dump(), R"({"coeffs":["0","1","-24","252"],"offset_den":1,"offset_num":0,"prec":4})");
  EXPECT_THROW((void)qexp_from_json(Json::parse(R"({"coeffs":["1"],"prec":2,"offset_num":0,"offset_den":1})")), Error);
  EXPECT_THROW((void)qexp_from_json(Json::parse(R"({"coeffs":[1],"prec":1,"offset_num":0,"offset_den":1})")), Error);
}

TEST(Json, FormsMatricesReports) {
  NamedForm t = theta(10);
  NamedForm back = form_from_json(Json::parse(form_json(t).dump()));
  EXPECT_EQ(back.name, t.name);
  EXPECT_EQ(back.desc.weight2, 1);
  EXPECT_EQ(back.desc.level, 4);
  EXPECT_EQ(back.series, t.series);
  RatMatrix m = hecke_matrix(24, 2);
  Json mj = matrix_json(m);
  EXPECT_EQ(mj.size(), 2u);
  EXPECT_EQ(matrix_from_json(mj), m);
  num::EvalContext ctx;
  auto r = num::make_report("x", "1", ctx.real(1), ctx.real(0), ctx.tol(30), 10);
  Json rj = report_json(r);
  for (const char* key : {"check", "expected", "computed", "residual", "tolerance", "pass"}) EXPECT_TRUE(rj.contains(key)) << key;
  EXPECT_TRUE(rj["pass"].get<bool>());
}
