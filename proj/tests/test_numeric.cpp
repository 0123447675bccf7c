#include <gtest/gtest.h>

#include <random>

#include "modforms/numeric.hpp"
#include "numeric_oracles.hpp"

using namespace modforms;
using namespace modforms::num;

namespace {

const EvalContext kCtx{};  // 38 digits

Complex C(const char* re, const char* im, const EvalContext& ctx = kCtx) { return ctx.complex(re, im); }

double d(const Real& x) { return x.to_double(); }

bool below(const Real& x, long e) { return abs(x) < pow10(-e, x.prec()); }

NamedForm level11(long prec) {
  return {FormDesc{4, 11, 0, true, true}, eta_quotient({{1, 2}, {11, 2}}, prec), "eta(tau)^2 eta(11 tau)^2"};
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::bad_input;
}

}  // namespace

TEST(Real, BasicsAndPrinting) {
  Real a = kCtx.real("1.5"), b = kCtx.real(2);
  EXPECT_EQ(d(a * b), 3.0);
  EXPECT_EQ((a + b).to_string(5), "3.5000e+00");
  EXPECT_NEAR(d(gamma_quarter(kCtx.bits())), 3.6256099082219083, 1e-15);
  EXPECT_NEAR(d(zeta(3, kCtx.bits())), 1.2020569031595942, 1e-15);
  Complex z = C("-4", "0");
  Complex r = sqrt(z);
  EXPECT_NEAR(d(r.im()), 2.0, 1e-30);  // principal branch
  EXPECT_EQ(code_of([] { (void)Real("abc", 64); }), Errc::bad_input);
}

TEST(EvalForm, VanishingAndConsistency) {
  Complex i = C("0", "1");
  EXPECT_TRUE(below(abs(eisenstein_value(6, i, kCtx)), 30));
  mpfr_prec_t bits = kCtx.bits();
  Complex rho(Real(make_rational(-1, 2), bits), sqrt(kCtx.real(3)) / 2L);
  EXPECT_TRUE(below(abs(eisenstein_value(4, rho, kCtx)), 30));
  Complex dl = delta_value(i, kCtx);
  EXPECT_GT(d(abs(dl)), 0.0);
  Complex e24 = pow(eta_value(i, kCtx), 24);
  EXPECT_TRUE(below(abs(dl - e24) / abs(dl), 35));
  // eval_form through stored series agrees with the sparse eta sum.
  NamedForm eta{FormDesc{1, 1, 0, true, true}, pentagonal_eta(200), "eta"};
  Complex t = C("0.1", "0.7");
  EXPECT_TRUE(below(abs(eval_form(eta, t, kCtx) - eta_value(t, kCtx)), 40));
}

TEST(EvalForm, Errors) {
  EXPECT_EQ(code_of([] { (void)eval_form(delta(5), C("0", "0.2"), kCtx); }), Errc::insufficient_precision);
  EXPECT_EQ(code_of([] { (void)eval_form(delta(50), C("0", "-1"), kCtx); }), Errc::not_in_upper_half_plane);
  EXPECT_EQ(code_of([] { (void)eta_value(C("1", "0"), kCtx); }), Errc::not_in_upper_half_plane);
}

TEST(QuasiModularity, E2Law) {
  EXPECT_TRUE(below(quasi_modularity_residual(C("0", "1"), kCtx), 30));
  EXPECT_TRUE(below(quasi_modularity_residual(C("0.3", "1.7"), kCtx), 25));
  EXPECT_TRUE(below(e2_star_residual(C("0", "2"), kCtx), 30));
  // The law without the correction term fails.
  Complex tau = C("0.3", "1.7");
  Real naive = abs(eisenstein_value(2, neg_inverse(tau), kCtx) - tau * tau * eisenstein_value(2, tau, kCtx));
  EXPECT_GT(d(naive), 0.1);
}

TEST(ThetaReal, FunctionalEquations) {
  EXPECT_TRUE(below(theta_fe_residual(kCtx.real(1), kCtx), 35));
  EXPECT_TRUE(below(theta_fe_residual(kCtx.real("0.37"), kCtx), 30));
  EXPECT_TRUE(below(cosh_theta_residual(kCtx.real("1.3"), kCtx), 30));
  EXPECT_TRUE(below(cosh_fe_residual(kCtx.real("0.8"), kCtx), 30));
  EXPECT_NEAR(d(theta_real(kCtx.real(1), kCtx)), 1.0864348112133080, 1e-15);
}

TEST(LValues, DeltaSymmetryAndRatios) {
  NamedForm dl = delta_for_lvalues(kCtx);
  for (long s = 1; s <= 5; ++s)
    EXPECT_TRUE(below(lambda_level1(dl, 12, s, kCtx) - lambda_level1(dl, 12, 12 - s, kCtx), 30)) << s;
  Real r = lambda_level1(dl, 12, 3, kCtx) / lambda_level1(dl, 12, 1, kCtx);
  EXPECT_TRUE(below(r - make_rational(691, 1620), 30));
  EXPECT_EQ(code_of([&] { (void)lambda_level1(dl, 12, 12, kCtx); }), Errc::bad_range);
  EXPECT_EQ(code_of([&] { (void)lambda_level1(dl, 12, 0, kCtx); }), Errc::bad_range);
  EXPECT_EQ(code_of([&] { (void)lambda_level1(delta(10), 12, 3, kCtx); }), Errc::insufficient_precision);
}

TEST(LValues, FunctionalEquationFromSplitIndependence) {
  NamedForm dl = delta_for_lvalues(kCtx);
  EXPECT_TRUE(below(functional_equation_residual(dl.series, 12, 1, 1, kCtx), 30));
  // The wrong sign makes the value depend on the split.
  EXPECT_GT(d(functional_equation_residual(dl.series, 12, 1, -1, kCtx)), 1e-6);
  NamedForm f = level11(800);
  EXPECT_TRUE(below(functional_equation_residual(f.series, 2, 11, -1, kCtx), 30));
  EXPECT_GT(d(functional_equation_residual(f.series, 2, 11, 1, kCtx)), 1e-6);
  // S_16 is spanned by Delta E4.
  QExp e4d = mul(delta(800).series, eisenstein_E(4, 800).series);
  EXPECT_TRUE(below(functional_equation_residual(e4d, 16, 1, 1, kCtx), 30));
  EXPECT_EQ(code_of([&] { (void)lambda_series_split(dl.series, 12, 1, 1, 3, kCtx.real(3), kCtx); }), Errc::bad_range);
}

TEST(LValues, MatchQuadratureOracle) {
  NamedForm dl = delta_for_lvalues(kCtx);
  for (int s = 1; s <= 11; ++s) {
    double oracle_value = static_cast<double>(oracle::lambda_delta_quadrature(s));
    double v = d(lambda_level1(dl, 12, s, kCtx));
    EXPECT_NEAR(v / oracle_value, 1.0, 1e-12) << s;
  }
}

TEST(LValues, CentralValue) {
  NamedForm dl = delta_for_lvalues(kCtx);
  Real L = central_value(dl, 12, kCtx);
  // Lambda(6) = (2 pi)^-6 Gamma(6) L(6).
  Real lam = L * 120L / pow(pi(kCtx.bits()) * 2L, 6);
  EXPECT_TRUE(below((lam - lambda_level1(dl, 12, 6, kCtx)) / lam, 30));
  // Weight 18: Delta E6, central value forced to vanish.
  const long n = 40;
  NamedForm f{FormDesc{36, 1, 0, true, true}, mul(delta(n).series, eisenstein_E(6, n).series), "Delta*E6"};
  EXPECT_TRUE(central_value(f, 18, kCtx).is_zero());
  EXPECT_TRUE(below(lambda_level1(f, 18, 9, kCtx), 30));
  // The split at 1 makes the weight-18 centre vanish term by term; other splits do not.
  NamedForm g{f.desc, mul(delta(800).series, eisenstein_E(6, 800).series), "Delta*E6"};
  Real off = lambda_series_split(g.series, 18, 1, 1, 9, kCtx.real("0.7"), kCtx);
  EXPECT_TRUE(below(off, 30));
}

TEST(Periods, ManinRatiosAndPetersson) {
  auto r = manin_ratios(kCtx);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(d(r.max_deviation), 1e-30);
  EXPECT_EQ(r.odd_ratios.size(), 6u);
  EXPECT_EQ(r.even_ratios.size(), 5u);
  Real p = petersson_delta(kCtx);
  EXPECT_NEAR(d(p), 1.0354e-6, 1e-10);
  double q = oracle::petersson_delta_quadrature();
  EXPECT_NEAR(d(p) / q, 1.0, 5e-4);
}

TEST(Periods, PeriodPolynomial) {
  NamedForm dl = delta_for_lvalues(kCtx);
  auto P = period_polynomial(dl, 12, kCtx);
  ASSERT_EQ(P.size(), 11u);
  auto m = manin_ratios(kCtx);
  // Real parts are rational multiples of omega_+, imaginary parts of omega_-.
  for (long j = 0; j <= 10; ++j) {
    Real re = P[j].re() / m.omega_plus;
    if (j % 2 == 1) {
      EXPECT_TRUE(below(P[j].im(), 40)) << j;
      Rational expect = Rational(binomial(10, j)) * m.even_expected[(11 - j - 2) / 2];
      EXPECT_TRUE(below(abs(re) - Real(expect, kCtx.bits()), 25)) << j;
    } else {
      EXPECT_TRUE(below(P[j].re(), 40)) << j;
    }
  }
  EXPECT_TRUE(below(period_relation_residual(P, C("0.7", "0")), 25));
  EXPECT_TRUE(below(period_relation_residual(P, C("-1.3", "0.4")), 25));
}

TEST(LValues, LevelEleven) {
  auto make = [](long p) { return level11(p); };
  EXPECT_EQ(fricke_sign(make, 11, kCtx), -1);
  EXPECT_EQ(fricke_sign(delta_maker(), 1, kCtx), 1);
  NamedForm f = level11(400);
  Real l1 = lambda_levelN(f, 2, 11, -1, 1, kCtx);
  EXPECT_GT(d(l1), 0.01);
  // With the wrong sign the split series gives zero at the centre.
  EXPECT_TRUE(below(lambda_levelN(f, 2, 11, 1, 1, kCtx), 30));
  NamedForm dl = delta_for_lvalues(kCtx);
  for (long s : {1L, 4L, 7L})
    EXPECT_TRUE(below(lambda_levelN(dl, 12, 1, 1, s, kCtx) - lambda_level1(dl, 12, s, kCtx), 35)) << s;
  EXPECT_EQ(code_of([&] { (void)lambda_levelN(f, 2, 11, -1, 2, kCtx); }), Errc::bad_range);
}

TEST(Fricke, EtaIdentity) {
  EXPECT_TRUE(fricke_eta_identity_check(6, 4, eisenstein_maker(4), kCtx));
  EXPECT_TRUE(fricke_eta_identity_check(2, 12, delta_maker(), kCtx));
  EXPECT_TRUE(fricke_eta_identity_check(6, 2, eisenstein_maker(2), kCtx));
  EXPECT_TRUE(fricke_eta_identity_check(15, 6, eisenstein_maker(6), kCtx));
  EXPECT_EQ(code_of([] { (void)fricke_eta_identity_check(4, 4, eisenstein_maker(4), kCtx); }), Errc::bad_n);
}

TEST(Lambert, Identities) {
  for (const auto& r : lambert_identity_report(kCtx)) EXPECT_TRUE(r.pass) << r.check << " " << r.residual.to_string(5);
  EXPECT_TRUE(below(lambert_value(13, kCtx) - make_rational(1, 24), 30));
  for (long N : {6L, 10L, 15L}) EXPECT_TRUE(below(fricke_sum_check(N, kCtx), 25)) << N;
  for (long N : {1L, 2L, 4L, 30L}) EXPECT_EQ(code_of([&] { (void)fricke_sum_check(N, kCtx); }), Errc::bad_n) << N;
}

TEST(F4Star, FunctionalEquations) {
  EXPECT_TRUE(below(f4star_residual(C("0", "1"), kCtx), 25));
  EXPECT_TRUE(below(f4star_residual(C("0.2", "1.1"), kCtx), 20));
  EXPECT_TRUE(below(f4star_first_residual(C("0", "1.5"), kCtx), 20));
  EXPECT_TRUE(below(f4star_first_residual(C("-0.4", "0.9"), kCtx), 20));
}

TEST(CM, Values) {
  EvalContext ctx50{50, 12};
  for (const auto& r : cm_j_report(ctx50)) EXPECT_TRUE(r.pass) << r.check << " " << r.residual.to_string(5);
  Complex j163 = cm_j(parse_cm_point("(1+i*sqrt(163))/2"), ctx50);
  Real expected = ctx50.real("-262537412640768000");
  EXPECT_TRUE(below(abs(j163 - Complex(expected)) / abs(expected), 18));
  EXPECT_TRUE(below(abs(cm_j(parse_cm_point("i"), kCtx) - Complex(kCtx.real(1728))), 25));
  EXPECT_TRUE(below(abs(cm_j(parse_cm_point("2i"), kCtx) - Complex(kCtx.real(287496))), 20));
  auto p = parse_cm_point("(1+3i*sqrt(3))/2");
  EXPECT_EQ(p.a, 1);
  EXPECT_EQ(p.b, 3);
  EXPECT_EQ(p.c, 3);
  EXPECT_EQ(p.d, 2);
  EXPECT_EQ(parse_cm_point("i*sqrt(2)").c, 2);
  EXPECT_EQ(parse_cm_point("i").to_string(), "i");
  EXPECT_EQ(code_of([] { (void)parse_cm_point("1+"); }), Errc::bad_input);
  // j is SL2(Z)-invariant: evaluating at an equivalent point gives the same value.
  Complex t = C("0.31", "0.42");
  Complex t2 = neg_inverse(t) + kCtx.real(3);
  EXPECT_TRUE(below(abs(j_value(t, kCtx) - j_value(t2, kCtx)) / abs(j_value(t, kCtx)), 30));
}

TEST(CM, AlmostInteger) {
  EXPECT_EQ(code_of([] { (void)almost_integer_report(kCtx); }), Errc::insufficient_precision);
  auto r = almost_integer_report(EvalContext{50, 12});
  EXPECT_TRUE(r.epsilon_in_range);
  EXPECT_TRUE(r.ratio_close);
  EXPECT_EQ(65628 * 3, 196884);
}

TEST(ThetaSquared, TwistedModularity) {
  EXPECT_TRUE(below(theta_sq_twist_residual(1, 1, 0, 1, C("0.2", "0.5"), kCtx), 40));
  EXPECT_TRUE(below(theta_sq_twist_residual(1, 0, 4, 1, C("0", "0.3333333333333333333333333333333333333333333"), kCtx), 20));
  EXPECT_TRUE(below(theta_sq_twist_residual(3, -1, 4, -1, C("0.1", "0.9"), kCtx), 20));
  EXPECT_TRUE(below(theta_sq_twist_residual(1, 0, 8, 1, C("0.05", "0.6"), kCtx), 20));
  EXPECT_EQ(code_of([] { (void)theta_sq_twist_residual(1, 0, 2, 1, C("0", "1"), kCtx); }), Errc::bad_matrix);
  EXPECT_EQ(code_of([] { (void)theta_sq_twist_residual(1, 1, 4, 1, C("0", "1"), kCtx); }), Errc::bad_matrix);
  // Dropping the character breaks the law when (-4/d) = -1.
  Complex tau = C("0.1", "0.9");
  Complex g = (tau * 3L + -1L) / (tau * 4L + -1L);
  Real wrong = abs(pow(theta_value(g, kCtx), 2) - (tau * 4L + -1L) * pow(theta_value(tau, kCtx), 2));
  EXPECT_GT(d(wrong), 0.1);
}

TEST(Invariants, InversionLawsAtRandomPoints) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(0.4, 2.0);
  for (int i = 0; i < 20; ++i) {
    mpfr_prec_t bits = kCtx.bits();
    Complex tau(Real(x(rng), bits), Real(y(rng), bits));
    EXPECT_TRUE(below(eta_inversion_residual(tau, kCtx), kCtx.digits - 8));
    EXPECT_TRUE(below(theta_w4_residual(tau, kCtx), kCtx.digits - 8));
    Real dm = delta_modularity_residual(tau, kCtx) / abs(delta_value(neg_inverse(tau), kCtx));
    EXPECT_TRUE(below(dm, kCtx.digits - 8));
  }
}

TEST(Invariants, GaussianSum) {
  EXPECT_EQ(code_of([] { (void)gaussian_sum_report(kCtx); }), Errc::insufficient_precision);
  auto r = gaussian_sum_report(EvalContext{450, 20});
  EXPECT_TRUE(r.below_bound);
  EXPECT_TRUE(r.nonzero);
  EXPECT_TRUE(below((r.difference - r.predicted) / r.predicted, 20));
  EXPECT_EQ(r.difference.exponent10(), -428);
}

TEST(Invariants, DoublingPrecisionKeepsDigits) {
  EvalContext lo{38, 12}, hi{76, 12};
  auto cmp = [&](const Real& a, const Real& b) { return below(a - b, 36); };
  EXPECT_TRUE(cmp(lambda_delta(3, lo), lambda_delta(3, hi)));
  EXPECT_TRUE(cmp(petersson_delta(lo) * 1000000L, petersson_delta(hi) * 1000000L));
  EXPECT_TRUE(cmp(lambert_value(3, lo), lambert_value(3, hi)));
  Complex a = eta_value(C("0.1", "0.8", lo), lo), b = eta_value(C("0.1", "0.8", hi), hi);
  EXPECT_TRUE(cmp(a.re(), b.re()));
  EXPECT_TRUE(cmp(a.im(), b.im()));
  Complex j1 = cm_j(parse_cm_point("i*sqrt(2)"), lo), j2 = cm_j(parse_cm_point("i*sqrt(2)"), hi);
  EXPECT_TRUE(below((j1.re() - j2.re()) / j2.re(), 36));
}
