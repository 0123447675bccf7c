#pragma once

// Verification suites behind `modforms check`. Entries run in manifest order.

#include <functional>
#include <string>
#include <vector>

#include "modforms/hecke.hpp"
#include "modforms/identities.hpp"
#include "modforms/json.hpp"
#include "modforms/tau.hpp"

namespace modforms::cli {

struct SuiteEntry {
  std::string check;
  std::function<Json()> run;  ///< returns a report object with at least "pass"
};

inline Json exact_entry(const std::string& check, bool pass) {
  return {{"check", check}, {"expected", "exact"}, {"computed", pass ? "exact" : "mismatch"},
          {"residual", pass ? "0" : "nonzero"}, {"tolerance", "0"}, {"pass", pass}};
}

inline SuiteEntry exact(std::string name, std::function<bool()> f) {
  return {name, [name, f] { return exact_entry(name, f()); }};
}

inline SuiteEntry numeric(std::string name, std::function<num::CheckReport()> f) {
  return {name, [name, f] {
            Json j = report_json(f());
            j["check"] = name;
            return j;
          }};
}

inline std::vector<SuiteEntry> identities_suite() {
  const long n = 300;
  auto E = [](long k, long p) { return eisenstein_E(k, p).series; };
  return {
      exact("E4^2 = E8", [=] { return mul(E(4, n), E(4, n)) == E(8, n); }),
      exact("E4*E6 = E10", [=] { return mul(E(4, n), E(6, n)) == E(10, n); }),
      exact("691 E12 = 441 E4^3 + 250 E6^2",
            [=] { return scale(691, E(12, n)) == scale(441, pow(E(4, n), 3)) + scale(250, pow(E(6, n), 2)); }),
      exact("1728 Delta = E4^3 - E6^2",
            [=] { return scale(1728, delta(n).series) == pow(E(4, n), 3) - pow(E(6, n), 2); }),
      exact("D(Delta) = E2 Delta", [=] { return qderive(delta(n).series) == mul(eisenstein_E2(n).series, delta(n).series); }),
      exact("eta^24 = Delta (recursion)",
            [] { return delta(500, DeltaMethod::eta24).series == delta(500, DeltaMethod::recursion).series; }),
      exact("eta^3 Jacobi series = product",
            [] { return jacobi_eta_cube(200) == pow(pentagonal_eta(200), 3); }),
      exact("sigma_7 convolution", [] { return sigma7_identity_check(500); }),
      exact("partition identity", [] { return partition_identity_check(200); }),
      exact("Pochhammer a = 1", [] { return pochhammer_identity_check(PochhammerArg::one, 40); }),
      exact("Pochhammer a = -1", [] { return pochhammer_identity_check(PochhammerArg::minus_one, 40); }),
      exact("Pochhammer a = q^(1/2)", [] { return pochhammer_identity_check(PochhammerArg::sqrt_q, 40); }),
      exact("triple product", [] { return triple_product_check(8, 40); }),
      exact("theta^4 decomposition", [] { return theta4_decomposition_check(200); }),
      exact("eta-theta relation", [] { return eta_theta_relation_check(200); }),
      exact("tau congruences mod 5, 7, 691", [] { return tau_congruence_check(2000); }),
      exact("T(2) T(3) = T(3) T(2) on S_24",
            [] { return hecke_matrix(24, 2) * hecke_matrix(24, 3) == hecke_matrix(24, 3) * hecke_matrix(24, 2); }),
  };
}

inline std::vector<SuiteEntry> numeric_suite(const num::EvalContext& ctx) {
  std::vector<SuiteEntry> out;
  out.push_back(numeric("Manin ratios for Delta", [&] {
    auto r = num::manin_ratios(ctx, 1e-9, false);
    return num::CheckReport{"", "ratio vectors", "", r.max_deviation, ctx.tol(9), r.pass};
  }));
  out.push_back(numeric("Lambda(Delta) functional equation", [&] {
    num::Real worst = num::functional_equation_residual(num::delta_for_lvalues(ctx).series, 12, 1, 1, ctx);
    return num::CheckReport{"", "0", worst.to_string(6), worst, ctx.tol(12), worst < ctx.tol(12)};
  }));
  out.push_back(numeric("E2 quasi-modularity at 0.3+1.7i", [&] {
    num::Real r = num::quasi_modularity_residual(ctx.complex("0.3", "1.7"), ctx);
    return num::CheckReport{"", "0", r.to_string(6), r, ctx.tol(20), r < ctx.tol(20)};
  }));
  out.push_back(numeric("theta functional equation at 0.37", [&] {
    num::Real r = num::theta_fe_residual(ctx.real("0.37"), ctx);
    return num::CheckReport{"", "0", r.to_string(6), r, ctx.tol(30), r < ctx.tol(30)};
  }));
  for (long N : {6L, 10L, 15L})
    out.push_back(numeric("Fricke sum N = " + std::to_string(N), [&, N] {
      num::Real r = num::fricke_sum_check(N, ctx);
      return num::CheckReport{"", "phi(N)/24", "", r, ctx.tol(25), num::abs(r) < ctx.tol(25)};
    }));
  out.push_back(numeric("F4** transformation law at 0.2+1.1i", [&] {
    num::Real r = num::f4star_residual(ctx.complex("0.2", "1.1"), ctx);
    return num::CheckReport{"", "0", r.to_string(6), r, ctx.tol(20), r < ctx.tol(20)};
  }));
  for (std::size_t i = 0; i < 4; ++i)
    out.push_back({"Lambert identity " + std::to_string(i + 1), [&, i] {
                     auto all = num::lambert_identity_report(ctx);
                     return report_json(all.at(i));
                   }});
  for (std::size_t i = 0; i < num::cm_table().size(); ++i)
    out.push_back({"CM value j(" + num::cm_table()[i].point.to_string() + ")", [&, i] {
                     return report_json(num::cm_j_report(ctx).at(i));
                   }});
  return out;
}

inline std::vector<SuiteEntry> oracles_suite() {
  return {
      exact("tau: all methods agree to 2000",
            [] {
              auto ref = tau_table(2000).values;
              for (TauMethod m : {TauMethod::recursion, TauMethod::pentagonal, TauMethod::triangular, TauMethod::sigma,
                                  TauMethod::hybrid})
                if (tau_table(2000, m).values != ref) return false;
              return true;
            }),
      exact("tau: trace formula at odd primes <= 199",
            [] {
              auto t = tau_table(199);
              arith::HurwitzTable h(4 * 199);
              for (long p : arith::primes_up_to(199))
                if (p != 2 && tau_trace_formula(p, h) != t(p)) return false;
              return true;
            }),
      exact("r_k formula = lattice count, k in {2,4,6,8}, n <= 100",
            [] {
              for (long k : {2L, 4L, 6L, 8L})
                for (long n = 1; n <= 100; ++n)
                  if (rk_formula(k, n) != rk_bruteforce(k, n)) return false;
              return true;
            }),
      exact("r_5 via zeta_K(-1) = lattice count",
            [] {
              for (long D = 5; D <= 100; ++D)
                if (arith::is_fundamental_discriminant(D) && arith::r5_via_zeta(D) != rk_bruteforce(5, D)) return false;
              return true;
            }),
      exact("zeta_Q(sqrt5)(-1) = 1/30, (-3) = 1/60",
            [] { return arith::zeta_k_special(5, 1) == make_rational(1, 30) && arith::zeta_k_special(5, 3) == make_rational(1, 60); }),
      exact("dim M_k = size of the E4^a E6^b basis, k <= 100",
            [] {
              for (long k = 4; k <= 100; k += 2)
                if (dims::dim_mk_level1(k) != static_cast<long>(mk_basis(k, 2).size())) return false;
              return true;
            }),
      exact("old/new decomposition, N <= 60",
            [] {
              for (long N = 1; N <= 60; ++N)
                for (long k : {2L, 4L, 6L, 12L})
                  if (!dims::olddecomp_check(N, k)) return false;
              return true;
            }),
      exact("T(n) T(m) composition on S_12, n, m <= 6",
            [] {
              for (long n = 1; n <= 6; ++n)
                for (long m = 1; m <= 6; ++m)
                  if (!hecke_compose_check(n, m, 12, 10)) return false;
              return true;
            }),
  };
}

}  // namespace modforms::cli
