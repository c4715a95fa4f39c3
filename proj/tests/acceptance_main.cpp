// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria run at fixed tolerances on the default desk-scale
// ladder; wall-clock budgets are checked where stated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "saddlekit/diagnostics.hpp"
#include "saddlekit/eigensolve.hpp"
#include "saddlekit/stability.hpp"

using namespace saddlekit;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct SolveResult {
  NonlinearitySpec spec;
  Profile1D profile;
  SaddleField maximal;
  SaddleField minimal;
  bool has_minimal = false;
};

SolveResult solve(const std::string& name, int m, double R, double h,
                  bool with_minimal, int k_max = 500) {
  SolveResult r{builtin_nonlinearity(name),
                build_profile(builtin_nonlinearity(name), 8.0, 512),
                {},
                {},
                with_minimal};
  const TriOperator op = discretize(m, R, h, r.spec);
  r.maximal = iterate_maximal(op, r.spec, r.profile, 1e-10, k_max);
  if (with_minimal)
    r.minimal = iterate_minimal(op, r.spec, 1e-10, k_max);
  return r;
}

// shared solve cache for the default ladder (m, R, h per nonlinearity)
std::map<std::string, SolveResult> g_cache;

SolveResult& ladder_solve(const std::string& name, int m) {
  const std::string key = name + ":" + std::to_string(m);
  auto it = g_cache.find(key);
  if (it != g_cache.end()) return it->second;
  const double R = m == 3 ? 24.0 : 12.0;
  const double h = m == 3 ? 1.0 / 8.0 : 1.0 / 16.0;
  auto [ins, ok] = g_cache.emplace(key, solve(name, m, R, h, true));
  return ins->second;
}

// ---------------------------------------------------------------------------

void criterion_1_profile_exactness() {
  const auto start = Clock::now();
  const Profile1D ac = build_profile(builtin_nonlinearity("allen_cahn"), 8.0, 512);
  double sup = 0.0;
  for (int k = 0; k <= 6400; ++k) {
    const double tau = -8.0 + k * 16.0 / 6400.0;
    sup = std::max(sup, std::abs(ac.eval(tau) - std::tanh(tau / std::sqrt(2.0))));
  }
  const Profile1D sine = build_profile(builtin_nonlinearity("sine"), 8.0, 512);
  const double ham = std::max(ac.hamiltonian_residual_sup(),
                              sine.hamiltonian_residual_sup());
  const double elapsed = seconds_since(start);
  const bool pass = sup <= 1e-6 && ham <= 1e-8 && elapsed < 1.0;
  report(1, "profile exactness",
         pass, "sup|u0 - tanh| = " + fmt(sup) + ", hamiltonian = " + fmt(ham) +
                   ", " + fmt(elapsed) + " s");
}

void criterion_2_dissipation() {
  const auto start = Clock::now();
  const Profile1D ac = build_profile(builtin_nonlinearity("allen_cahn"), 8.0, 512);
  const double value = dissipation_integral(ac);
  const double oracle = 0.9428090415820634;  // quadrature of (1/2) sech^4
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(value - oracle) <= 1e-6 && elapsed < 1.0;
  report(2, "dissipation integral", pass,
         "value = " + fmt(value) + ", |err| = " + fmt(std::abs(value - oracle)) +
             ", " + fmt(elapsed) + " s");
}

void criterion_3_monotone_iteration() {
  const auto start = Clock::now();
  const SolveResult& r = ladder_solve("allen_cahn", 2);
  double worst_defect = -1e30;
  for (const IterationRecord& rec : r.maximal.history)
    worst_defect = std::max(worst_defect, rec.monotone_defect);
  const double elapsed = seconds_since(start);
  const bool pass = r.maximal.converged && r.maximal.history.size() <= 200 &&
                    worst_defect <= 1e-10 && elapsed < 120.0;
  report(3, "monotone iteration", pass,
         "iterations = " + std::to_string(r.maximal.history.size()) +
             ", max defect = " + fmt(worst_defect) + ", " + fmt(elapsed) + " s");
}

void criterion_4_pointwise_bound() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"allen_cahn", "sine"}) {
    for (int m : {1, 2, 3}) {
      const SolveResult& r = ladder_solve(name, m);
      const double vmax = check_pointwise_bound(r.maximal, r.profile);
      const double vmin = check_pointwise_bound(r.minimal, r.profile);
      const bool ok = vmax <= 1e-8 && vmin <= 1e-8;
      if (!ok) {
        pass = false;
        detail += std::string(name) + " m=" + std::to_string(m) + ": max " +
                  fmt(vmax) + " min " + fmt(vmin) + "; ";
      }
    }
  }
  if (pass) detail = "all <= 1e-8";
  report(4, "pointwise bound", pass, detail);
}

void criterion_5_ordering() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"allen_cahn", "sine"}) {
    for (int m : {1, 2, 3}) {
      const SolveResult& r = ladder_solve(name, m);
      double order = -1e30, neg = 1e30;
      for (int k = 0; k < r.maximal.grid.node_count(); ++k) {
        order = std::max(order, r.minimal.values[k] - r.maximal.values[k]);
        neg = std::min(neg, r.minimal.values[k]);
      }
      const double gap_budget = 10.0 * r.maximal.grid.h() * r.maximal.grid.h();
      const bool ok = order <= 1e-8 && neg >= -1e-8 &&
                      r.minimal.uniqueness_gap <= gap_budget;
      if (!ok) {
        pass = false;
        detail += std::string(name) + " m=" + std::to_string(m) + ": order " +
                  fmt(order) + " gap " + fmt(r.minimal.uniqueness_gap) + "; ";
      }
    }
  }
  if (pass) detail = "0 <= minimal <= maximal; uniqueness gaps <= 10 h^2";
  report(5, "ordering and uniqueness", pass, detail);
}

void criterion_6_monotonicity() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"allen_cahn", "sine"}) {
    for (int m : {1, 2, 3}) {
      const SolveResult& r = ladder_solve(name, m);
      const MonotonicityMinima mins = monotonicity_minima(r.maximal);
      const bool ok =
          mins.neg_dt_min >= -1e-8 && mins.ds_min >= -1e-8 && mins.dy_min >= -1e-8;
      if (!ok) {
        pass = false;
        detail += std::string(name) + " m=" + std::to_string(m) + ": (" +
                  fmt(mins.neg_dt_min) + ", " + fmt(mins.ds_min) + ", " +
                  fmt(mins.dy_min) + "); ";
      }
    }
  }
  if (pass) detail = "d_t <= 1e-8, d_s >= -1e-8, d_y >= -1e-8 on all runs";
  report(6, "monotonicity", pass, detail);
}

void criterion_7_asymptotics() {
  std::vector<double> gaps;
  for (double R : {6.0, 12.0, 24.0}) {
    const SolveResult r = solve("allen_cahn", 2, R, 1.0 / 8.0, false);
    gaps.push_back(
        check_asymptotics(r.maximal, r.profile, R / 2.0, 3.0 * R / 4.0).first);
  }
  const bool pass = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 0.05;
  report(7, "asymptotics", pass,
         "band gaps " + fmt(gaps[0]) + " > " + fmt(gaps[1]) + " > " + fmt(gaps[2]) +
             " (R = 6, 12, 24)");
}

void criterion_8_energy_growth() {
  const SolveResult& r = ladder_solve("allen_cahn", 2);
  const SquareField sq = extend_odd(r.maximal);
  double lo = 1e30, hi = -1e30;
  for (double Rv : {6.0, 9.0, 12.0}) {
    const double ratio = energy(sq, Rv, r.spec) / std::pow(Rv, 3);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double spread = (hi - lo) / lo;
  report(8, "energy growth", spread <= 0.25,
         "E/R^3 spread = " + fmt(100.0 * spread) + "% over R = 6, 9, 12");
}

void criterion_9_hardy_margins() {
  const bool pass = hardy_margin(2) == -1.75 && hardy_margin(3) == -1.75 &&
                    hardy_margin(4) == 0.25 && hardy_margin(5) == 4.25 &&
                    hardy_margin(3) < 0.0 && hardy_margin(4) > 0.0;
  report(9, "hardy margins", pass,
         "margins(2..5) = " + fmt(hardy_margin(2)) + ", " + fmt(hardy_margin(3)) +
             ", " + fmt(hardy_margin(4)) + ", " + fmt(hardy_margin(5)));
}

struct StabilityContext {
  SolveResult run;
  SquareField extended;
};

StabilityContext& stability_context() {
  static StabilityContext ctx = [] {
    SolveResult run = solve("allen_cahn", 3, 48.0, 1.0 / 8.0, false);
    SquareField sq = extend_odd(run.maximal);
    return StabilityContext{std::move(run), std::move(sq)};
  }();
  return ctx;
}

void criterion_10_instability_dim6() {
  const auto start = Clock::now();
  StabilityContext& ctx = stability_context();
  FieldView view(ctx.extended, ctx.run.profile);
  const std::vector<double> a_list{4.0, 8.0, 16.0};
  const StabilityReport rep = instability_scan(view, a_list, {0.1, 10.0, 1.75});
  const double q4 = rep.q_values[0].second;
  const double q8 = rep.q_values[1].second;
  const double q16 = rep.q_values[2].second;
  const double dev = std::abs(q16 - rep.limit_rhs) / std::abs(rep.limit_rhs);
  const double elapsed = seconds_since(start);
  const bool pass = q16 < 0.0 && q4 > q8 && q8 > q16 &&
                    dev <= 0.3 && elapsed < 300.0;
  report(10, "instability in dimension 6", pass,
         "Q/a^3 = " + fmt(q4) + ", " + fmt(q8) + ", " + fmt(q16) +
             "; limit = " + fmt(rep.limit_rhs) + "; |dev| = " +
             fmt(100.0 * dev) + "% (<= 30%); " + fmt(elapsed) + " s");
}

void criterion_11_morse_witness() {
  StabilityContext& ctx = stability_context();
  FieldView view(ctx.extended, ctx.run.profile);
  const auto family = disjoint_instability_family(view, 3);
  bool negative = true, disjoint = true;
  double sum = 0.0;
  for (size_t i = 0; i < family.size(); ++i) {
    negative = negative && family[i].second < 0.0;
    sum += family[i].second;
    if (i + 1 < family.size())
      disjoint = disjoint &&
                 family[i].first.support_y_hi() < family[i + 1].first.support_y_lo();
  }
  double combined = 0.0;
  for (const auto& [tf, q] : family) combined += quadratic_form(view, tf);
  const double additivity = std::abs(combined - sum) / std::abs(sum);
  const bool pass = family.size() == 3 && negative && disjoint && additivity <= 1e-9;
  std::string detail = "Q = ";
  for (const auto& [tf, q] : family) detail += fmt(q) + " ";
  detail += "; additivity err = " + fmt(additivity);
  report(11, "morse-index witness", pass, detail);
}

void criterion_12_cone_vanishing() {
  bool pass = true;
  std::string detail;
  for (int m : {1, 2, 3}) {
    const SolveResult& r = ladder_solve("allen_cahn", m);
    const SquareField sq = extend_odd(r.maximal);
    FieldView view(sq, r.profile);
    const double min_q = cone_vanishing_stability(view, 20, 20240 + m);
    if (min_q < -1e-8) {
      pass = false;
      detail += "m=" + std::to_string(m) + ": " + fmt(min_q) + "; ";
    } else {
      detail += "m=" + std::to_string(m) + ": min Q = " + fmt(min_q) + "; ";
    }
  }
  report(12, "cone-vanishing stability", pass, detail);
}

void criterion_13_dim8_margin() {
  double worst4 = 1e30, best3 = 1e30;
  for (double rho1 : {0.005, 0.01, 0.02, 0.05, 0.1}) {
    for (double rho2 : {10.0, 25.0, 50.0, 100.0, 200.0}) {
      for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
        const Eta1D eta = make_piecewise_eta({rho1, rho2, alpha});
        worst4 = std::min(worst4, rho_integral(4, eta));
        best3 = std::min(best3, rho_integral(3, eta));
      }
    }
  }
  const bool pass = worst4 >= -1e-6 && best3 < -0.01;
  report(13, "dimension >= 8 margin", pass,
         "min rho-integral: m=4 " + fmt(worst4) + " (>= -1e-6), m=3 " +
             fmt(best3) + " (< -0.01)");
}

void criterion_14_grid_convergence() {
  const SolveResult coarse = solve("allen_cahn", 2, 12.0, 1.0 / 8.0, false);
  const SolveResult fine = solve("allen_cahn", 2, 12.0, 1.0 / 16.0, false);
  const double r_coarse = nonlinear_residual_sup(coarse.maximal, coarse.spec, 1.0);
  const double r_fine = nonlinear_residual_sup(fine.maximal, fine.spec, 1.0);
  const double order = std::log2(r_coarse / r_fine);
  report(14, "grid convergence", order >= 1.7,
         "residual " + fmt(r_coarse) + " -> " + fmt(r_fine) + ", order = " +
             fmt(order));
}

void criterion_15_eigenpairs() {
  const double two_pi2 = 2.0 * M_PI * M_PI;
  const double j01sq = 5.783185962946785;
  const EigenPair square =
      principal_eigenpair(make_rect_grid(1, 1.0 / 64.0, 0.0, 1.0, 0.0, 1.0));
  const EigenPair disc =
      principal_eigenpair(make_disc_grid(1, 1.0 / 96.0, 1.5, 1.5, 1.0));
  const EigenPair sub =
      principal_eigenpair(make_disc_grid(1, 1.0 / 24.0, 6.0, 6.0, 4.0));
  const double err_square = std::abs(square.lambda - two_pi2) / two_pi2;
  const double err_disc = std::abs(disc.lambda - j01sq) / j01sq;
  const bool pass = err_square < 0.02 && err_disc < 0.02 && sub.lambda < 1.0;
  report(15, "eigenpair sanity", pass,
         "square " + fmt(square.lambda) + " (2pi^2 = " + fmt(two_pi2) +
             "), disc " + fmt(disc.lambda) + " (j01^2 = " + fmt(j01sq) +
             "), subsolution lambda1 = " + fmt(sub.lambda) + " < 1");
}

}  // namespace

int main() {
  std::printf("saddlekit acceptance suite\n");
  criterion_1_profile_exactness();
  criterion_2_dissipation();
  criterion_3_monotone_iteration();
  criterion_4_pointwise_bound();
  criterion_5_ordering();
  criterion_6_monotonicity();
  criterion_7_asymptotics();
  criterion_8_energy_growth();
  criterion_9_hardy_margins();
  criterion_10_instability_dim6();
  criterion_11_morse_witness();
  criterion_12_cone_vanishing();
  criterion_13_dim8_margin();
  criterion_14_grid_convergence();
  criterion_15_eigenpairs();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
