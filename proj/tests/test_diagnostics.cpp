#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include <Eigen/SparseLU>

#include "saddlekit/diagnostics.hpp"

using namespace saddlekit;

namespace {

struct Run {
  NonlinearitySpec spec;
  Profile1D profile;
  SaddleField maximal;
  SquareField extended;
};

Run solve(const char* name, int m, double R, double h) {
  NonlinearitySpec spec = builtin_nonlinearity(name);
  Profile1D profile = build_profile(spec, 8.0, 512);
  const TriOperator op = discretize(m, R, h, spec);
  SaddleField field = iterate_maximal(op, spec, profile, 1e-10, 500);
  REQUIRE(field.converged);
  SquareField sq = extend_odd(field);
  return {std::move(spec), std::move(profile), std::move(field), std::move(sq)};
}

}  // namespace

TEST_CASE("pointwise bound: slack for the zero field, violation when forced") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 16.0);
  CHECK(check_pointwise_bound(run.maximal, run.profile) <= 1e-8);

  // the zero field has pure slack: the max sits at the cone where both
  // sides vanish
  SaddleField zero = run.maximal;
  zero.values.setZero();
  CHECK(check_pointwise_bound(zero, run.profile) <= 0.0);

  SaddleField spiked = run.maximal;
  const int k = spiked.grid.index(96, 48);
  spiked.values[k] = run.spec.well;
  const double expected =
      run.spec.well - std::abs(run.profile.eval(spiked.grid.z_of(k)));
  CHECK(check_pointwise_bound(spiked, run.profile) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("energy: constant well field has zero energy") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 8.0);
  SquareField flat = run.extended;
  for (auto& v : flat.values) v = run.spec.well;
  CHECK(energy(flat, 12.0, run.spec) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(energy(run.extended, 12.0, run.spec) > 0.0);
  CHECK_THROWS_AS(energy(run.extended, 20.0, run.spec), std::invalid_argument);
}

TEST_CASE("energy of the 1D envelope dominates the saddle energy") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 16.0);
  SquareField envelope = run.extended;
  const int n = envelope.n;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      envelope.values[static_cast<size_t>(i) * (n + 1) + j] =
          run.profile.eval((i - j) * envelope.h / std::sqrt(2.0));
  CHECK(energy(envelope, 12.0, run.spec) >=
        energy(run.extended, 12.0, run.spec) - 1e-6);
}

TEST_CASE("asymptotics: band sup and gradient gap are finite and consistent") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 8.0);
  const auto [gap_u, gap_grad] = check_asymptotics(run.maximal, run.profile, 6.0, 9.0);
  CHECK(gap_u > 0.0);
  CHECK(gap_grad > 0.0);
  // difference-quotient bound: grad gap cannot exceed the value gap scale / h
  CHECK(gap_grad <= 4.0 * gap_u / run.maximal.grid.h());
  CHECK_THROWS_AS(check_asymptotics(run.maximal, run.profile, 40.0, 50.0),
                  std::invalid_argument);
}

TEST_CASE("band centered on the cone has a small gap") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 8.0);
  const auto [gap_u, gap_grad] = check_asymptotics(run.maximal, run.profile, 10.0, 12.0);
  const auto [gap_lo, gap_lo_grad] = check_asymptotics(run.maximal, run.profile, 2.0, 4.0);
  CHECK(gap_u < gap_lo);  // closer to the far field than the near region
  (void)gap_grad;
  (void)gap_lo_grad;
}

TEST_CASE("symmetry defect: zero for odd extension, 2 sup|u| for even fields") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 8.0);
  CHECK(check_symmetry(run.extended) == 0.0);
  SquareField even = run.extended;
  double sup = 0.0;
  for (int i = 0; i <= even.n; ++i)
    for (int j = 0; j <= even.n; ++j) {
      const double v = std::abs(run.extended.at(std::max(i, j), std::min(i, j)));
      even.values[static_cast<size_t>(i) * (even.n + 1) + j] = v;
      sup = std::max(sup, v);
    }
  CHECK(check_symmetry(even) == doctest::Approx(2.0 * sup).epsilon(1e-12));
}

TEST_CASE("monotonicity minima keep the maximal-solution signs (m=2)") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 16.0);
  const MonotonicityMinima mins = monotonicity_minima(run.maximal);
  CHECK(mins.neg_dt_min >= -1e-8);
  CHECK(mins.ds_min >= -1e-8);
  CHECK(mins.dy_min >= -1e-8);
}

TEST_CASE("nonlinear residual is small and h^2-sized away from the origin") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 8.0);
  const double res = nonlinear_residual_sup(run.maximal, run.spec, 1.0);
  CHECK(res > 0.0);
  CHECK(res <= 50.0 * run.maximal.grid.h() * run.maximal.grid.h());
}

TEST_CASE("band gaps are nonincreasing in R for other (name, m) pairs") {
  for (auto [name, m] : {std::pair{"sine", 1}, {"allen_cahn", 3}}) {
    double prev = 1e30;
    for (double R : {6.0, 12.0}) {
      Run run = solve(name, m, R, 1.0 / 8.0);
      const double gap =
          check_asymptotics(run.maximal, run.profile, R / 2.0, 3.0 * R / 4.0).first;
      INFO(name << " m=" << m << " R=" << R);
      CHECK(gap <= prev);
      prev = gap;
    }
  }
}

TEST_CASE("bound holds for convex combinations of converged fields") {
  NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  Profile1D profile = build_profile(spec, 8.0, 512);
  const TriOperator op = discretize(2, 12.0, 1.0 / 16.0, spec);
  const SaddleField maximal = iterate_maximal(op, spec, profile, 1e-10, 500);
  const SaddleField minimal = iterate_minimal(op, spec, 1e-10, 500);
  SaddleField blend = maximal;
  blend.values = 0.5 * (maximal.values + minimal.values);
  CHECK(check_pointwise_bound(blend, profile) <= 1e-8);
}

TEST_CASE("full-square solve without imposed symmetry is nearly odd") {
  // independent oracle: Newton on the full square [0,R]^2 with even
  // reflection on both axes and u0(z) data on the far edges; the result
  // should reproduce the odd-extended triangle field up to O(h^2)
  const NonlinearitySpec spec = builtin_nonlinearity("allen_cahn");
  const Profile1D profile = build_profile(spec, 8.0, 512);
  const int m = 2;
  const double R = 8.0, h = 1.0 / 8.0;
  const int n = static_cast<int>(R / h);
  const int N = (n + 1) * (n + 1);
  auto id = [&](int i, int j) { return i * (n + 1) + j; };

  Eigen::VectorXd u(N);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      u[id(i, j)] = profile.eval((i - j) * h / std::sqrt(2.0));

  // Newton step J u+ = f(u) - f'(u) u with J = L0 - diag(f'(u)); the
  // linear part of the residual cancels against J u
  for (int newton = 0; newton < 30; ++newton) {
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs(N);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const int k = id(i, j);
        if (i == n || j == n) {  // Dirichlet data on the far edges
          trip.emplace_back(k, k, 1.0);
          rhs[k] = profile.eval((i - j) * h / std::sqrt(2.0));
          continue;
        }
        const double s = i * h, t = j * h;
        double diag = -spec.df(u[k]);
        rhs[k] = spec.f(u[k]) - spec.df(u[k]) * u[k];
        if (i == 0) {  // even reflection across s = 0: total m * u_ss
          trip.emplace_back(k, id(1, j), -2.0 * m / (h * h));
          diag += 2.0 * m / (h * h);
        } else {
          trip.emplace_back(k, id(i + 1, j), -1.0 / (h * h));
          trip.emplace_back(k, id(i - 1, j), -1.0 / (h * h));
          diag += 2.0 / (h * h);
          if (m > 1) {
            const double c = m - 1;
            if (c * h / (2.0 * s) < 1.0) {
              trip.emplace_back(k, id(i + 1, j), -c / (2.0 * h * s));
              trip.emplace_back(k, id(i - 1, j), +c / (2.0 * h * s));
            } else {
              trip.emplace_back(k, id(i + 1, j), -c / (h * s));
              diag += c / (h * s);
            }
          }
        }
        if (j == 0) {
          trip.emplace_back(k, id(i, 1), -2.0 * m / (h * h));
          diag += 2.0 * m / (h * h);
        } else {
          trip.emplace_back(k, id(i, j + 1), -1.0 / (h * h));
          trip.emplace_back(k, id(i, j - 1), -1.0 / (h * h));
          diag += 2.0 / (h * h);
          if (m > 1) {
            const double c = m - 1;
            if (c * h / (2.0 * t) < 1.0) {
              trip.emplace_back(k, id(i, j + 1), -c / (2.0 * h * t));
              trip.emplace_back(k, id(i, j - 1), +c / (2.0 * h * t));
            } else {
              trip.emplace_back(k, id(i, j + 1), -c / (h * t));
              diag += c / (h * t);
            }
          }
        }
        trip.emplace_back(k, k, diag);
      }
    }
    Eigen::SparseMatrix<double> J(N, N);
    J.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(J);
    REQUIRE(lu.info() == Eigen::Success);
    Eigen::VectorXd next = lu.solve(rhs);
    const double step = (next - u).cwiseAbs().maxCoeff();
    u = next;
    if (step < 1e-11) break;
  }

  double defect = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      defect = std::max(defect, std::abs(u[id(i, j)] + u[id(j, i)]));
  CHECK(defect <= 10.0 * h * h);
}

TEST_CASE("diagnostics JSON carries the stable key set") {
  Run run = solve("allen_cahn", 2, 12.0, 1.0 / 8.0);
  DiagnosticsReport report;
  report.bound_violation = check_pointwise_bound(run.maximal, run.profile);
  report.energy_by_R.push_back({6.0, 1.0, 1.0 / 216.0});
  std::tie(report.asym_sup_u, report.asym_sup_grad) =
      check_asymptotics(run.maximal, run.profile, 6.0, 9.0);
  report.monotonicity_minima = monotonicity_minima(run.maximal);
  report.symmetry_defect = check_symmetry(run.extended);
  const std::string json = report.to_json();
  for (const char* key :
       {"bound_violation", "energy_by_R", "asym_sup_u", "asym_sup_grad",
        "monotonicity_minima", "symmetry_defect"})
    CHECK(json.find(key) != std::string::npos);
}
