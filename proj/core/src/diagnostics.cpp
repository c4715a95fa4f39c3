#include "saddlekit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace saddlekit {

double check_pointwise_bound(const SaddleField& field, const Profile1D& profile) {
  const TriGrid& grid = field.grid;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.node_count(); ++k) {
    const double envelope = std::abs(profile.eval(grid.z_of(k)));
    worst = std::max(worst, std::abs(field.values[k]) - envelope);
  }
  return worst;
}

double energy(const SquareField& field, double R_eval, const NonlinearitySpec& spec) {
  if (R_eval > field.R + 1e-12)
    throw std::invalid_argument("energy: R_eval exceeds the grid radius");
  const int n = field.n;
  const double h = field.h;
  const int mexp = field.m - 1;
  double E = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double sc = (i + 0.5) * h;
      const double tc = (j + 0.5) * h;
      if (sc * sc + tc * tc >= R_eval * R_eval) continue;
      const double u00 = field.at(i, j), u10 = field.at(i + 1, j);
      const double u01 = field.at(i, j + 1), u11 = field.at(i + 1, j + 1);
      const double uc = 0.25 * (u00 + u10 + u01 + u11);
      const double us = ((u10 + u11) - (u00 + u01)) / (2.0 * h);
      const double ut = ((u01 + u11) - (u00 + u10)) / (2.0 * h);
      const double w = std::pow(sc * tc, mexp);
      E += w * (0.5 * (us * us + ut * ut) + spec.potential(uc)) * h * h;
    }
  }
  return E;
}

std::pair<double, double> check_asymptotics(const SaddleField& field,
                                            const Profile1D& profile,
                                            double y_lo, double y_hi) {
  const TriGrid& grid = field.grid;
  const int n = grid.n();
  const double h = grid.h();
  const double inv_sqrt2 = 0.7071067811865476;
  double sup_u = -1.0, sup_grad = -1.0;
  auto value = [&](int i, int j) { return field.values[grid.index(i, j)]; };
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int k = grid.index(i, j);
      const double y = grid.y_of(k);
      if (y < y_lo || y > y_hi) continue;
      const double z = grid.z_of(k);
      sup_u = std::max(sup_u, std::abs(field.values[k] - profile.eval(z)));
      // discrete gradient: central where both neighbors exist in the
      // triangle, one-sided otherwise
      double us, ut;
      if (i + 1 <= n && j <= i + 1 && i - 1 >= j)
        us = (value(i + 1, j) - value(i - 1, j)) / (2.0 * h);
      else if (i + 1 <= n)
        us = (value(i + 1, j) - value(i, j)) / h;
      else
        us = (value(i, j) - value(i - 1, j)) / h;
      if (j + 1 <= i && j - 1 >= 0)
        ut = (value(i, j + 1) - value(i, j - 1)) / (2.0 * h);
      else if (j + 1 <= i)
        ut = (value(i, j + 1) - value(i, j)) / h;
      else
        ut = (value(i, j) - value(i, j - 1)) / h;
      const double du = profile.eval_deriv(z);
      const double gs = us - du * inv_sqrt2;
      const double gt = ut + du * inv_sqrt2;
      sup_grad = std::max(sup_grad, std::sqrt(gs * gs + gt * gt));
    }
  }
  if (sup_u < 0.0)
    throw std::invalid_argument("check_asymptotics: empty band");
  return {sup_u, sup_grad};
}

double check_symmetry(const SquareField& field) {
  double sup = 0.0;
  for (int i = 0; i <= field.n; ++i)
    for (int j = 0; j <= field.n; ++j)
      sup = std::max(sup, std::abs(field.at(i, j) + field.at(j, i)));
  return sup;
}

MonotonicityMinima monotonicity_minima(const SaddleField& field) {
  const TriGrid& grid = field.grid;
  const int n = grid.n();
  const double h = grid.h();
  MonotonicityMinima mins{std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
  auto value = [&](int i, int j) { return field.values[grid.index(i, j)]; };
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (j + 1 <= i)
        mins.neg_dt_min = std::min(mins.neg_dt_min,
                                   -(value(i, j + 1) - value(i, j)) / h);
      if (i + 1 <= n && j <= i + 1)
        mins.ds_min = std::min(mins.ds_min, (value(i + 1, j) - value(i, j)) / h);
      if (i + 1 <= n && j + 1 <= i + 1)
        mins.dy_min = std::min(mins.dy_min, (value(i + 1, j + 1) - value(i, j)) /
                                                (h * std::sqrt(2.0)));
    }
  }
  return mins;
}

double nonlinear_residual_sup(const SaddleField& field,
                              const NonlinearitySpec& spec,
                              double exclusion_radius) {
  const TriGrid& grid = field.grid;
  const int n = grid.n();
  const double h = grid.h();
  const int m = grid.m();
  double sup = 0.0;
  auto value = [&](int i, int j) { return field.values[grid.index(i, j)]; };
  for (int i = 2; i <= n - 2; ++i) {
    for (int j = 2; j + 2 <= i; ++j) {
      const double s = i * h, t = j * h;
      if (s * s + t * t < exclusion_radius * exclusion_radius) continue;
      const double u = value(i, j);
      const double uss = (-value(i + 2, j) + 16 * value(i + 1, j) - 30 * u +
                          16 * value(i - 1, j) - value(i - 2, j)) /
                         (12 * h * h);
      const double utt = (-value(i, j + 2) + 16 * value(i, j + 1) - 30 * u +
                          16 * value(i, j - 1) - value(i, j - 2)) /
                         (12 * h * h);
      const double us = (-value(i + 2, j) + 8 * value(i + 1, j) -
                         8 * value(i - 1, j) + value(i - 2, j)) /
                        (12 * h);
      const double ut = (-value(i, j + 2) + 8 * value(i, j + 1) -
                         8 * value(i, j - 1) + value(i, j - 2)) /
                        (12 * h);
      const double res =
          -(uss + utt) - (m - 1) * (us / s + ut / t) - spec.f(u);
      sup = std::max(sup, std::abs(res));
    }
  }
  return sup;
}

std::string DiagnosticsReport::to_json() const {
  nlohmann::json j;
  j["bound_violation"] = bound_violation;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : energy_by_R)
    rows.push_back({row[0], row[1], row[2]});
  j["energy_by_R"] = rows;
  j["asym_sup_u"] = asym_sup_u;
  j["asym_sup_grad"] = asym_sup_grad;
  j["monotonicity_minima"] = {{"neg_dt_min", monotonicity_minima.neg_dt_min},
                              {"ds_min", monotonicity_minima.ds_min},
                              {"dy_min", monotonicity_minima.dy_min}};
  j["symmetry_defect"] = symmetry_defect;
  return j.dump(2);
}

}  // namespace saddlekit
