#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "saddlekit/profile1d.hpp"
#include "saddlekit/saddle_solver.hpp"

namespace saddlekit {

/// Minima of the signed difference quotients of the maximal field:
/// -d_t u, d_s u and d_y u should all stay >= -1e-8 on the interior.
struct MonotonicityMinima {
  double neg_dt_min = 0.0;
  double ds_min = 0.0;
  double dy_min = 0.0;
};

struct DiagnosticsReport {
  double bound_violation = 0.0;
  std::vector<std::array<double, 3>> energy_by_R;  // (R, E, E / R^{2m-1})
  double asym_sup_u = 0.0;
  double asym_sup_grad = 0.0;
  MonotonicityMinima monotonicity_minima;
  double symmetry_defect = 0.0;

  std::string to_json() const;
};

/// max over nodes of |u| - |u0((s-t)/sqrt 2)|; the pointwise envelope bound
/// passes iff this is <= 1e-8.
double check_pointwise_bound(const SaddleField& field, const Profile1D& profile);

/// Energy c_m int s^{m-1} t^{m-1} {(u_s^2 + u_t^2)/2 + G(u)} over the
/// quarter disc {s^2 + t^2 < R_eval^2, s, t > 0}, midpoint quadrature per
/// cell, with c_m = 1.
double energy(const SquareField& field, double R_eval, const NonlinearitySpec& spec);

/// sup over band nodes (y in [y_lo, y_hi]) of |u - u0(z)| and of the
/// Euclidean gap between the discrete gradient and the analytic gradient
/// of U = u0(z). Throws std::invalid_argument when the band is empty.
std::pair<double, double> check_asymptotics(const SaddleField& field,
                                            const Profile1D& profile,
                                            double y_lo, double y_hi);

/// sup |u(s,t) + u(t,s)| over the square; zero by construction of
/// extend_odd.
double check_symmetry(const SquareField& field);

MonotonicityMinima monotonicity_minima(const SaddleField& field);

/// Residual of the converged field against a fourth-order evaluation of
/// the same operator, sup over interior nodes with full stencil support
/// at distance >= exclusion_radius from the origin. O(h^2) for a
/// second-order-converged field.
double nonlinear_residual_sup(const SaddleField& field,
                              const NonlinearitySpec& spec,
                              double exclusion_radius);

}  // namespace saddlekit
