#pragma once

#include <Eigen/Dense>
#include <vector>

#include "saddlekit/grid.hpp"
#include "saddlekit/profile1d.hpp"

namespace saddlekit {

enum class FieldKind { Iterate, Maximal, Minimal };

struct IterationRecord {
  int k = 0;
  double sup_update = 0.0;
  double solve_residual = 0.0;
  /// max over nodes of (new - old); <= 0 means the step was monotone
  /// nonincreasing (downward sweeps) up to solver noise.
  double monotone_defect = 0.0;
};

/// Scalar field on a TriGrid together with its iteration history.
struct SaddleField {
  TriGrid grid;
  Eigen::VectorXd values;
  FieldKind kind = FieldKind::Iterate;
  bool converged = false;
  std::vector<IterationRecord> history;
  // minimal solve only: gap between downward and upward limits
  double uniqueness_gap = 0.0;
  bool uniqueness_ok = true;
};

/// Odd extension of a triangle field onto the full square [0, R]^2,
/// u(s, t) = -u(t, s); vanishes on the diagonal.
struct SquareField {
  int m = 1;
  double R = 0.0, h = 0.0;
  int n = 0;
  std::vector<double> values;  // (n+1)^2, row-major by i (s index)
  double at(int i, int j) const { return values[static_cast<size_t>(i) * (n + 1) + j]; }
};

/// Downward monotone iteration from the supersolution u0(z): solves
/// L u_{k+1} = g(u_k) with Dirichlet data 0 on the cone edge, u0(z) on the
/// outer edge, until the sup update reaches tol or k_max is exhausted
/// (field returned with converged = false in that case).
SaddleField iterate_maximal(const TriOperator& op, const NonlinearitySpec& spec,
                            const Profile1D& profile, double tol, int k_max);

/// Minimal problem on the triangle with zero data on both edges: downward
/// iteration from the constant supersolution M, plus an upward iteration
/// from eps * phi1 (principal Dirichlet eigenfunction on an inscribed
/// disc). The returned field is the downward limit; uniqueness_gap records
/// the sup distance between the two limits and uniqueness_ok flags
/// gap <= 10 * h^2.
SaddleField iterate_minimal(const TriOperator& op, const NonlinearitySpec& spec,
                            double tol, int k_max);

SquareField extend_odd(const SaddleField& field);

}  // namespace saddlekit
