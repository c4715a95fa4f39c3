#include "saddlekit/saddle_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saddlekit/eigensolve.hpp"
#include "saddlekit/linear_solver.hpp"

namespace saddlekit {

namespace {

Eigen::VectorXd run_iteration(const TriOperator& op, const NonlinearitySpec& spec,
                              const LinearSolver& solver,
                              const Eigen::VectorXd& boundary,
                              Eigen::VectorXd start, double tol, int k_max,
                              bool* converged, std::vector<IterationRecord>* history) {
  const TriGrid& grid = op.grid;
  const int N = grid.node_count();
  const double fpM = -op.shift;  // f'(M)
  Eigen::VectorXd u = std::move(start);
  *converged = false;
  for (int k = 1; k <= k_max; ++k) {
    Eigen::VectorXd rhs(N);
    for (int idx = 0; idx < N; ++idx) {
      const NodeTag tag = grid.tag(idx);
      if (tag == NodeTag::ConeEdge || tag == NodeTag::OuterEdge)
        rhs[idx] = boundary[idx];
      else
        rhs[idx] = spec.f(u[idx]) - fpM * u[idx];
    }
    Eigen::VectorXd next = solver.solve(rhs);
    // pin Dirichlet rows exactly; the LU otherwise leaves them with
    // elimination roundoff
    for (int idx = 0; idx < N; ++idx) {
      const NodeTag tag = grid.tag(idx);
      if (tag == NodeTag::ConeEdge || tag == NodeTag::OuterEdge)
        next[idx] = boundary[idx];
    }
    const double update = (next - u).cwiseAbs().maxCoeff();
    const double defect = (next - u).maxCoeff();
    if (history) history->push_back({k, update, solver.last_residual(), defect});
    u = std::move(next);
    if (update <= tol) {
      *converged = true;
      break;
    }
  }
  return u;
}

}  // namespace

SaddleField iterate_maximal(const TriOperator& op, const NonlinearitySpec& spec,
                            const Profile1D& profile, double tol, int k_max) {
  if (!(tol > 0.0)) throw std::invalid_argument("iterate_maximal: tol must be positive");
  const TriGrid& grid = op.grid;
  const int N = grid.node_count();

  Eigen::VectorXd boundary = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd start(N);
  for (int k = 0; k < N; ++k) {
    const double z = grid.z_of(k);
    start[k] = profile.eval(z);
    if (grid.tag(k) == NodeTag::OuterEdge) boundary[k] = profile.eval(z);
    // cone edge boundary stays 0
  }
  for (int k = 0; k < N; ++k)
    if (grid.tag(k) == NodeTag::ConeEdge) start[k] = 0.0;

  SaddleField field{grid, {}, FieldKind::Maximal, false, {}, 0.0, true};
  LinearSolver solver(op.matrix);
  field.values = run_iteration(op, spec, solver, boundary, std::move(start), tol,
                               k_max, &field.converged, &field.history);
  return field;
}

SaddleField iterate_minimal(const TriOperator& op, const NonlinearitySpec& spec,
                            double tol, int k_max) {
  if (!(tol > 0.0)) throw std::invalid_argument("iterate_minimal: tol must be positive");
  const TriGrid& grid = op.grid;
  const int N = grid.node_count();
  const double M = spec.well;
  const double R = grid.R();

  Eigen::VectorXd boundary = Eigen::VectorXd::Zero(N);
  LinearSolver solver(op.matrix);

  // downward sweep from the constant supersolution M
  Eigen::VectorXd start_down(N);
  for (int k = 0; k < N; ++k) {
    const NodeTag tag = grid.tag(k);
    start_down[k] = (tag == NodeTag::ConeEdge || tag == NodeTag::OuterEdge) ? 0.0 : M;
  }
  SaddleField field{grid, {}, FieldKind::Minimal, false, {}, 0.0, true};
  field.values = run_iteration(op, spec, solver, boundary, std::move(start_down),
                               tol, k_max, &field.converged, &field.history);

  // upward sweep from eps * phi1 on an inscribed disc; the disc lattice
  // spacing is kept an integer multiple of h so its nodes land on the grid
  const double cs = 0.625 * R, ct = 0.25 * R;
  const double radius =
      0.85 * std::min({(cs - ct) / std::sqrt(2.0), R - cs, ct});
  const int coarsen = std::max(1, static_cast<int>(std::lround(radius / 48.0 / grid.h())));
  const double eig_h = coarsen * grid.h();
  MaskedGrid disc = make_disc_grid(grid.m(), eig_h, cs, ct, radius);
  EigenPair pair = principal_eigenpair(disc);

  // largest eps with f(eps phi) >= lambda1 * eps * phi on the disc, halved
  double eps = 0.5 * M;
  for (int trial = 0; trial < 60; ++trial) {
    bool subsolution = true;
    for (size_t k = 0; k < disc.s.size(); ++k) {
      const double v = eps * pair.phi[k];
      if (spec.f(v) < pair.lambda * v) {
        subsolution = false;
        break;
      }
    }
    if (subsolution) break;
    eps *= 0.5;
  }
  eps *= 0.5;

  Eigen::VectorXd start_up = Eigen::VectorXd::Zero(N);
  for (size_t k = 0; k < disc.s.size(); ++k) {
    const int i = static_cast<int>(std::lround(disc.s[k] / grid.h()));
    const int j = static_cast<int>(std::lround(disc.t[k] / grid.h()));
    if (std::abs(disc.s[k] - i * grid.h()) < 1e-12 &&
        std::abs(disc.t[k] - j * grid.h()) < 1e-12 && j <= i && i <= grid.n()) {
      const int idx = grid.index(i, j);
      if (grid.tag(idx) == NodeTag::Interior || grid.tag(idx) == NodeTag::Axis)
        start_up[idx] = eps * pair.phi[k];
    }
  }
  bool up_converged = false;
  Eigen::VectorXd up = run_iteration(op, spec, solver, boundary,
                                     std::move(start_up), tol, k_max,
                                     &up_converged, nullptr);

  field.uniqueness_gap = (up - field.values).cwiseAbs().maxCoeff();
  field.uniqueness_ok =
      up_converged && field.uniqueness_gap <= 10.0 * grid.h() * grid.h();
  return field;
}

SquareField extend_odd(const SaddleField& field) {
  const TriGrid& grid = field.grid;
  SquareField sq;
  sq.m = grid.m();
  sq.R = grid.R();
  sq.h = grid.h();
  sq.n = grid.n();
  sq.values.assign(static_cast<size_t>(sq.n + 1) * (sq.n + 1), 0.0);
  for (int i = 0; i <= sq.n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = field.values[grid.index(i, j)];
      sq.values[static_cast<size_t>(i) * (sq.n + 1) + j] = v;
      sq.values[static_cast<size_t>(j) * (sq.n + 1) + i] = -v;
    }
  }
  return sq;
}

}  // namespace saddlekit
