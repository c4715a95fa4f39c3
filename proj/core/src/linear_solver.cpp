#include "saddlekit/linear_solver.hpp"

#include <sstream>
#include <stdexcept>

namespace saddlekit {

LinearSolver::LinearSolver(Eigen::SparseMatrix<double> matrix, double tol)
    : matrix_(std::move(matrix)), tol_(tol) {
  matrix_.makeCompressed();
  lu_.compute(matrix_);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("LinearSolver: sparse LU factorization failed");
}

Eigen::VectorXd LinearSolver::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = lu_.solve(rhs);
  const double scale = rhs.norm();
  last_residual_ = (matrix_ * x - rhs).norm() / (scale > 0.0 ? scale : 1.0);
  if (last_residual_ > tol_) {
    std::ostringstream msg;
    msg << "LinearSolver: relative residual " << last_residual_
        << " exceeds contract " << tol_;
    throw std::runtime_error(msg.str());
  }
  return x;
}

}  // namespace saddlekit
