#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace saddlekit {

/// Direct sparse LU behind the solve contract: relative residual of every
/// solve must reach 1e-11 in the discrete 2-norm, otherwise the solve throws.
class LinearSolver {
 public:
  explicit LinearSolver(Eigen::SparseMatrix<double> matrix, double tol = 1e-11);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  double last_residual() const { return last_residual_; }

 private:
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  double tol_;
  mutable double last_residual_ = 0.0;
};

}  // namespace saddlekit
