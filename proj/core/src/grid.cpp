#include "saddlekit/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace saddlekit {

TriGrid::TriGrid(int m, double R, double h) : m_(m), R_(R), h_(h) {
  if (m < 1) throw std::invalid_argument("TriGrid: m must be >= 1");
  if (!(h > 0.0) || !(R > 0.0)) throw std::invalid_argument("TriGrid: R, h must be positive");
  const double ratio = R / h;
  n_ = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - n_) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("TriGrid: h must divide R");
  if (n_ < 8) throw std::invalid_argument("TriGrid: R/h must be >= 8");

  tags_.resize(node_count());
  s_.resize(node_count());
  t_.resize(node_count());
  for (int i = 0; i <= n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int k = index(i, j);
      s_[k] = i * h_;
      t_[k] = j * h_;
      if (j == i) tags_[k] = NodeTag::ConeEdge;
      else if (i == n_) tags_[k] = NodeTag::OuterEdge;
      else if (j == 0) tags_[k] = NodeTag::Axis;
      else tags_[k] = NodeTag::Interior;
    }
  }
}

TriOperator discretize(int m, double R, double h, const NonlinearitySpec& spec) {
  TriOperator op{TriGrid(m, R, h), -spec.df_at_well(), false, {}};
  const TriGrid& grid = op.grid;
  if (!(op.shift > 0.0))
    throw std::invalid_argument("discretize: spec must have f'(M) < 0");

  const int n = grid.n();
  const int N = grid.node_count();
  const double h2 = h * h;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(N) * 6);

  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int k = grid.index(i, j);
      const NodeTag tag = grid.tag(k);
      if (tag == NodeTag::ConeEdge || tag == NodeTag::OuterEdge) {
        trip.emplace_back(k, k, 1.0);
        continue;
      }
      const double s = i * h;
      const double t = j * h;
      double diag = op.shift;

      // second differences in s
      trip.emplace_back(k, grid.index(i + 1, j), -1.0 / h2);
      trip.emplace_back(k, grid.index(i - 1, j), -1.0 / h2);
      diag += 2.0 / h2;

      if (tag == NodeTag::Axis) {
        // ghost reflection across t = 0: total coefficient m * u_tt
        trip.emplace_back(k, grid.index(i, 1), -2.0 * m / h2);
        diag += 2.0 * m / h2;
      } else {
        trip.emplace_back(k, grid.index(i, j + 1), -1.0 / h2);
        trip.emplace_back(k, grid.index(i, j - 1), -1.0 / h2);
        diag += 2.0 / h2;
      }

      if (m > 1) {
        const double c = m - 1;
        // -(m-1)/s * u_s
        const bool upwind_s = (m >= 3 && s <= 2.0 * h + 1e-12) || c * h / (2.0 * s) >= 1.0;
        if (upwind_s) {
          trip.emplace_back(k, grid.index(i + 1, j), -c / (h * s));
          diag += c / (h * s);
          op.upwind_used = true;
        } else {
          trip.emplace_back(k, grid.index(i + 1, j), -c / (2.0 * h * s));
          trip.emplace_back(k, grid.index(i - 1, j), +c / (2.0 * h * s));
        }
        // -(m-1)/t * u_t (absent on the axis, where it became m*u_tt)
        if (tag != NodeTag::Axis) {
          const bool upwind_t = c * h / (2.0 * t) > 1.0;
          if (upwind_t) {
            trip.emplace_back(k, grid.index(i, j + 1), -c / (h * t));
            diag += c / (h * t);
            op.upwind_used = true;
          } else {
            trip.emplace_back(k, grid.index(i, j + 1), -c / (2.0 * h * t));
            trip.emplace_back(k, grid.index(i, j - 1), +c / (2.0 * h * t));
          }
        }
      }
      trip.emplace_back(k, k, diag);
    }
  }

  op.matrix.resize(N, N);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();

  // weak diagonal dominance scan (M-matrix sanity)
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows = op.matrix;
  for (int r = 0; r < rows.outerSize(); ++r) {
    double diag = 0.0, off = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, r); it; ++it) {
      if (it.col() == r) diag = it.value();
      else off += std::abs(it.value());
    }
    if (off > diag + 1e-9) {
      std::ostringstream msg;
      msg << "discretize: diagonal dominance violated at node " << r
          << " (s = " << op.grid.s_of(r) << ", t = " << op.grid.t_of(r)
          << "); use a smaller h";
      throw std::runtime_error(msg.str());
    }
  }
  return op;
}

}  // namespace saddlekit
