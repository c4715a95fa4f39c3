#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "saddlekit/nonlinearity.hpp"

namespace saddlekit {

enum class NodeTag : std::uint8_t { Interior, ConeEdge, OuterEdge, Axis };

/// Uniform lattice on the triangle T_R = {0 <= t <= s <= R}, nodes
/// (i h, j h) with 0 <= j <= i <= n = R/h. Tag precedence: cone edge
/// (j == i, includes origin and the corner (R, R)), then outer edge
/// (i == n), then axis (j == 0), else interior.
class TriGrid {
 public:
  TriGrid() = default;  // empty placeholder grid
  TriGrid(int m, double R, double h);

  int m() const { return m_; }
  double R() const { return R_; }
  double h() const { return h_; }
  int n() const { return n_; }
  int node_count() const { return (n_ + 1) * (n_ + 2) / 2; }

  int index(int i, int j) const { return i * (i + 1) / 2 + j; }
  NodeTag tag(int i, int j) const { return tags_[index(i, j)]; }
  NodeTag tag(int k) const { return tags_[k]; }
  double s_of(int k) const { return s_[k]; }
  double t_of(int k) const { return t_[k]; }
  double y_of(int k) const { return (s_[k] + t_[k]) * 0.7071067811865476; }
  double z_of(int k) const { return (s_[k] - t_[k]) * 0.7071067811865476; }

 private:
  int m_ = 1;
  double R_ = 0.0, h_ = 0.0;
  int n_ = 0;
  std::vector<NodeTag> tags_;
  std::vector<double> s_, t_;
};

/// Discrete linear operator L = -Lap_h - (m-1)(d_s/s + d_t/t)_h - f'(M) I
/// on a TriGrid: central 3-point second differences, central first
/// differences where the M-matrix property allows, one-sided (toward
/// increasing coordinate) otherwise and near the origin for m >= 3.
/// Axis rows replace (m-1) u_t / t by its even-reflection limit, giving a
/// total coefficient m * u_tt there. Dirichlet rows on cone and outer edges.
struct TriOperator {
  TriGrid grid;
  double shift;  // -f'(M) > 0
  bool upwind_used = false;
  Eigen::SparseMatrix<double> matrix;
};

/// Assembles the operator. Throws if h does not divide R, n < 8, or a row
/// fails weak diagonal dominance (instructing a smaller h).
TriOperator discretize(int m, double R, double h, const NonlinearitySpec& spec);

}  // namespace saddlekit
