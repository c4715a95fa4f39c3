#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace saddlekit {

/// Masked uniform lattice carrying the weighted operator
/// -Lap_h - (m-1)(d_s/s + d_t/t) + potential with zero Dirichlet data on
/// the mask boundary. Nodes outside the mask act as Dirichlet-zero
/// neighbors.
struct MaskedGrid {
  int m = 1;
  double h = 0.0;
  std::vector<double> s, t;
  std::vector<std::array<int, 4>> nbr;  // +s, -s, +t, -t; -1 = boundary zero
};

/// Lattice nodes strictly inside the disc of the given center and radius.
/// The disc must keep s, t positive when m > 1.
MaskedGrid make_disc_grid(int m, double h, double center_s, double center_t,
                          double radius);

/// Lattice nodes strictly inside the open rectangle (s0, s1) x (t0, t1).
MaskedGrid make_rect_grid(int m, double h, double s0, double s1, double t0,
                          double t1);

struct EigenPair {
  double lambda = 0.0;
  std::vector<double> phi;  // positive, sup-normalized to 1
  int iterations = 0;
};

/// Smallest eigenpair by inverse power iteration on the factorized
/// operator; stops when the Rayleigh quotient settles to the given
/// tolerance, throws on stagnation quoting the last quotient.
/// An empty potential span means zero potential.
EigenPair principal_eigenpair(const MaskedGrid& grid,
                              std::span<const double> potential = {},
                              double tol = 1e-8);

}  // namespace saddlekit
