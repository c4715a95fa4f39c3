#include "saddlekit/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace saddlekit {

ConeCoords to_cone_coords(int m, std::span<const double> x) {
  if (m < 1) throw std::invalid_argument("to_cone_coords: m must be >= 1");
  if (x.size() != static_cast<size_t>(2 * m))
    throw std::invalid_argument("to_cone_coords: x must have dimension 2m");
  double s2 = 0.0, t2 = 0.0;
  for (int i = 0; i < m; ++i) s2 += x[i] * x[i];
  for (int i = m; i < 2 * m; ++i) t2 += x[i] * x[i];
  return cone_coords_from_st(m, std::sqrt(s2), std::sqrt(t2));
}

ConeCoords cone_coords_from_st(int m, double s, double t) {
  ConeCoords c;
  c.m = m;
  c.s = s;
  c.t = t;
  const double r = 1.0 / std::sqrt(2.0);
  c.y = (s + t) * r;
  c.z = (s - t) * r;
  return c;
}

double dist_to_cone(const ConeCoords& c) { return std::abs(c.z); }

std::vector<double> foot_point(int m, std::span<const double> x) {
  const ConeCoords c = to_cone_coords(m, x);
  if (c.s == 0.0 || c.t == 0.0)
    throw std::invalid_argument(
        "foot_point: requires s != 0 and t != 0 (closest point not of the "
        "form (alpha x^1, beta x^2) on the degenerate rays)");
  const double mid = 0.5 * (c.s + c.t);
  const double alpha = mid / c.s;
  const double beta = mid / c.t;
  std::vector<double> x0(x.size());
  for (int i = 0; i < m; ++i) x0[i] = alpha * x[i];
  for (int i = m; i < 2 * m; ++i) x0[i] = beta * x[i];
  return x0;
}

}  // namespace saddlekit
