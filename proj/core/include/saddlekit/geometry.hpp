#pragma once

#include <span>
#include <vector>

namespace saddlekit {

/// Radial coordinates of a point of R^{2m} relative to the Simons cone
/// {s = t}: s, t are the norms of the first/last m coordinates and
/// y = (s+t)/sqrt(2), z = (s-t)/sqrt(2). |z| is the distance to the cone.
struct ConeCoords {
  int m = 1;
  double s = 0.0;
  double t = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Splits x in R^{2m} into (s, t, y, z). Throws std::invalid_argument on
/// dimension mismatch.
ConeCoords to_cone_coords(int m, std::span<const double> x);

ConeCoords cone_coords_from_st(int m, double s, double t);

/// Distance to the Simons cone, |s - t| / sqrt(2) = |z|.
double dist_to_cone(const ConeCoords& c);

/// Closest cone point x0 = (alpha x^1, beta x^2) with
/// alpha s = beta t = (s+t)/2. Requires s != 0 and t != 0.
std::vector<double> foot_point(int m, std::span<const double> x);

}  // namespace saddlekit
