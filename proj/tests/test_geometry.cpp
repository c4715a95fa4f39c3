#include <stdexcept>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "saddlekit/geometry.hpp"

using namespace saddlekit;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace

TEST_CASE("coordinates of reference points") {
  const std::vector<double> x{3.0, 0.0, 1.0, 0.0};
  const ConeCoords c = to_cone_coords(2, x);
  CHECK(c.s == doctest::Approx(3.0));
  CHECK(c.t == doctest::Approx(1.0));
  CHECK(c.y == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(c.z == doctest::Approx(std::sqrt(2.0)));
  CHECK(dist_to_cone(c) == doctest::Approx(std::sqrt(2.0)));

  const std::vector<double> on_cone{0.7, 0.7};
  CHECK(dist_to_cone(to_cone_coords(1, on_cone)) == doctest::Approx(0.0));

  const std::vector<double> origin{0.0, 0.0, 0.0, 0.0};
  const ConeCoords o = to_cone_coords(2, origin);
  CHECK(o.s == 0.0);
  CHECK(o.t == 0.0);
  CHECK(o.y == 0.0);
  CHECK(o.z == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(to_cone_coords(2, x), std::invalid_argument);
}

TEST_CASE("round trip (s,t) <-> (y,z)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const double s = uniform(rng, 0.0, 20.0);
    const double t = uniform(rng, 0.0, 20.0);
    const ConeCoords c = cone_coords_from_st(2, s, t);
    const double s_back = (c.y + c.z) / std::sqrt(2.0);
    const double t_back = (c.y - c.z) / std::sqrt(2.0);
    CHECK(s_back == doctest::Approx(s).epsilon(1e-14));
    CHECK(t_back == doctest::Approx(t).epsilon(1e-14));
  }
}

TEST_CASE("(s,t) invariant under block rotations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = uniform(rng, 0.0, 2.0 * M_PI);
    const double b = uniform(rng, 0.0, 2.0 * M_PI);
    std::vector<double> x(4);
    for (auto& v : x) v = uniform(rng, -5.0, 5.0);
    const std::vector<double> rotated{
        std::cos(a) * x[0] - std::sin(a) * x[1],
        std::sin(a) * x[0] + std::cos(a) * x[1],
        std::cos(b) * x[2] - std::sin(b) * x[3],
        std::sin(b) * x[2] + std::cos(b) * x[3]};
    const ConeCoords c1 = to_cone_coords(2, x);
    const ConeCoords c2 = to_cone_coords(2, rotated);
    CHECK(c1.s == doctest::Approx(c2.s).epsilon(1e-13));
    CHECK(c1.t == doctest::Approx(c2.t).epsilon(1e-13));
  }
}

TEST_CASE("foot point of the reference point") {
  const std::vector<double> x{3.0, 0.0, 1.0, 0.0};
  const std::vector<double> x0 = foot_point(2, x);
  CHECK(x0[0] == doctest::Approx(2.0));
  CHECK(x0[1] == doctest::Approx(0.0));
  CHECK(x0[2] == doctest::Approx(2.0));
  CHECK(x0[3] == doctest::Approx(0.0));
  double d2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - x0[i]) * (x[i] - x0[i]);
  CHECK(std::sqrt(d2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("foot point lies on the cone and realizes the distance") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(6);
    for (auto& v : x) v = uniform(rng, 0.1, 4.0);
    const ConeCoords c = to_cone_coords(3, x);
    const std::vector<double> x0 = foot_point(3, x);
    const ConeCoords c0 = to_cone_coords(3, x0);
    CHECK(c0.s == doctest::Approx(c0.t).epsilon(1e-12));
    double d2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - x0[i]) * (x[i] - x0[i]);
    CHECK(std::sqrt(d2) == doctest::Approx(dist_to_cone(c)).epsilon(1e-12));
  }
}

TEST_CASE("foot point rejects degenerate rays") {
  const std::vector<double> x{1.0, 0.0, 0.0, 0.0};  // t = 0
  CHECK_THROWS_AS(foot_point(2, x), std::invalid_argument);
}

TEST_CASE("distance agrees with a Monte-Carlo projection oracle") {
  // 1e5 sampled cone points per trial, annealed toward the minimizer
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> x(4);
    for (auto& v : x) v = uniform(rng, 0.2, 3.0);
    const ConeCoords c = to_cone_coords(2, x);
    double r = 1.0, a = 0.0, b = 0.0;
    auto dist = [&](double rr, double aa, double bb) {
      const double p[4] = {rr * std::cos(aa), rr * std::sin(aa),
                           rr * std::cos(bb), rr * std::sin(bb)};
      double d2 = 0.0;
      for (int i = 0; i < 4; ++i) d2 += (x[i] - p[i]) * (x[i] - p[i]);
      return std::sqrt(d2);
    };
    double best = dist(r, a, b);
    double radius = 4.0;
    for (int stage = 0; stage < 40; ++stage, radius *= 0.72) {
      for (int k = 0; k < 2500; ++k) {
        const double rr = std::abs(r + uniform(rng, -radius, radius));
        const double aa = a + uniform(rng, -radius, radius);
        const double bb = b + uniform(rng, -radius, radius);
        const double d = dist(rr, aa, bb);
        if (d < best) {
          best = d;
          r = rr;
          a = aa;
          b = bb;
        }
      }
    }
    CHECK(std::abs(best - dist_to_cone(c)) <= 1e-3);
  }
}
