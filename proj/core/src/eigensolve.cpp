#include "saddlekit/eigensolve.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "saddlekit/linear_solver.hpp"

namespace saddlekit {

namespace {

MaskedGrid from_predicate(int m, double h, double s0, double s1, double t0,
                          double t1, const std::function<bool(double, double)>& inside) {
  MaskedGrid grid;
  grid.m = m;
  grid.h = h;
  const int i0 = static_cast<int>(std::floor(s0 / h)) - 1;
  const int i1 = static_cast<int>(std::ceil(s1 / h)) + 1;
  const int j0 = static_cast<int>(std::floor(t0 / h)) - 1;
  const int j1 = static_cast<int>(std::ceil(t1 / h)) + 1;
  std::map<std::pair<int, int>, int> ids;
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      const double s = i * h, t = j * h;
      if (!inside(s, t)) continue;
      ids[{i, j}] = static_cast<int>(grid.s.size());
      grid.s.push_back(s);
      grid.t.push_back(t);
    }
  }
  if (grid.s.empty())
    throw std::invalid_argument("MaskedGrid: region contains no lattice nodes");
  grid.nbr.resize(grid.s.size());
  for (const auto& [ij, k] : ids) {
    auto look = [&](int di, int dj) {
      auto it = ids.find({ij.first + di, ij.second + dj});
      return it == ids.end() ? -1 : it->second;
    };
    grid.nbr[k] = {look(1, 0), look(-1, 0), look(0, 1), look(0, -1)};
  }
  return grid;
}

}  // namespace

MaskedGrid make_disc_grid(int m, double h, double center_s, double center_t,
                          double radius) {
  if (m > 1 && (center_s - radius <= 0.0 || center_t - radius <= 0.0))
    throw std::invalid_argument(
        "make_disc_grid: disc must keep s, t positive for m > 1");
  const double r2 = radius * radius;
  return from_predicate(m, h, center_s - radius, center_s + radius,
                        center_t - radius, center_t + radius,
                        [=](double s, double t) {
                          const double ds = s - center_s, dt = t - center_t;
                          return ds * ds + dt * dt < r2;
                        });
}

MaskedGrid make_rect_grid(int m, double h, double s0, double s1, double t0,
                          double t1) {
  return from_predicate(m, h, s0, s1, t0, t1, [=](double s, double t) {
    return s > s0 && s < s1 && t > t0 && t < t1;
  });
}

EigenPair principal_eigenpair(const MaskedGrid& grid,
                              std::span<const double> potential, double tol) {
  const int N = static_cast<int>(grid.s.size());
  if (!potential.empty() && potential.size() != static_cast<size_t>(N))
    throw std::invalid_argument("principal_eigenpair: potential size mismatch");

  const double h = grid.h;
  const double h2 = h * h;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(N) * 5);
  for (int k = 0; k < N; ++k) {
    double diag = 4.0 / h2 + (potential.empty() ? 0.0 : potential[k]);
    auto add = [&](int nb, double v) {
      if (nb >= 0) trip.emplace_back(k, nb, v);
    };
    add(grid.nbr[k][0], -1.0 / h2);
    add(grid.nbr[k][1], -1.0 / h2);
    add(grid.nbr[k][2], -1.0 / h2);
    add(grid.nbr[k][3], -1.0 / h2);
    if (grid.m > 1) {
      const double c = grid.m - 1;
      const double s = grid.s[k], t = grid.t[k];
      if (c * h / (2.0 * s) >= 1.0) {
        add(grid.nbr[k][0], -c / (h * s));
        diag += c / (h * s);
      } else {
        add(grid.nbr[k][0], -c / (2.0 * h * s));
        add(grid.nbr[k][1], +c / (2.0 * h * s));
      }
      if (c * h / (2.0 * t) >= 1.0) {
        add(grid.nbr[k][2], -c / (h * t));
        diag += c / (h * t);
      } else {
        add(grid.nbr[k][2], -c / (2.0 * h * t));
        add(grid.nbr[k][3], +c / (2.0 * h * t));
      }
    }
    trip.emplace_back(k, k, diag);
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trip.begin(), trip.end());

  LinearSolver solver(A);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(N);
  x.normalize();
  double lambda = 0.0;
  EigenPair pair;
  for (int iter = 1; iter <= 500; ++iter) {
    Eigen::VectorXd next = solver.solve(x);
    next.normalize();
    const double quotient = next.dot(A * next);
    pair.iterations = iter;
    if (iter > 1 && std::abs(quotient - lambda) <= tol * std::max(1.0, std::abs(quotient))) {
      lambda = quotient;
      x = next;
      pair.lambda = lambda;
      double sup = 0.0;
      for (int k = 0; k < N; ++k) sup = std::max(sup, std::abs(x[k]));
      const double sign = x[std::distance(
          x.data(), std::max_element(x.data(), x.data() + N,
                                     [](double a, double b) {
                                       return std::abs(a) < std::abs(b);
                                     }))] >= 0.0
                              ? 1.0
                              : -1.0;
      pair.phi.resize(N);
      for (int k = 0; k < N; ++k) pair.phi[k] = sign * x[k] / sup;
      return pair;
    }
    lambda = quotient;
    x = next;
  }
  std::ostringstream msg;
  msg << "principal_eigenpair: inverse iteration stagnated, last Rayleigh "
         "quotient "
      << lambda;
  throw std::runtime_error(msg.str());
}

}  // namespace saddlekit
