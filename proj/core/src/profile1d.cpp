#include "saddlekit/profile1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace saddlekit {

namespace {

// 20-point Gauss-Legendre on [-1, 1].
constexpr int kGauss = 20;
constexpr double kGaussX[kGauss] = {
    -0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
    -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
    -0.5108670019508271, -0.3737060887154195, -0.2277858511416451,
    -0.0765265211334973, 0.0765265211334973,  0.2277858511416451,
    0.3737060887154195,  0.5108670019508271,  0.6360536807265150,
    0.7463319064601508,  0.8391169718222188,  0.9122344282513259,
    0.9639719272779138,  0.9931285991850949};
constexpr double kGaussW[kGauss] = {
    0.0176140071391521, 0.0406014298003869, 0.0626720483341091,
    0.0832767415767048, 0.1019301198172404, 0.1181945319615184,
    0.1316886384491766, 0.1420961093183820, 0.1491729864726037,
    0.1527533871307258, 0.1527533871307258, 0.1491729864726037,
    0.1420961093183820, 0.1316886384491766, 0.1181945319615184,
    0.1019301198172404, 0.0832767415767048, 0.0626720483341091,
    0.0406014298003869, 0.0176140071391521};

struct Ladder {
  // cumulative phi over graded sigma cells [0, b1, b2, ...] approaching well
  std::vector<double> sigma;  // breakpoints, sigma[0] = 0
  std::vector<double> phi;    // phi at breakpoints, phi[0] = 0
};

double inv_speed(const NonlinearitySpec& spec, double w) {
  const double G = spec.potential(w);
  if (!(G > 0.0)) {
    std::ostringstream msg;
    msg << "build_profile: quadrature failure, G(" << w << ") = " << G
        << " is not positive inside the well interval";
    throw std::runtime_error(msg.str());
  }
  return 1.0 / std::sqrt(2.0 * G);
}

double gauss_phi(const NonlinearitySpec& spec, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int q = 0; q < kGauss; ++q)
    acc += kGaussW[q] * inv_speed(spec, mid + half * kGaussX[q]);
  return acc * half;
}

Ladder build_ladder(const NonlinearitySpec& spec, double target) {
  Ladder ladder;
  ladder.sigma.push_back(0.0);
  ladder.phi.push_back(0.0);
  const double M = spec.well;
  double sigma = 0.0;
  for (int cell = 0; cell < 600; ++cell) {
    const double next = M - 0.85 * (M - sigma);
    ladder.phi.push_back(ladder.phi.back() + gauss_phi(spec, sigma, next));
    ladder.sigma.push_back(next);
    sigma = next;
    if (ladder.phi.back() >= target) return ladder;
  }
  throw std::runtime_error(
      "build_profile: phi failed to reach the requested half-width; "
      "potential decays too slowly near the well");
}

// invert phi(sigma) = tau within the ladder by bracketed Newton
double invert(const NonlinearitySpec& spec, const Ladder& ladder, double tau) {
  if (tau <= 0.0) return 0.0;
  auto it = std::lower_bound(ladder.phi.begin(), ladder.phi.end(), tau);
  const int cell = static_cast<int>(it - ladder.phi.begin()) - 1;
  double lo = ladder.sigma[cell], hi = ladder.sigma[cell + 1];
  const double phi_lo = ladder.phi[cell];
  double sigma = 0.5 * (lo + hi);
  for (int iter = 0; iter < 80; ++iter) {
    const double err = phi_lo + gauss_phi(spec, ladder.sigma[cell], sigma) - tau;
    if (std::abs(err) <= 1e-14 * std::max(1.0, tau)) break;
    if (err > 0.0) hi = sigma; else lo = sigma;
    const double step = err * std::sqrt(2.0 * spec.potential(sigma));
    double next = sigma - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    sigma = next;
  }
  return sigma;
}

}  // namespace

Profile1D build_profile(const NonlinearitySpec& spec, double tau_max, int nodes) {
  if (tau_max < 4.0) throw std::invalid_argument("build_profile: tau_max must be >= 4");
  if (nodes < 64) throw std::invalid_argument("build_profile: nodes must be >= 64");
  {
    const ValidationReport report = validate(spec, 256);
    if (!report.passed) {
      std::ostringstream msg;
      msg << "build_profile: spec '" << spec.name << "' failed validation at check '"
          << report.first_violation()->check << "'";
      throw std::invalid_argument(msg.str());
    }
  }

  Profile1D p;
  p.spec_ = spec;
  p.tau_max_ = tau_max;
  p.decay_rate_ = std::sqrt(-spec.df_at_well());
  p.dtau_ = tau_max / nodes;

  const Ladder ladder = build_ladder(spec, tau_max + 0.5);

  p.tau_.resize(2 * nodes + 1);
  p.u_.resize(2 * nodes + 1);
  p.du_.resize(2 * nodes + 1);
  for (int k = 0; k <= nodes; ++k) {
    const double tau = k * p.dtau_;
    const double sigma = invert(spec, ladder, tau);
    p.tau_[nodes + k] = tau;
    p.u_[nodes + k] = sigma;
    p.du_[nodes + k] = std::sqrt(2.0 * std::max(0.0, spec.potential(sigma)));
    p.tau_[nodes - k] = -tau;
    p.u_[nodes - k] = -sigma;
    p.du_[nodes - k] = p.du_[nodes + k];
  }
  p.tail_amplitude_ = spec.well - p.u_.back();
  return p;
}

double Profile1D::eval(double tau) const {
  const double M = spec_.well;
  if (tau > tau_max_)
    return M - tail_amplitude_ * std::exp(-decay_rate_ * (tau - tau_max_));
  if (tau < -tau_max_)
    return -M + tail_amplitude_ * std::exp(-decay_rate_ * (-tau - tau_max_));
  const int nodes = (node_count() - 1) / 2;
  double pos = (tau + tau_max_) / dtau_;
  int cell = std::clamp(static_cast<int>(pos), 0, 2 * nodes - 1);
  const double t = pos - cell;
  const double h = dtau_;
  const double u0 = u_[cell], u1 = u_[cell + 1];
  const double d0 = du_[cell], d1 = du_[cell + 1];
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * h * d1;
}

double Profile1D::eval_deriv(double tau) const {
  const double at = std::abs(tau);
  if (at > tau_max_)
    return tail_amplitude_ * decay_rate_ * std::exp(-decay_rate_ * (at - tau_max_));
  return std::sqrt(2.0 * std::max(0.0, spec_.potential(eval(tau))));
}

double Profile1D::hamiltonian_residual_sup() const {
  double sup = 0.0;
  for (int k = 0; k < node_count(); ++k) {
    const double r = std::abs(0.5 * du_[k] * du_[k] - spec_.potential(u_[k]));
    sup = std::max(sup, r);
  }
  return sup;
}

double dissipation_integral(const Profile1D& profile) {
  // int du0^2 dtau = int sqrt(2G(w)) dw over the tabulated range (dtau =
  // dw/sqrt(2G)), plus two exponential half-tails A^2 c / 2 each.
  const NonlinearitySpec& spec = profile.spec();
  const double sigma_max = profile.u_at(profile.node_count() - 1);
  double core = 0.0;
  const int panels = 64;
  for (int cell = 0; cell < panels; ++cell) {
    const double a = cell * sigma_max / panels;
    const double b = (cell + 1) * sigma_max / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int q = 0; q < kGauss; ++q) {
      const double w = mid + half * kGaussX[q];
      acc += kGaussW[q] * std::sqrt(2.0 * std::max(0.0, spec.potential(w)));
    }
    core += acc * half;
  }
  const double A = profile.tail_amplitude();
  const double c = profile.decay_rate();
  return 2.0 * core + A * A * c;
}

double eval_1d_family(const Profile1D& profile, std::span<const double> b,
                      double c, std::span<const double> x) {
  if (b.size() != x.size())
    throw std::invalid_argument("eval_1d_family: dimension mismatch");
  double norm2 = 0.0, dot = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    norm2 += b[i] * b[i];
    dot += b[i] * x[i];
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
    throw std::domain_error("eval_1d_family: direction b must be a unit vector");
  return profile.eval(dot + c);
}

}  // namespace saddlekit
