#pragma once

#include <span>
#include <vector>

#include "saddlekit/nonlinearity.hpp"

namespace saddlekit {

/// Increasing heteroclinic solving -u'' = f(u), u(0) = 0, |u| < well,
/// tabulated on a symmetric grid and completed by an exponential tail
/// model u(tau) ~ well - tail_amplitude * exp(-decay_rate*(tau - tau_max))
/// beyond the core (mirrored on the left).
class Profile1D {
 public:
  double tau_max() const { return tau_max_; }
  double decay_rate() const { return decay_rate_; }
  double tail_amplitude() const { return tail_amplitude_; }
  const NonlinearitySpec& spec() const { return spec_; }
  int node_count() const { return static_cast<int>(tau_.size()); }
  double tau_at(int k) const { return tau_[k]; }
  double u_at(int k) const { return u_[k]; }
  double du_at(int k) const { return du_[k]; }

  /// u0(tau): monotone cubic Hermite inside the core, tail model outside.
  double eval(double tau) const;

  /// du0(tau) = sqrt(2 G(u0)) inside the core (Hamiltonian identity),
  /// tail model derivative outside; positive everywhere.
  double eval_deriv(double tau) const;

  /// sup over table nodes of |du^2/2 - G(u)|.
  double hamiltonian_residual_sup() const;

 private:
  friend Profile1D build_profile(const NonlinearitySpec&, double, int);
  NonlinearitySpec spec_;
  double tau_max_ = 0.0;
  double decay_rate_ = 0.0;
  double tail_amplitude_ = 0.0;
  double dtau_ = 0.0;
  std::vector<double> tau_, u_, du_;
};

/// Builds the profile by quadrature of phi(sigma) = int_0^sigma dw/sqrt(2G)
/// and monotone inversion. Requires tau_max >= 4, nodes >= 64 (intervals on
/// [0, tau_max]) and a spec passing validation. Throws std::runtime_error
/// naming the offending w when G is nonpositive inside the well interval.
Profile1D build_profile(const NonlinearitySpec& spec, double tau_max, int nodes);

/// int du0^2 dtau over the line: exact change of variables over the core
/// (int sqrt(2G(w)) dw) plus the closed-form tail contribution.
double dissipation_integral(const Profile1D& profile);

/// Planar 1D family u0(b.x + c); |b| must equal 1 within 1e-12.
double eval_1d_family(const Profile1D& profile, std::span<const double> b,
                      double c, std::span<const double> x);

}  // namespace saddlekit
