#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "saddlekit/profile1d.hpp"
#include "saddlekit/saddle_solver.hpp"

namespace saddlekit {

/// The piecewise test profile with compact support [rho1, rho2]: linear
/// ramp up to 1 - rho2^{-alpha} on [rho1, 2 rho1], constant on [2 rho1, 1],
/// rho^{-alpha} - rho2^{-alpha} on [1, rho2], zero elsewhere.
/// Requires 0 < 2 rho1 < 1 < rho2 and alpha > 0.
struct PiecewiseEtaParams {
  double rho1 = 0.1;
  double rho2 = 10.0;
  double alpha = 1.75;
};

double piecewise_eta(double rho, const PiecewiseEtaParams& p);
double piecewise_eta_deriv(double rho, const PiecewiseEtaParams& p);

/// Compactly supported Lipschitz 1D profile with its kink list, the
/// quadrature unit for the radial functional and the scaled test
/// functions.
struct Eta1D {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::vector<double> kinks;  // ascending, includes lo and hi
  double lo = 0.0;
  double hi = 0.0;
};

Eta1D make_piecewise_eta(const PiecewiseEtaParams& p);

/// Radial functional int_0^inf rho^{2(m-1)} (eta'^2 - 2(m-1) eta^2/rho^2)
/// drho by kink-aware adaptive Gauss quadrature. Its sign is governed by
/// the Hardy margin. Throws when the refinement fails to converge.
double rho_integral(int m, const Eta1D& eta, double tol = 1e-10);

/// (2m-3)^2/4 - 2(m-1) = (n^2 - 10n + 17)/4 with n = 2m; exact in double
/// arithmetic. Positive margin means the radial functional is nonnegative
/// for every admissible profile.
double hardy_margin(int m);

/// Samples the odd-extended square field bilinearly wherever (|s|,|t|)
/// lands inside the square, and falls back to the first-order far-field
/// expansion u0(z) + w(z)/y^2 beyond it, where w solves
/// w'' + f'(u0) w = 2(m-1) z u0' (odd, decaying). The expansion solves the
/// reduced PDE to O(y^-4) and carries the linearized structure the
/// quadratic form needs at large radius.
///
/// Holds references: the field and profile must outlive the view.
class FieldView {
 public:
  FieldView(const SquareField& field, const Profile1D& profile);

  int m() const { return field_->m; }
  double R() const { return field_->R; }
  double h() const { return field_->h; }
  const NonlinearitySpec& spec() const { return model_profile_.spec(); }
  const Profile1D& profile() const { return *profile_; }

  double sample_yz(double y, double z) const;

  // far-field model pieces (analytic derivatives for the outer zone)
  double model_u(double y, double z) const;
  double model_uz(double y, double z) const;
  double model_uzz(double y, double z) const;
  double model_uzy(double y, double z) const;

  /// largest y for which the whole z-band [-zcut, zcut] is backed by real
  /// field data
  double real_band_limit(double zcut) const;

 private:
  const SquareField* field_;
  const Profile1D* profile_;
  Profile1D model_profile_;           // high-resolution core for the model
  std::vector<double> wz_, w_, wp_;   // far-field correction table on [0, zmax]
  double w_dz_ = 0.0;

  double w_at(double z) const;
  double wp_at(double z) const;
  double wpp_at(double z) const;
  double bilinear(double s, double t) const;
};

struct ConeBumpParams {
  double y0 = 0.0, z0 = 0.0;
  double sigma_y = 1.0, sigma_z = 1.0;
};

/// Test functions for the quadratic form: the scaled profile family
/// xi_a = eta(y/a) u_z, cone-vanishing bumps xi = z B(y, z), or an
/// explicit function on a bounding box.
struct TestFunction {
  enum class Kind { EtaUz, ConeVanishing, Explicit };
  Kind kind = Kind::EtaUz;
  double a = 1.0;        // EtaUz scale, >= 1
  Eta1D eta;             // EtaUz profile (support in rho units)
  ConeBumpParams bump;   // ConeVanishing
  std::function<double(double, double)> fn;  // Explicit xi(y, z)
  double y_lo = 0.0, y_hi = 0.0, z_lo = 0.0, z_hi = 0.0;  // Explicit support

  static TestFunction eta_uz(double a, Eta1D eta);
  static TestFunction cone_bump(const ConeBumpParams& p);

  double support_y_lo() const;
  double support_y_hi() const;
};

struct QuadratureOptions {
  /// z half-width of the integration band; clamped to the profile scale
  double zcut = 0.0;  // 0 = automatic
  /// when false, supports reaching beyond the real data raster throw,
  /// naming the grid radius they would need
  bool allow_far_field = true;
};

/// c_m Q_v(xi) with c_m = 1: cell-centered quadrature of
/// (y^2 - z^2)^{m-1} {xi_y^2 + xi_z^2 - f'(v) xi^2} over the wedge
/// {-y < z < y}. The raster zone uses h/sqrt(2) cells with difference
/// quotients of sampled values; the far zone (EtaUz only) integrates the
/// analytic far-field model with Gauss panels in z.
double quadratic_form(const FieldView& view, const TestFunction& xi,
                      const QuadratureOptions& opts = {});

/// Same integrand evaluated in the rescaled variables (rho, z), y = a rho;
/// agreement with quadratic_form checks the change of variables.
double quadratic_form_rescaled(const FieldView& view, const TestFunction& xi,
                               const QuadratureOptions& opts = {});

enum class StabilityVerdict {
  UnstableDemonstrated,
  AsymptoticallyStableMargin,
  Inconclusive,
};

std::string to_string(StabilityVerdict verdict);

struct StabilityReport {
  int m = 0;
  std::vector<std::pair<double, double>> q_values;  // (a, Q(xi_a)/a^{2m-3})
  double rho_integral = 0.0;
  double prefactor = 0.0;   // int du0^2
  double limit_rhs = 0.0;   // prefactor * rho_integral
  double hardy_margin = 0.0;
  StabilityVerdict verdict = StabilityVerdict::Inconclusive;
  double cone_vanishing_min_q = 0.0;
  bool has_cone_vanishing = false;
  std::vector<std::pair<double, double>> disjoint_q;  // (a, Q)

  std::string to_json() const;
};

/// Builds xi_a = eta(y/a) u_z for each a, evaluates Q(xi_a)/a^{2m-3},
/// the limit right-hand side prefactor * rho_integral, and the verdict.
StabilityReport instability_scan(const FieldView& view,
                                 std::span<const double> a_list,
                                 const PiecewiseEtaParams& eta_params);

/// count test functions with pairwise disjoint y-support annuli, each with
/// Q < 0, witnessing a Morse index >= count. m must be 3 and count <= 3;
/// the innermost window is anchored to real field data, the outer ones to
/// the far-field expansion. Throws naming the required radius when the
/// grid cannot anchor the innermost window.
std::vector<std::pair<TestFunction, double>> disjoint_instability_family(
    const FieldView& view, int count);

/// Minimum of Q over seeded random cone-vanishing bumps xi = z B(y, z)
/// supported in the real-data region; nonnegative up to quadrature noise
/// for semi-stable fields.
double cone_vanishing_stability(const FieldView& view, int trials,
                                std::uint64_t seed);

}  // namespace saddlekit
