#pragma once

#include <functional>
#include <string>
#include <vector>

namespace saddlekit {

using ScalarFn = std::function<double(double)>;

/// Balanced bistable nonlinearity f with double-well potential G.
///
/// G' = -f, the wells sit at u = ±well with G(±well) = 0, and f is odd.
/// f_prime may be left empty; derivatives then fall back to central
/// differences with step 1e-6 * well, and validation tolerances loosen
/// accordingly.
struct NonlinearitySpec {
  std::string name;
  double well = 1.0;
  ScalarFn f;
  ScalarFn f_prime;
  ScalarFn potential;

  bool has_analytic_derivative() const { return static_cast<bool>(f_prime); }

  /// f'(u), analytic when supplied, central differences otherwise.
  double df(double u) const;

  /// f'(well); strictly negative for any spec passing validation.
  double df_at_well() const { return df(well); }
};

struct ValidationIssue {
  std::string check;
  double location = 0.0;
  std::string detail;
};

struct ValidationReport {
  bool passed = true;
  bool g_increasing = true;
  bool f_over_rho_decreasing = true;
  std::vector<ValidationIssue> issues;

  const ValidationIssue* first_violation() const {
    return issues.empty() ? nullptr : &issues.front();
  }
};

/// Built-in nonlinearities: "allen_cahn" (f = u - u^3) and "sine"
/// (f = sin(pi u)). Throws std::invalid_argument for unknown names,
/// listing the available ones.
NonlinearitySpec builtin_nonlinearity(const std::string& name);

std::vector<std::string> builtin_nonlinearity_names();

/// Samples the well hypotheses on uniform grids and records every
/// violation. Violations are report entries, never exceptions.
/// Requires samples >= 16.
ValidationReport validate(const NonlinearitySpec& spec, int samples);

/// g(rho) = f(rho) - f'(well) * rho, the shifted nonlinearity driving the
/// monotone iteration; nonnegative and nondecreasing on [0, well].
/// Throws std::domain_error outside [0, well].
double g_shifted(const NonlinearitySpec& spec, double rho);

}  // namespace saddlekit
