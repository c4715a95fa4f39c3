#include "saddlekit/nonlinearity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace saddlekit {

double NonlinearitySpec::df(double u) const {
  if (f_prime) return f_prime(u);
  const double step = 1e-6 * well;
  return (f(u + step) - f(u - step)) / (2.0 * step);
}

NonlinearitySpec builtin_nonlinearity(const std::string& name) {
  NonlinearitySpec spec;
  spec.name = name;
  spec.well = 1.0;
  if (name == "allen_cahn") {
    spec.f = [](double u) { return u - u * u * u; };
    spec.f_prime = [](double u) { return 1.0 - 3.0 * u * u; };
    spec.potential = [](double u) {
      const double q = 1.0 - u * u;
      return 0.25 * q * q;
    };
    return spec;
  }
  if (name == "sine") {
    spec.f = [](double u) { return std::sin(M_PI * u); };
    spec.f_prime = [](double u) { return M_PI * std::cos(M_PI * u); };
    // (1 + cos(pi u)) / pi in the cancellation-free half-angle form, so the
    // quadrature stays accurate into the well tails
    spec.potential = [](double u) {
      const double c = std::cos(0.5 * M_PI * u);
      return 2.0 * c * c / M_PI;
    };
    return spec;
  }
  std::ostringstream msg;
  msg << "unknown nonlinearity '" << name << "'; available:";
  for (const auto& n : builtin_nonlinearity_names()) msg << " " << n;
  throw std::invalid_argument(msg.str());
}

std::vector<std::string> builtin_nonlinearity_names() {
  return {"allen_cahn", "sine"};
}

namespace {

void add_issue(ValidationReport& report, const std::string& check, double where,
               const std::string& detail) {
  report.passed = false;
  report.issues.push_back({check, where, detail});
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate(const NonlinearitySpec& spec, int samples) {
  if (samples < 16) throw std::invalid_argument("validate: samples must be >= 16");
  if (!(spec.well > 0.0)) throw std::invalid_argument("validate: well must be positive");

  ValidationReport report;
  const double M = spec.well;
  const double tol = spec.has_analytic_derivative() ? 1e-10 : 1e-6;

  if (std::abs(spec.f(0.0)) > tol)
    add_issue(report, "f(0)=0", 0.0, "f(0) = " + num(spec.f(0.0)));
  if (std::abs(spec.f(M)) > tol)
    add_issue(report, "f(M)=0", M, "f(M) = " + num(spec.f(M)));
  if (std::abs(spec.potential(M)) > tol)
    add_issue(report, "G(M)=0", M, "G(M) = " + num(spec.potential(M)));
  if (std::abs(spec.potential(-M)) > tol)
    add_issue(report, "G(-M)=0", -M, "G(-M) = " + num(spec.potential(-M)));

  // G > 0 strictly inside (-M, M); half-offset grid avoids the wells.
  for (int i = 0; i < samples; ++i) {
    const double w = -M + (i + 0.5) * 2.0 * M / samples;
    if (!(spec.potential(w) > 0.0)) {
      add_issue(report, "G>0 in (-M,M)", w, "G = " + num(spec.potential(w)));
      break;
    }
  }
  // G >= 0 on the wider range [-2M, 2M].
  for (int i = 0; i <= samples; ++i) {
    const double w = -2.0 * M + i * 4.0 * M / samples;
    if (spec.potential(w) < -tol) {
      add_issue(report, "G>=0", w, "G = " + num(spec.potential(w)));
      break;
    }
  }
  // odd symmetry of f
  for (int i = 0; i <= samples; ++i) {
    const double w = i * 2.0 * M / samples;
    if (std::abs(spec.f(-w) + spec.f(w)) > tol) {
      add_issue(report, "f odd", w, "f(-w)+f(w) = " + num(spec.f(-w) + spec.f(w)));
      break;
    }
  }
  // f' strictly decreasing on (0, M)
  {
    double prev = spec.df(0.5 * M / samples);
    for (int i = 1; i < samples; ++i) {
      const double w = (i + 0.5) * M / samples;
      const double cur = spec.df(w);
      if (!(cur < prev)) {
        add_issue(report, "f' decreasing on (0,M)", w,
                  "f'(" + num(w) + ") = " + num(cur) + " >= previous " + num(prev));
        break;
      }
      prev = cur;
    }
  }
  if (!(spec.df(M) < 0.0))
    add_issue(report, "f'(M)<0", M, "f'(M) = " + num(spec.df(M)));

  // Consequences used by the monotone iteration and the uniqueness identity:
  // g nondecreasing, f(rho)/rho nonincreasing on (0, M).
  {
    const double fpM = spec.df(M);
    double prev_g = spec.f(0.0) - fpM * 0.0;
    double prev_q = 0.0;
    bool have_q = false;
    for (int i = 1; i <= samples; ++i) {
      const double rho = i * M / samples;
      const double g = spec.f(rho) - fpM * rho;
      if (g < prev_g - tol) {
        report.g_increasing = false;
        add_issue(report, "g increasing", rho, "g dropped to " + num(g));
        break;
      }
      prev_g = g;
      const double q = spec.f(rho) / rho;
      if (have_q && q > prev_q + tol) {
        report.f_over_rho_decreasing = false;
        add_issue(report, "f(rho)/rho decreasing", rho, "ratio rose to " + num(q));
        break;
      }
      prev_q = q;
      have_q = true;
    }
  }
  return report;
}

double g_shifted(const NonlinearitySpec& spec, double rho) {
  if (rho < 0.0 || rho > spec.well)
    throw std::domain_error("g_shifted: rho outside [0, well]");
  return spec.f(rho) - spec.df_at_well() * rho;
}

}  // namespace saddlekit
