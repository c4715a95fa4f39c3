// saddlekit command line: profile | solve | stability
//
// Exit codes: 0 success, 2 unconverged solve, 3 configuration/geometry
// error, 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "saddlekit/config.hpp"
#include "saddlekit/diagnostics.hpp"
#include "saddlekit/io.hpp"
#include "saddlekit/stability.hpp"

namespace {

using namespace saddlekit;

constexpr int kExitOk = 0;
constexpr int kExitUnconverged = 2;
constexpr int kExitConfig = 3;

void print_usage() {
  std::cout <<
      "usage: saddlekit <profile|solve|stability|run> [--config path] [--key value ...]\n"
      "\n"
      "keys: nonlinearity m R h tol k_max output_dir seed tau_max nodes\n"
      "      a_list eta_rho1 eta_rho2 eta_alpha band_lo_frac band_hi_frac\n"
      "      cone_trials commands\n"
      "\n"
      "outputs (under output_dir): profile.csv, profile_summary.json,\n"
      "  field_maximal.csv, field_minimal.csv (+ .meta.json sidecars),\n"
      "  diagnostics.json, stability.json\n"
      "\n"
      "SADDLEKIT_THREADS caps internal parallelism.\n";
}

RunConfig parse_args(int argc, char** argv) {
  RunConfig config;
  // first pass: --config, then overrides in order
  std::vector<std::pair<std::string, std::string>> overrides;
  for (int i = 2; i < argc; ++i) {
    std::string key = argv[i];
    if (key.rfind("--", 0) != 0)
      throw std::invalid_argument("expected --key, got '" + key + "'");
    key = key.substr(2);
    if (i + 1 >= argc)
      throw std::invalid_argument("missing value for --" + key);
    const std::string value = argv[++i];
    if (key == "config")
      config = load_config(value);
    else
      overrides.emplace_back(key, value);
  }
  for (const auto& [key, value] : overrides) apply_override(config, key, value);
  config.check();
  return config;
}

std::string out_path(const RunConfig& config, const std::string& name) {
  return (std::filesystem::path(config.output_dir) / name).string();
}

int cmd_profile(const RunConfig& config) {
  const NonlinearitySpec spec = builtin_nonlinearity(config.nonlinearity);
  const Profile1D profile = build_profile(spec, config.tau_max, config.nodes);
  write_profile_csv(profile, out_path(config, "profile.csv"));
  nlohmann::json j;
  j["nonlinearity"] = spec.name;
  j["tau_max"] = profile.tau_max();
  j["decay_rate"] = profile.decay_rate();
  j["dissipation_integral"] = dissipation_integral(profile);
  j["hamiltonian_residual_sup"] = profile.hamiltonian_residual_sup();
  write_text(j.dump(2), out_path(config, "profile_summary.json"));
  std::cout << "profile: " << spec.name << " tau_max=" << profile.tau_max()
            << " decay_rate=" << profile.decay_rate()
            << " dissipation=" << dissipation_integral(profile) << "\n";
  return kExitOk;
}

int cmd_solve(const RunConfig& config) {
  const NonlinearitySpec spec = builtin_nonlinearity(config.nonlinearity);
  const Profile1D profile = build_profile(spec, config.tau_max, config.nodes);
  const TriOperator op = discretize(config.m, config.R, config.h, spec);

  SaddleField maximal = iterate_maximal(op, spec, profile, config.tol, config.k_max);
  SaddleField minimal = iterate_minimal(op, spec, config.tol, config.k_max);
  write_field_csv(maximal, out_path(config, "field_maximal.csv"));
  write_field_meta(maximal, out_path(config, "field_maximal.meta.json"));
  write_field_csv(minimal, out_path(config, "field_minimal.csv"));
  write_field_meta(minimal, out_path(config, "field_minimal.meta.json"));

  const SquareField extended = extend_odd(maximal);

  DiagnosticsReport report;
  report.bound_violation = std::max(check_pointwise_bound(maximal, profile),
                                    check_pointwise_bound(minimal, profile));
  for (double frac : {0.5, 0.75, 1.0}) {
    const double Rv = frac * config.R;
    const double E = energy(extended, Rv, spec);
    report.energy_by_R.push_back(
        {Rv, E, E / std::pow(Rv, 2 * config.m - 1)});
  }
  const double ylo = config.band_lo_frac * config.R;
  const double yhi = config.band_hi_frac * config.R;
  std::tie(report.asym_sup_u, report.asym_sup_grad) =
      check_asymptotics(maximal, profile, ylo, yhi);
  report.monotonicity_minima = monotonicity_minima(maximal);
  report.symmetry_defect = check_symmetry(extended);
  write_text(report.to_json(), out_path(config, "diagnostics.json"));

  const bool converged = maximal.converged && minimal.converged;
  const bool bound_ok = report.bound_violation <= 1e-8;
  const bool mono_ok = report.monotonicity_minima.neg_dt_min >= -1e-8 &&
                       report.monotonicity_minima.ds_min >= -1e-8 &&
                       report.monotonicity_minima.dy_min >= -1e-8;
  const bool symmetric = report.symmetry_defect == 0.0;

  std::cout << "solve: m=" << config.m << " R=" << config.R << " h=" << config.h
            << " iterations=" << maximal.history.size()
            << " bound_violation=" << report.bound_violation
            << " uniqueness_gap=" << minimal.uniqueness_gap << "\n";
  if (!converged) {
    std::cerr << "solve: iteration did not reach tol within k_max\n";
    return kExitUnconverged;
  }
  return (bound_ok && mono_ok && symmetric) ? kExitOk : 1;
}

int cmd_stability(const RunConfig& config) {
  const NonlinearitySpec spec = builtin_nonlinearity(config.nonlinearity);
  const Profile1D profile = build_profile(spec, config.tau_max, config.nodes);
  const TriOperator op = discretize(config.m, config.R, config.h, spec);
  SaddleField maximal = iterate_maximal(op, spec, profile, config.tol, config.k_max);
  if (!maximal.converged) {
    std::cerr << "stability: maximal solve did not converge\n";
    return kExitUnconverged;
  }
  const SquareField extended = extend_odd(maximal);
  FieldView view(extended, profile);

  StabilityReport report;
  try {
    report = instability_scan(view, config.a_list, config.eta);
    if (config.m == 3) {
      for (const auto& [tf, q] : disjoint_instability_family(view, 3))
        report.disjoint_q.emplace_back(tf.a, q);
    }
  } catch (const std::runtime_error& err) {
    std::cerr << "stability: " << err.what() << "\n";
    return kExitConfig;
  }
  report.cone_vanishing_min_q =
      cone_vanishing_stability(view, config.cone_trials, config.seed);
  report.has_cone_vanishing = true;
  write_text(report.to_json(), out_path(config, "stability.json"));
  std::cout << "stability: m=" << config.m << " verdict=" << to_string(report.verdict)
            << " hardy_margin=" << report.hardy_margin
            << " limit_rhs=" << report.limit_rhs << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage();
    return kExitConfig;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h" || command == "help") {
    print_usage();
    return kExitOk;
  }
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const std::exception& err) {
    std::cerr << "saddlekit: " << err.what() << "\n";
    return kExitConfig;
  }
  try {
    if (command == "profile") return cmd_profile(config);
    if (command == "solve") return cmd_solve(config);
    if (command == "stability") return cmd_stability(config);
    if (command == "run") {
      if (config.commands.empty()) {
        std::cerr << "saddlekit: run requires a 'commands' list in the config\n";
        return kExitConfig;
      }
      for (const std::string& sub : config.commands) {
        int code;
        if (sub == "profile") code = cmd_profile(config);
        else if (sub == "solve") code = cmd_solve(config);
        else if (sub == "stability") code = cmd_stability(config);
        else {
          std::cerr << "saddlekit: unknown command '" << sub << "' in commands\n";
          return kExitConfig;
        }
        if (code != kExitOk) return code;
      }
      return kExitOk;
    }
    std::cerr << "saddlekit: unknown command '" << command << "'\n";
    print_usage();
    return kExitConfig;
  } catch (const std::invalid_argument& err) {
    std::cerr << "saddlekit: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "saddlekit: " << err.what() << "\n";
    return 1;
  }
}
