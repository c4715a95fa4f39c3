#include "saddlekit/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace saddlekit {

void RunConfig::check() const {
  if (m < 1) throw std::invalid_argument("config: m must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (!(h > 0.0) || !(R > 0.0))
    throw std::invalid_argument("config: R and h must be positive");
  const double ratio = R / h;
  if (std::abs(ratio - std::lround(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("config: h must divide R");
  if (k_max < 1) throw std::invalid_argument("config: k_max must be >= 1");
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) values.push_back(std::stod(item));
  if (values.empty()) throw std::invalid_argument("config: empty list value");
  return values;
}

}  // namespace

void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value) {
  if (key == "nonlinearity") config.nonlinearity = value;
  else if (key == "m") config.m = std::stoi(value);
  else if (key == "R") config.R = std::stod(value);
  else if (key == "h") config.h = std::stod(value);
  else if (key == "tol") config.tol = std::stod(value);
  else if (key == "k_max") config.k_max = std::stoi(value);
  else if (key == "output_dir") config.output_dir = value;
  else if (key == "seed") config.seed = std::stoull(value);
  else if (key == "tau_max") config.tau_max = std::stod(value);
  else if (key == "nodes") config.nodes = std::stoi(value);
  else if (key == "a_list") config.a_list = parse_list(value);
  else if (key == "eta_rho1") config.eta.rho1 = std::stod(value);
  else if (key == "eta_rho2") config.eta.rho2 = std::stod(value);
  else if (key == "eta_alpha") config.eta.alpha = std::stod(value);
  else if (key == "band_lo_frac") config.band_lo_frac = std::stod(value);
  else if (key == "band_hi_frac") config.band_hi_frac = std::stod(value);
  else if (key == "cone_trials") config.cone_trials = std::stoi(value);
  else if (key == "commands") {
    config.commands.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) config.commands.push_back(item);
  }
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "config: line " << lineno << " is not key=value";
      throw std::invalid_argument(msg.str());
    }
    apply_override(config, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
  return config;
}

}  // namespace saddlekit
