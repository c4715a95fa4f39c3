#include "saddlekit/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace saddlekit {

namespace {

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot write '" + path + "'");
  return out;
}

void put(std::ofstream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

std::string field_kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Iterate: return "iterate";
    case FieldKind::Maximal: return "maximal";
    case FieldKind::Minimal: return "minimal";
  }
  return "iterate";
}

void write_profile_csv(const Profile1D& profile, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "tau,u0,du0\n";
  for (int k = 0; k < profile.node_count(); ++k) {
    put(out, profile.tau_at(k));
    out << ',';
    put(out, profile.u_at(k));
    out << ',';
    put(out, profile.du_at(k));
    out << '\n';
  }
}

void write_field_csv(const SaddleField& field, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "s,t,u\n";
  const TriGrid& grid = field.grid;
  for (int i = 0; i <= grid.n(); ++i) {
    for (int j = 0; j <= i; ++j) {
      const int k = grid.index(i, j);
      put(out, grid.s_of(k));
      out << ',';
      put(out, grid.t_of(k));
      out << ',';
      put(out, field.values[k]);
      out << '\n';
    }
  }
}

void write_field_meta(const SaddleField& field, const std::string& path) {
  nlohmann::json j;
  j["m"] = field.grid.m();
  j["R"] = field.grid.R();
  j["h"] = field.grid.h();
  j["kind"] = field_kind_name(field.kind);
  j["iterations"] = field.history.size();
  j["final_update"] = field.history.empty() ? 0.0 : field.history.back().sup_update;
  j["final_residual"] =
      field.history.empty() ? 0.0 : field.history.back().solve_residual;
  if (field.kind == FieldKind::Minimal) {
    j["uniqueness_gap"] = field.uniqueness_gap;
    j["uniqueness_ok"] = field.uniqueness_ok;
  }
  write_text(j.dump(2), path);
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out = open_out(path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace saddlekit
