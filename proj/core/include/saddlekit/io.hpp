#pragma once

#include <string>

#include "saddlekit/profile1d.hpp"
#include "saddlekit/saddle_solver.hpp"

namespace saddlekit {

/// profile table: columns tau,u0,du0, header row, 17 significant digits.
void write_profile_csv(const Profile1D& profile, const std::string& path);

/// field table: columns s,t,u ordered row-major by i then j, full
/// precision.
void write_field_csv(const SaddleField& field, const std::string& path);

/// metadata sidecar {m, R, h, kind, iterations, final_update,
/// final_residual}.
void write_field_meta(const SaddleField& field, const std::string& path);

void write_text(const std::string& text, const std::string& path);

std::string field_kind_name(FieldKind kind);

}  // namespace saddlekit
