#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "primform/lg_system.hpp"

namespace primform::cli {

/// An LG system plus an optional primitive-form candidate phi (vol implied by kind).
struct LoadedSpec {
  LGSystem system;
  std::optional<LaurentPoly> phi;
};

/// Parses the JSON spec format; throws Error(InvalidSpec) naming the offending field.
LoadedSpec parse_spec(const nlohmann::json& doc);
LoadedSpec load_spec_file(const std::string& path);
/// Builtin name (cp1, a1..a6) or nullopt.
std::optional<LoadedSpec> load_builtin(const std::string& name);

}  // namespace primform::cli
