#pragma once

#include <string>

#include "json.hpp"
#include "primform/brieskorn.hpp"
#include "primform/descendants.hpp"
#include "primform/frobenius.hpp"
#include "primform/milnor_ring.hpp"

namespace primform::cli {

using nlohmann::json;

json ring_section(const LGSystem& lg);
/// Includes the WDVV and Euler/discriminant checks; `ok` reports whether they hold.
json frobenius_section(const FrobeniusData& fd, bool& ok);
json verification_section(const PrimitiveFormReport& report);
json correlators_section(GravitationalDescendants& b, CP1GromovWitten* a, const Caps& caps, bool& ok);
json comparison_section(const Comparison& result, const Comparison& control, const Caps& caps);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string serialize(const json& report);
/// Flat "path: value" lines; the stdout view of a report.
std::string render_text(const json& report);

}  // namespace primform::cli
