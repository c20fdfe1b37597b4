#pragma once

#include <string>
#include <vector>

#include "hypk/surface.hpp"

namespace hypk {

struct SurfaceData {
    std::string label;
    PantsGraph graph;
    FNCoordinates coords;
    bool operator==(const SurfaceData& o) const;
};

inline constexpr int kSurfaceSchema = 1;

// Text format, one record per line, '#' comments:
//   hypk-surface <schema>
//   label <text>                      (optional)
//   genus <g>
//   pants <2g-2>, then rows "<pants> <edge at slot 0> <edge at slot 1> <edge at slot 2>"
//   edges <3g-3>, then rows "<edge> <pants a> <slot a> <pants b> <slot b> <length> <twist>"
// Reals are written with 17 significant digits, so emit and parse round-trip exactly.
std::string emit_surface(const SurfaceData& s);
// Throws ParseError with the line number, ValidationFailed for an invalid surface.
SurfaceData parse_surface(const std::string& text);
SurfaceData load_surface(const std::string& path);
void save_surface(const SurfaceData& s, const std::string& path);

// Named presets: theta, dumbbell (lengths 2, twists 0), fig5-example1 or fig5 (n, delta),
// fig5-example63 (n). Throws DomainError for an unknown name.
SurfaceData preset_surface(const std::string& name, int n = 10, double delta = 1.0);
std::vector<std::string> preset_names();

// Space-separated generator names as printed by word_to_string; throws ParseError.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

}  // namespace hypk
