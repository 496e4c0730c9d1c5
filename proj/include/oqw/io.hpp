#pragma once

// Interchange and CLI plumbing: the JSON graph/cover format, CSV emission at
// 17 significant digits with LF line endings, grid syntax "a:b:step", and the
// tiny angle-expression grammar ("pi/2", "3*pi/4", plain radians).

#include <string>
#include <vector>

#include "oqw/graph.hpp"

namespace oqw {

// JSON document with fields
//   vertex_count:   integer
//   arcs:           [[u, v], ...]
//   tessellations:  [ [ [v, ...], ... ], ... ]   (optional; [] if absent)
// Validation errors (bad shape, invalid graph/tessellation) throw
// std::invalid_argument with the violation text. Passing validate = false
// skips the structural checks so callers can collect every violation
// themselves (shape errors still throw).
WalkFamily load_family_json(const std::string& path);
WalkFamily family_from_json_text(const std::string& text, bool validate = true);
std::string family_to_json_text(const TessellationCover& cover);

// %.17g -- round-trips doubles exactly
std::string format_g17(double v);

// Rows are fully materialized before writing; always "\n" endings.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

// number | pi, combined with * and / and an optional leading sign:
// "0.5", "pi", "-pi/2", "3*pi/4". Anything else throws std::invalid_argument.
double parse_angle(const std::string& text);

// "a:b:step" (a, b, step angle expressions, step > 0, a through b inclusive
// within a half-step fuzz) or a single angle expression for a one-point grid.
std::vector<double> parse_grid(const std::string& text);

}  // namespace oqw
