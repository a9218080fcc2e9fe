#pragma once

// Surface definition files: one `key = value` pair per line.
//
//   # comments and blank lines are ignored
//   name       = free text (optional, default "custom")
//   x1         = <expr in u, v>       (required)
//   y1         = <expr in u, v>       (required)
//   x2         = <expr in u, v>       (required)
//   y2         = <expr in u, v>       (required)
//   domain_u   = <const expr>, <const expr>   (required, lo < hi)
//   domain_v   = <const expr>, <const expr>   (required, lo < hi)
//   periodic_u = true | false         (optional, default false)
//   periodic_v = true | false         (optional, default false)
//
// Keys may appear in any order but at most once. Errors are ParseError with
// 1-based byte offsets into the whole file plus line and column.

#include <filesystem>
#include <string>
#include <string_view>

#include "kahler/expr.hpp"

namespace kahler {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double length() const { return hi - lo; }
};

struct SurfaceDefinition {
  std::string name = "custom";
  ExprAst x1, y1, x2, y2;
  std::string x1_text, y1_text, x2_text, y2_text;
  Interval domain_u, domain_v;
  bool periodic_u = false;
  bool periodic_v = false;
};

SurfaceDefinition parse_surface_definition(std::string_view text);
SurfaceDefinition load_surface_definition(const std::filesystem::path& path);

} // namespace kahler
