#include "kahler/surface_file.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

struct Cursor {
  std::string_view text;

  // 0-based byte index -> (line, column), both 1-based.
  std::pair<std::size_t, std::size_t> locate(std::size_t index) const {
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < index && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    return {line, index - line_start + 1};
  }

  [[noreturn]] void fail(std::size_t index, const std::string& expected,
                         const std::string& message) const {
    const auto [line, column] = locate(index);
    throw ParseError(index + 1, expected,
                     "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message + " (expected " + expected + ")",
                     line, column);
  }
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::size_t skip_spaces(std::string_view s, std::size_t i, std::size_t end) {
  while (i < end && is_space(s[i])) {
    ++i;
  }
  return i;
}

std::size_t trim_end(std::string_view s, std::size_t begin, std::size_t end) {
  while (end > begin && is_space(s[end - 1])) {
    --end;
  }
  return end;
}

// Parses an expression located at [begin, end) of the file; rethrows with
// file-relative offsets.
ExprAst parse_at(const Cursor& cur, std::size_t begin, std::size_t end, ParseOptions opts) {
  if (begin == end) {
    cur.fail(begin, "expression", "empty value");
  }
  try {
    return parse(cur.text.substr(begin, end - begin), opts);
  } catch (const ParseError& e) {
    cur.fail(begin + e.offset() - 1, e.expected(), "invalid expression");
  }
}

Interval parse_interval(const Cursor& cur, std::size_t begin, std::size_t end) {
  int depth = 0;
  std::optional<std::size_t> comma;
  for (std::size_t i = begin; i < end; ++i) {
    const char c = cur.text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    } else if (c == ',' && depth == 0) {
      if (comma) {
        cur.fail(i, "two comma-separated bounds", "too many bounds");
      }
      comma = i;
    }
  }
  if (!comma) {
    cur.fail(end, "','", "interval needs two comma-separated bounds");
  }
  const ParseOptions constant{.allow_t = false, .allow_uv = false};
  const std::size_t lo_b = skip_spaces(cur.text, begin, *comma);
  const std::size_t lo_e = trim_end(cur.text, lo_b, *comma);
  const std::size_t hi_b = skip_spaces(cur.text, *comma + 1, end);
  const std::size_t hi_e = trim_end(cur.text, hi_b, end);
  const double lo = eval_value(parse_at(cur, lo_b, lo_e, constant), 0, 0);
  const double hi = eval_value(parse_at(cur, hi_b, hi_e, constant), 0, 0);
  if (!(lo < hi)) {
    cur.fail(begin, "lower bound < upper bound", "empty interval");
  }
  return {lo, hi};
}

} // namespace

SurfaceDefinition parse_surface_definition(std::string_view text) {
  const Cursor cur{text};
  SurfaceDefinition def;
  constexpr std::array<std::string_view, 9> kKeys = {
      "name", "x1", "y1", "x2", "y2", "domain_u", "domain_v", "periodic_u", "periodic_v"};
  std::array<bool, kKeys.size()> seen{};
  const ParseOptions uv{};

  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string_view::npos) {
      line_end = text.size();
    }
    const std::size_t first = skip_spaces(text, line_begin, line_end);
    const std::size_t last = trim_end(text, first, line_end);
    if (first < last && text[first] != '#') {
      std::size_t key_end = first;
      while (key_end < last && (std::isalnum(static_cast<unsigned char>(text[key_end])) ||
                                text[key_end] == '_')) {
        ++key_end;
      }
      if (key_end == first) {
        cur.fail(first, "key", "line does not start with a key");
      }
      const std::string_view key = text.substr(first, key_end - first);
      std::size_t k = 0;
      while (k < kKeys.size() && kKeys[k] != key) {
        ++k;
      }
      if (k == kKeys.size()) {
        cur.fail(first, "one of name, x1, y1, x2, y2, domain_u, domain_v, periodic_u, periodic_v",
                 "unknown key '" + std::string(key) + "'");
      }
      if (seen[k]) {
        cur.fail(first, "each key at most once", "duplicate key '" + std::string(key) + "'");
      }
      seen[k] = true;
      const std::size_t eq = skip_spaces(text, key_end, last);
      if (eq >= last || text[eq] != '=') {
        cur.fail(eq, "'='", "missing '=' after key");
      }
      const std::size_t vb = skip_spaces(text, eq + 1, last);
      const std::size_t ve = last;
      const std::string value(text.substr(vb, ve - vb));
      if (key == "name") {
        def.name = value;
      } else if (key == "x1") {
        def.x1 = parse_at(cur, vb, ve, uv);
        def.x1_text = value;
      } else if (key == "y1") {
        def.y1 = parse_at(cur, vb, ve, uv);
        def.y1_text = value;
      } else if (key == "x2") {
        def.x2 = parse_at(cur, vb, ve, uv);
        def.x2_text = value;
      } else if (key == "y2") {
        def.y2 = parse_at(cur, vb, ve, uv);
        def.y2_text = value;
      } else if (key == "domain_u") {
        def.domain_u = parse_interval(cur, vb, ve);
      } else if (key == "domain_v") {
        def.domain_v = parse_interval(cur, vb, ve);
      } else {
        if (value != "true" && value != "false") {
          cur.fail(vb, "true or false", "invalid boolean '" + value + "'");
        }
        (key == "periodic_u" ? def.periodic_u : def.periodic_v) = value == "true";
      }
    }
    line_begin = line_end + 1;
  }

  for (std::size_t k = 1; k <= 6; ++k) {
    if (!seen[k]) {
      cur.fail(text.size(), "key '" + std::string(kKeys[k]) + "'",
               "missing required key '" + std::string(kKeys[k]) + "'");
    }
  }
  return def;
}

SurfaceDefinition load_surface_definition(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open surface file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_surface_definition(ss.str());
}

} // namespace kahler
