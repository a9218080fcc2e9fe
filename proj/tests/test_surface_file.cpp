#include <doctest.h>

#include <fstream>
#include <numbers>
#include <sstream>

#include "kahler/errors.hpp"
#include "kahler/immersion.hpp"
#include "kahler/surface_file.hpp"

using namespace kahler;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(KAHLER_TEST_DATA) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error(std::string_view text) {
  try {
    (void)parse_surface_definition(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError(0, "", "");
}

const char* kValid = "x1 = cos(u)\ny1 = sin(u)\nx2 = cos(v)\ny2 = sin(v)\n"
                     "domain_u = 0, 2*pi\ndomain_v = 0, 2*pi\n";

} // namespace

TEST_CASE("Clifford torus file") {
  const SurfaceDefinition d = load_surface_definition(std::string(KAHLER_TEST_DATA) + "/clifford.surf");
  CHECK(d.name == "clifford (text)");
  CHECK(d.x1_text == "cos(u)");
  CHECK(d.y2_text == "sin(v)");
  CHECK(d.domain_u.lo == 0.0);
  CHECK(d.domain_u.hi == 2 * std::numbers::pi);
  CHECK(d.periodic_u);
  CHECK(d.periodic_v);
  const ImmersionSpec s = immersion_from_definition(d, "file:clifford.surf");
  CHECK(s.domain.closed());
  CHECK(s.position({0.0, 0.0})[0] == 1.0);
}

TEST_CASE("defaults and comments") {
  const SurfaceDefinition d = parse_surface_definition(std::string("# header\n\n") + kValid);
  CHECK(d.name == "custom");
  CHECK_FALSE(d.periodic_u);
  CHECK_FALSE(d.periodic_v);
}

TEST_CASE("malformed files point at the offending byte") {
  {
    const std::string text = slurp("bad_paren.surf");
    const ParseError e = parse_error(text);
    // One past "sin(u" on line 2.
    CHECK(e.offset() == text.find("sin(u\n") + 5 + 1);
    CHECK(e.offset() == 23);
    CHECK(e.line() == 2);
    CHECK(e.column() == 11);
    CHECK(e.expected() == "')'");
  }
  {
    const std::string text = slurp("bad_implicit_mul.surf");
    const ParseError e = parse_error(text);
    CHECK(e.offset() == text.find("2v") + 2);
    CHECK(e.offset() == 31);
    CHECK(e.line() == 3);
    CHECK(e.column() == 7);
  }
  {
    const std::string text = slurp("bad_missing_key.surf");
    const ParseError e = parse_error(text);
    CHECK(e.offset() == text.size() + 1);
    CHECK(e.expected().find("y2") != std::string::npos);
  }
}

TEST_CASE("structural errors") {
  const std::string v(kValid);
  CHECK(parse_error(v + "x1 = u\n").line() == 7);
  CHECK(parse_error("colour = red\n" + v).offset() == 1);
  CHECK(parse_error("x1 cos(u)\n").offset() == 4);
  CHECK(parse_error(v + "periodic_u = yes\n").column() == 14);
  CHECK(parse_error("x1 = u\ny1 = v\nx2 = 0\ny2 = 0\ndomain_u = 1, 0\ndomain_v = 0, 1\n").line() == 5);
  CHECK(parse_error("x1 = u\ny1 = v\nx2 = 0\ny2 = 0\ndomain_u = 1\ndomain_v = 0, 1\n").line() == 5);
  CHECK(parse_error("x1 =\n").offset() == 5);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_surface_definition("/nonexistent/none.surf"), IoError);
}
