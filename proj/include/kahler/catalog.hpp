#pragma once

// Built-in immersions with closed-form reference values.

#include <array>
#include <string>
#include <vector>

#include "kahler/immersion.hpp"

namespace kahler {

struct CatalogParam {
  std::string name;
  double default_value = 0.0;
  std::string range;
};

struct GroundTruth {
  std::string quantity;
  std::string value;
  /// Where the value comes from: "published example", "closed form", "construction".
  std::string source;
};

struct CatalogEntry {
  std::string id;
  std::vector<std::string> aliases;
  std::string description;
  std::vector<CatalogParam> params;
  std::string domain;
  std::vector<GroundTruth> truths;
};

const std::vector<CatalogEntry>& catalog_entries();

/// (cos u, sin u, cos v, sin v) on [0, 2pi]^2, both directions periodic.
ImmersionSpec clifford_torus();
/// (r cos u, r sin u, s cos v, s sin v); r, s > 0.
ImmersionSpec product_torus(double r, double s);
/// z1 = u + i u / rho^2, z2 = v + i v / rho^2 in the (u, v) chart, sampled on
/// the annulus a <= rho <= b. Truncation at R samples [1/R, R].
ImmersionSpec lagrangian_catenoid(double a = 0.5, double b = 2.0);
/// z1 = u cos t1 + i v cos t2, z2 = -v sin t2 - i u sin t1 on [-1, 1]^2.
/// Truncation at R samples [-R, R]^2.
ImmersionSpec constant_angle_plane(double theta1, double theta2);
/// (u, v, Re f, Im f) on [-1, 1]^2 with f given by its real and imaginary parts.
ImmersionSpec holomorphic_graph(const ExprAst& re, const ExprAst& im);
/// Clifford torus with radii 1 + c0 cos v + c1 sin(u + 2v) and
/// 1 + c2 cos u + c3 sin(2u - v); each |c| < 0.2.
ImmersionSpec perturbed_torus(const std::array<double, 4>& c);

/// Builds a catalog entry by id or alias; missing trailing parameters take
/// their defaults. Throws ParamError.
ImmersionSpec build(const std::string& id, const std::vector<double>& params);

/// "name[:p1,p2,...]" with constant-expression parameters, "holo[:re;im]",
/// or "file:path". Throws ParamError or ParseError.
ImmersionSpec parse_surface_arg(const std::string& text);

} // namespace kahler
