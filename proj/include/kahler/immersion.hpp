#pragma once

// A parametric immersion x : D -> C^2 together with its parameter domain.

#include <functional>
#include <string>
#include <vector>

#include "kahler/ambient.hpp"
#include "kahler/jet.hpp"
#include "kahler/surface_file.hpp"

namespace kahler {

/// How quadrature coordinates (s, t) map to the immersion's (u, v) chart.
/// `polar` samples an annulus: s is the radius, t the angle.
enum class SampleChart { cartesian, polar };

struct Domain {
  Interval u;
  Interval v;
  bool periodic_u = false;
  bool periodic_v = false;
  SampleChart chart = SampleChart::cartesian;

  [[nodiscard]] ParamPoint to_param(double s, double t) const;
  /// |d(u,v)/d(s,t)|.
  [[nodiscard]] double jacobian(double s, double t) const;
  /// Compact without boundary: both sample directions periodic.
  [[nodiscard]] bool closed() const { return periodic_u && periodic_v; }
  [[nodiscard]] std::string describe() const;
};

struct ImmersionSpec {
  std::string name;
  /// How the surface was built, e.g. "catalog:product_torus(2,1)" or "file:torus.surf".
  std::string source;
  std::vector<double> params;
  Domain domain;
  /// Order-3 jets of (x1, y1, x2, y2).
  std::function<Vec4<Jet3>(ParamPoint)> jets;
  /// Plain values of (x1, y1, x2, y2), evaluated without jets.
  std::function<AmbientVector(ParamPoint)> position;
  /// Set for surfaces whose true parameter domain is unbounded: the domain
  /// truncated at radius R.
  std::function<Domain(double)> truncate;
};

/// Gram determinant below which the differential is considered rank < 2.
inline constexpr double kRankCutoff = 1e-14;

/// Order-3 jets of the four components at p, after the rank check.
/// Throws DomainError or RankError.
Vec4<Jet3> immersion_jets(const ImmersionSpec& spec, ParamPoint p);

ImmersionSpec immersion_from_definition(const SurfaceDefinition& def, std::string source);

/// Builds an ImmersionSpec from one templated formula `f(u, v)` returning
/// Vec4<T>, instantiated for both jets and plain doubles.
template <class F>
ImmersionSpec make_immersion(std::string name, std::string source, std::vector<double> params,
                             Domain domain, F f) {
  ImmersionSpec s;
  s.name = std::move(name);
  s.source = std::move(source);
  s.params = std::move(params);
  s.domain = domain;
  s.jets = [f](ParamPoint p) {
    return f(Jet3::variable_u(p.u), Jet3::variable_v(p.v));
  };
  s.position = [f](ParamPoint p) { return f(p.u, p.v); };
  return s;
}

} // namespace kahler
