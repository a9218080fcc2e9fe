#include "kahler/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string source_of(const std::string& id, const std::vector<double>& params) {
  std::string s = "catalog:" + id;
  if (!params.empty()) {
    s += "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      s += (i ? "," : "") + fmt(params[i]);
    }
    s += ")";
  }
  return s;
}

Domain torus_domain() {
  Domain d;
  d.u = {0.0, kTwoPi};
  d.v = {0.0, kTwoPi};
  d.periodic_u = true;
  d.periodic_v = true;
  return d;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) {
      return out;
    }
    start = pos + 1;
  }
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const auto& e : catalog_entries()) {
    if (e.id == name) {
      return &e;
    }
    for (const auto& a : e.aliases) {
      if (a == name) {
        return &e;
      }
    }
  }
  return nullptr;
}

void require(bool ok, const std::string& msg) {
  if (!ok) {
    throw ParamError(msg);
  }
}

} // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"clifford_torus",
       {"clifford"},
       "S^1(1) x S^1(1), the compact Lagrangian self-shrinker",
       {},
       "[0, 2pi] x [0, 2pi], doubly periodic",
       {{"cos_theta", "0", "published example"},
        {"|h|^2", "2", "published example"},
        {"lagrangian_angle", "u + v + pi (mod 2pi)", "published example"},
        {"shrinker", "true", "published example"},
        {"|D J_M|^2", "8", "closed form"},
        {"maslov_winding(u-loop), maslov_winding(v-loop)", "-1, -1", "closed form"}}},
      {"product_torus",
       {"product"},
       "S^1(r) x S^1(s); a shrinker only for r = s = 1",
       {{"r", 2.0, "r > 0"}, {"s", 1.0, "s > 0"}},
       "[0, 2pi] x [0, 2pi], doubly periodic",
       {{"cos_theta", "0", "construction"},
        {"gauss_K", "0", "construction"},
        {"|H + x^perp|", "sqrt((r - 1/r)^2 + (s - 1/s)^2)", "closed form"},
        {"gaussian_area", "4 pi^2 r s exp(-(r^2 + s^2)/2)", "closed form"}}},
      {"lagrangian_catenoid",
       {"catenoid"},
       "z1 = u + i u/rho^2, z2 = v + i v/rho^2 on the annulus a <= rho <= b",
       {{"a", 0.5, "0 < a < b"}, {"b", 2.0, "b > a"}},
       "annulus a <= rho <= b in the (u, v) chart; truncation R gives [1/R, R]",
       {{"eta", "1", "published example"},
        {"lagrangian_angle", "0", "published example"},
        {"minimal", "true", "published example"}}},
      {"constant_angle_plane",
       {"plane"},
       "z1 = u cos t1 + i v cos t2, z2 = -v sin t2 - i u sin t1",
       {{"theta1", std::numbers::pi / 6, "any real"}, {"theta2", std::numbers::pi / 6, "any real"}},
       "[-1, 1] x [-1, 1]; truncation R gives [-R, R]^2",
       {{"cos_theta", "cos(theta1 + theta2)", "published example"},
        {"lagrangian_angle", "pi", "published example"},
        {"h", "0", "published example"}}},
      {"holomorphic_graph",
       {"holo"},
       "(u, v, Re f, Im f) for f(u + iv) given as 're;im' expressions (default z^2)",
       {},
       "[-1, 1] x [-1, 1]",
       {{"cos_theta", "1", "closed form"}, {"eta", "0", "closed form"}, {"minimal", "true", "closed form"}}},
      {"perturbed_torus",
       {"perturbed"},
       "Clifford torus with radii 1 + c0 cos v + c1 sin(u+2v) and 1 + c2 cos u + c3 sin(2u-v)",
       {{"c0", 0.1, "|c0| < 0.2"},
        {"c1", 0.1, "|c1| < 0.2"},
        {"c2", 0.1, "|c2| < 0.2"},
        {"c3", 0.1, "|c3| < 0.2"}},
       "[0, 2pi] x [0, 2pi], doubly periodic",
       {{"identical to clifford_torus", "all coefficients 0", "construction"}}},
  };
  return entries;
}

ImmersionSpec clifford_torus() {
  return make_immersion("clifford_torus", source_of("clifford_torus", {}), {}, torus_domain(),
                        [](auto u, auto v) {
                          using T = decltype(u);
                          return Vec4<T>{{cos(u), sin(u), cos(v), sin(v)}};
                        });
}

ImmersionSpec product_torus(double r, double s) {
  require(r > 0.0 && s > 0.0 && std::isfinite(r) && std::isfinite(s),
          "product_torus radii must be positive");
  return make_immersion("product_torus", source_of("product_torus", {r, s}), {r, s},
                        torus_domain(), [r, s](auto u, auto v) {
                          using T = decltype(u);
                          return Vec4<T>{{r * cos(u), r * sin(u), s * cos(v), s * sin(v)}};
                        });
}

ImmersionSpec lagrangian_catenoid(double a, double b) {
  require(a > 0.0 && a < b && std::isfinite(b), "lagrangian_catenoid needs radii 0 < a < b");
  Domain d;
  d.chart = SampleChart::polar;
  d.u = {a, b};
  d.v = {0.0, kTwoPi};
  d.periodic_v = true;
  ImmersionSpec spec = make_immersion("lagrangian_catenoid", source_of("lagrangian_catenoid", {a, b}),
                                      {a, b}, d, [](auto u, auto v) {
                                        using T = decltype(u);
                                        const T inv_rho2 = 1.0 / (u * u + v * v);
                                        return Vec4<T>{{u, u * inv_rho2, v, v * inv_rho2}};
                                      });
  spec.truncate = [d](double R) {
    require(R > 1.0, "catenoid truncation radius must exceed 1");
    Domain t = d;
    t.u = {1.0 / R, R};
    return t;
  };
  return spec;
}

ImmersionSpec constant_angle_plane(double theta1, double theta2) {
  require(std::isfinite(theta1) && std::isfinite(theta2), "plane angles must be finite");
  Domain d;
  d.u = {-1.0, 1.0};
  d.v = {-1.0, 1.0};
  const double c1 = std::cos(theta1);
  const double s1 = std::sin(theta1);
  const double c2 = std::cos(theta2);
  const double s2 = std::sin(theta2);
  ImmersionSpec spec =
      make_immersion("constant_angle_plane", source_of("constant_angle_plane", {theta1, theta2}),
                     {theta1, theta2}, d, [c1, s1, c2, s2](auto u, auto v) {
                       using T = decltype(u);
                       return Vec4<T>{{u * c1, v * c2, v * (-s2), u * (-s1)}};
                     });
  spec.truncate = [d](double R) {
    require(R > 0.0, "plane truncation radius must be positive");
    Domain t = d;
    t.u = {-R, R};
    t.v = {-R, R};
    return t;
  };
  return spec;
}

ImmersionSpec holomorphic_graph(const ExprAst& re, const ExprAst& im) {
  ImmersionSpec s;
  s.name = "holomorphic_graph";
  s.source = "catalog:holomorphic_graph(" + re.to_string() + ";" + im.to_string() + ")";
  s.domain.u = {-1.0, 1.0};
  s.domain.v = {-1.0, 1.0};
  s.jets = [re, im](ParamPoint p) {
    return Vec4<Jet3>{{Jet3::variable_u(p.u), Jet3::variable_v(p.v), eval_jet(re, p), eval_jet(im, p)}};
  };
  s.position = [re, im](ParamPoint p) {
    return AmbientVector{{p.u, p.v, eval_value(re, p.u, p.v), eval_value(im, p.u, p.v)}};
  };
  return s;
}

ImmersionSpec perturbed_torus(const std::array<double, 4>& c) {
  for (double ci : c) {
    require(std::abs(ci) < 0.2, "perturbed_torus coefficients must satisfy |c| < 0.2");
  }
  const std::vector<double> params(c.begin(), c.end());
  return make_immersion("perturbed_torus", source_of("perturbed_torus", params), params,
                        torus_domain(), [c](auto u, auto v) {
                          using T = decltype(u);
                          const T r1 = 1.0 + c[0] * cos(v) + c[1] * sin(u + 2.0 * v);
                          const T r2 = 1.0 + c[2] * cos(u) + c[3] * sin(2.0 * u - v);
                          return Vec4<T>{{r1 * cos(u), r1 * sin(u), r2 * cos(v), r2 * sin(v)}};
                        });
}

ImmersionSpec build(const std::string& id, const std::vector<double>& params) {
  const CatalogEntry* e = find_entry(id);
  if (e == nullptr) {
    throw ParamError("unknown catalog surface '" + id + "'");
  }
  if (e->id == "holomorphic_graph") {
    require(params.empty(), "holomorphic_graph takes expressions, not numbers ('holo:re;im')");
    return holomorphic_graph(parse("u^2 - v^2"), parse("2*u*v"));
  }
  require(params.size() <= e->params.size(),
          e->id + " takes at most " + std::to_string(e->params.size()) + " parameters");
  std::vector<double> p;
  for (std::size_t i = 0; i < e->params.size(); ++i) {
    p.push_back(i < params.size() ? params[i] : e->params[i].default_value);
  }
  if (e->id == "clifford_torus") {
    return clifford_torus();
  }
  if (e->id == "product_torus") {
    return product_torus(p[0], p[1]);
  }
  if (e->id == "lagrangian_catenoid") {
    return lagrangian_catenoid(p[0], p[1]);
  }
  if (e->id == "constant_angle_plane") {
    return constant_angle_plane(p[0], p[1]);
  }
  return perturbed_torus({p[0], p[1], p[2], p[3]});
}

ImmersionSpec parse_surface_arg(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "file") {
    require(!rest.empty(), "file: needs a path");
    return immersion_from_definition(load_surface_definition(rest), "file:" + rest);
  }
  const CatalogEntry* e = find_entry(head);
  if (e == nullptr) {
    throw ParamError("unknown surface '" + head + "'; see `catalog list`");
  }
  if (e->id == "holomorphic_graph" && !rest.empty()) {
    const auto parts = split(rest, ';');
    require(parts.size() == 2, "holomorphic graph needs 're;im'");
    return holomorphic_graph(parse(parts[0]), parse(parts[1]));
  }
  std::vector<double> params;
  if (!rest.empty()) {
    for (const auto& p : split(rest, ',')) {
      params.push_back(eval_constant(p));
    }
  }
  return build(e->id, params);
}

} // namespace kahler
