#include "kahler/immersion.hpp"

#include <cmath>
#include <sstream>

#include "kahler/errors.hpp"

namespace kahler {

ParamPoint Domain::to_param(double s, double t) const {
  if (chart == SampleChart::polar) {
    return {s * std::cos(t), s * std::sin(t)};
  }
  return {s, t};
}

double Domain::jacobian(double s, double /*t*/) const {
  return chart == SampleChart::polar ? s : 1.0;
}

std::string Domain::describe() const {
  std::ostringstream os;
  os.precision(17);
  const char* su = chart == SampleChart::polar ? "rho" : "u";
  const char* sv = chart == SampleChart::polar ? "phi" : "v";
  os << su << " in [" << u.lo << ", " << u.hi << "]" << (periodic_u ? " periodic" : "") << ", "
     << sv << " in [" << v.lo << ", " << v.hi << "]" << (periodic_v ? " periodic" : "");
  return os.str();
}

Vec4<Jet3> immersion_jets(const ImmersionSpec& spec, ParamPoint p) {
  if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
    throw DomainError("parameter point is not finite");
  }
  Vec4<Jet3> x = spec.jets(p);
  double xu[4];
  double xv[4];
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(x[k].value())) {
      throw DomainError("immersion is not finite at the parameter point");
    }
    xu[k] = x[k](1, 0);
    xv[k] = x[k](0, 1);
  }
  double guu = 0;
  double guv = 0;
  double gvv = 0;
  for (int k = 0; k < 4; ++k) {
    guu += xu[k] * xu[k];
    guv += xu[k] * xv[k];
    gvv += xv[k] * xv[k];
  }
  if (guu * gvv - guv * guv < kRankCutoff) {
    std::ostringstream os;
    os << "differential has rank < 2 at (" << p.u << ", " << p.v << ")";
    throw RankError(os.str());
  }
  return x;
}

ImmersionSpec immersion_from_definition(const SurfaceDefinition& def, std::string source) {
  ImmersionSpec s;
  s.name = def.name;
  s.source = std::move(source);
  s.domain.u = def.domain_u;
  s.domain.v = def.domain_v;
  s.domain.periodic_u = def.periodic_u;
  s.domain.periodic_v = def.periodic_v;
  const std::array<ExprAst, 4> comps{def.x1, def.y1, def.x2, def.y2};
  s.jets = [comps](ParamPoint p) {
    Vec4<Jet3> x;
    for (std::size_t k = 0; k < 4; ++k) {
      x[k] = eval_jet(comps[k], p);
    }
    return x;
  };
  s.position = [comps](ParamPoint p) {
    AmbientVector x;
    for (std::size_t k = 0; k < 4; ++k) {
      x[k] = eval_value(comps[k], p.u, p.v);
    }
    return x;
  };
  return s;
}

} // namespace kahler
