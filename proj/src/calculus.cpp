#include "kahler/calculus.hpp"

#include <vector>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

void require_adapted(const SurfacePoint& sp, const char* what) {
  if (!sp.frame.adapted) {
    throw NearComplexError(std::string(what) + " needs the adapted frame (sin(theta) above cutoff)");
  }
}

} // namespace

ScalarFieldId ScalarFieldId::custom(ExprAst e) {
  ScalarFieldId id;
  id.kind = Kind::custom;
  id.expr = std::move(e);
  return id;
}

ScalarFieldId ScalarFieldId::parse(const std::string& text) {
  ScalarFieldId id;
  if (text == "cos_theta") {
    id.kind = Kind::cos_theta;
  } else if (text == "cos2_theta") {
    id.kind = Kind::cos2_theta;
  } else if (text == "theta") {
    id.kind = Kind::theta;
  } else if (text == "abs_x_sq") {
    id.kind = Kind::abs_x_sq;
  } else {
    return custom(kahler::parse(text));
  }
  return id;
}

std::string ScalarFieldId::name() const {
  switch (kind) {
  case Kind::cos_theta:
    return "cos_theta";
  case Kind::cos2_theta:
    return "cos2_theta";
  case Kind::theta:
    return "theta";
  case Kind::abs_x_sq:
    return "abs_x_sq";
  case Kind::custom:
    return expr.to_string();
  }
  return {};
}

Jet3 field_jet(const SurfacePoint& sp, const ScalarFieldId& id) {
  switch (id.kind) {
  case ScalarFieldId::Kind::cos_theta:
    return sp.frame.cos_theta;
  case ScalarFieldId::Kind::cos2_theta:
    return sp.frame.cos_theta * sp.frame.cos_theta;
  case ScalarFieldId::Kind::theta:
    require_adapted(sp, "theta");
    return acos(sp.frame.cos_theta);
  case ScalarFieldId::Kind::abs_x_sq:
    return dot(sp.x, sp.x).truncated(2);
  case ScalarFieldId::Kind::custom:
    return eval_jet(id.expr, sp.p).truncated(2);
  }
  return {};
}

Jet3 field_jet2(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p) {
  return field_jet(evaluate_point(spec, p), id);
}

SurfaceGradient surface_gradient(const SurfacePoint& sp, const Jet3& f) {
  const double df[2] = {f(1, 0), f(0, 1)};
  double gi[2][2];
  double E[2][2];
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      gi[i][j] = sp.ff.g_inv[i][j].value();
      E[i][j] = sp.frame.E[i][j].value();
    }
  }
  SurfaceGradient out;
  const double a0 = gi[0][0] * df[0] + gi[0][1] * df[1];
  const double a1 = gi[1][0] * df[0] + gi[1][1] * df[1];
  const AmbientVector xu = values(sp.ff.x_u);
  const AmbientVector xv = values(sp.ff.x_v);
  out.ambient = xu * a0 + xv * a1;
  out.norm_sq = df[0] * a0 + df[1] * a1;
  for (std::size_t i = 0; i < 2; ++i) {
    out.frame[i] = E[i][0] * df[0] + E[i][1] * df[1];
  }
  return out;
}

SurfaceGradient surface_gradient(const ImmersionSpec& spec, const ScalarFieldId& id,
                                 ParamPoint p) {
  const SurfacePoint sp = evaluate_point(spec, p);
  return surface_gradient(sp, field_jet(sp, id));
}

double laplace_beltrami(const SurfacePoint& sp, const Jet3& f) {
  const Jet3 fu = f.d_u();
  const Jet3 fv = f.d_v();
  const Jet3& sg = sp.ff.sqrt_det_g;
  const auto& gi = sp.ff.g_inv;
  const Jet3 flux_u = sg * (gi[0][0] * fu + gi[0][1] * fv);
  const Jet3 flux_v = sg * (gi[1][0] * fu + gi[1][1] * fv);
  return (flux_u.d_u().value() + flux_v.d_v().value()) / sg.value();
}

double laplace_beltrami(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p) {
  const SurfacePoint sp = evaluate_point(spec, p);
  return laplace_beltrami(sp, field_jet(sp, id));
}

double drift_laplacian(const SurfacePoint& sp, const Jet3& f) {
  const SurfaceGradient grad = surface_gradient(sp, f);
  return laplace_beltrami(sp, f) - dot(values(sp.x), grad.ambient);
}

double drift_laplacian(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p) {
  const SurfacePoint sp = evaluate_point(spec, p);
  return drift_laplacian(sp, field_jet(sp, id));
}

double drift_laplacian_divergence_form(const SurfacePoint& sp, const Jet3& f) {
  const Jet3 w = exp(-0.5 * dot(sp.x, sp.x));
  const Jet3 fu = f.d_u();
  const Jet3 fv = f.d_v();
  const Jet3 sw = sp.ff.sqrt_det_g * w;
  const auto& gi = sp.ff.g_inv;
  const Jet3 flux_u = sw * (gi[0][0] * fu + gi[0][1] * fv);
  const Jet3 flux_v = sw * (gi[1][0] * fu + gi[1][1] * fv);
  return (flux_u.d_u().value() + flux_v.d_v().value()) / sw.value();
}

double grad_theta_norm(const SurfacePoint& sp) {
  require_adapted(sp, "grad theta");
  return std::sqrt(surface_gradient(sp, sp.frame.cos_theta).norm_sq) / sp.frame.sin_theta.value();
}

double dbarJM_norm_sq(const SurfacePoint& sp) { return dbarJM_norm_sq(sp.sf, sp.frame).value(); }

ConnectionData connection_data(const SurfacePoint& sp) {
  require_adapted(sp, "connection data");
  return frame_connection(sp);
}

ConnectionData frame_connection(const SurfacePoint& sp) {
  ConnectionData c;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t A = 0; A < 4; ++A) {
      const Vec4<Jet3> de = frame_derivative(sp.frame, i, sp.frame.e[A]);
      for (std::size_t B = 0; B < 4; ++B) {
        c.G[A][B][i] = dot(de, sp.frame.e[B]).value();
      }
    }
  }
  return c;
}

ConnectionData connection_data(const ImmersionSpec& spec, ParamPoint p) {
  return connection_data(evaluate_point(spec, p, FrameChoice::adapted));
}

double weighted_integral(const ImmersionSpec& spec, const PointFunction& f,
                         const QuadratureGrid& grid, Execution exec) {
  std::vector<double> terms(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    const SurfacePoint sp = evaluate_point(spec, grid.point(k));
    const AmbientVector x = values(sp.x);
    terms[k] = grid.weight(k) * f(sp) * std::exp(-0.5 * dot(x, x)) * sp.ff.sqrt_det_g.value();
  });
  return pairwise_sum(terms);
}

double weighted_integral(const ImmersionSpec& spec, const ScalarFieldId& id,
                         const QuadratureGrid& grid, Execution exec) {
  return weighted_integral(
      spec, [&id](const SurfacePoint& sp) { return field_jet(sp, id).value(); }, grid, exec);
}

double stokes_residual(const ImmersionSpec& spec, const ScalarFieldId& u, const ScalarFieldId& v,
                       const QuadratureGrid& grid, Execution exec) {
  if (!grid.domain.closed()) {
    throw UnsupportedDomainError(
        "the weighted integration-by-parts check needs a closed (doubly periodic) surface");
  }
  const double total = weighted_integral(
      spec,
      [&](const SurfacePoint& sp) {
        const Jet3 fu = field_jet(sp, u);
        const Jet3 fv = field_jet(sp, v);
        const SurfaceGradient gu = surface_gradient(sp, fu);
        const SurfaceGradient gv = surface_gradient(sp, fv);
        return fu.value() * drift_laplacian(sp, fv) + dot(gu.ambient, gv.ambient);
      },
      grid, exec);
  return std::abs(total);
}

} // namespace kahler
