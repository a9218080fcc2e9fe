#include "kahler/identities.hpp"

#include <cmath>
#include <limits>

#include "kahler/calculus.hpp"
#include "kahler/errors.hpp"
#include "kahler/lagrangian.hpp"

namespace kahler {
namespace {

struct NameEntry {
  IdentityId id;
  std::string_view name;
  HypothesisClass hyp;
};

constexpr std::array<NameEntry, 13> kNames = {{
    {IdentityId::MORVAN_GENERAL, "MORVAN_GENERAL", HypothesisClass::constant_theta},
    {IdentityId::MORVAN_LAGRANGIAN, "MORVAN_LAGRANGIAN", HypothesisClass::lagrangian},
    {IdentityId::DTHETA, "DTHETA", HypothesisClass::universal},
    {IdentityId::CONNECTION, "CONNECTION", HypothesisClass::universal},
    {IdentityId::ETA_NORM, "ETA_NORM", HypothesisClass::universal},
    {IdentityId::SHRINKER_DEF, "SHRINKER_DEF", HypothesisClass::shrinker},
    {IdentityId::SHRINKER_CODAZZI, "SHRINKER_CODAZZI", HypothesisClass::shrinker},
    {IdentityId::SHAPE_DRIFT, "SHAPE_DRIFT", HypothesisClass::shrinker},
    {IdentityId::JH_SPLIT, "JH_SPLIT", HypothesisClass::universal},
    {IdentityId::DIV_JH, "DIV_JH", HypothesisClass::constant_theta_shrinker},
    {IdentityId::L_COS, "L_COS", HypothesisClass::shrinker},
    {IdentityId::L_COS2, "L_COS2", HypothesisClass::shrinker},
    {IdentityId::PINCH, "PINCH", HypothesisClass::shrinker},
}};

const NameEntry& entry(IdentityId id) {
  for (const auto& e : kNames) {
    if (e.id == id) {
      return e;
    }
  }
  throw std::logic_error("unknown identity id");
}

double norm_sq(const AmbientVector& a) { return dot(a, a); }

// x_*(grad f) from the coordinate partials of f.
AmbientVector pushforward_gradient(const SurfacePoint& sp, double fu, double fv) {
  const auto& gi = sp.ff.g_inv;
  const double a0 = gi[0][0].value() * fu + gi[0][1].value() * fv;
  const double a1 = gi[1][0].value() * fu + gi[1][1].value() * fv;
  return values(sp.ff.x_u) * a0 + values(sp.ff.x_v) * a1;
}

AmbientVector frame_value(const SurfacePoint& sp, std::size_t A) { return values(sp.frame.e[A]); }

void require_adapted(const SurfacePoint& sp, IdentityId id) {
  if (!sp.frame.adapted) {
    throw NearComplexError(std::string(identity_name(id)) + " needs the adapted frame");
  }
}

double require_grad_theta(const PointDiagnostics& d) {
  if (!d.grad_theta) {
    throw NearComplexError("grad theta undefined without the adapted frame");
  }
  return *d.grad_theta;
}

bool hypothesis_holds(HypothesisClass h, const PointDiagnostics& d, const Thresholds& th) {
  const bool constant = d.grad_theta && *d.grad_theta < th.constant_theta;
  const bool shrinker = d.shrinker_residual < th.shrinker;
  switch (h) {
  case HypothesisClass::universal:
    return true;
  case HypothesisClass::constant_theta:
    return constant;
  case HypothesisClass::lagrangian:
    return std::abs(d.cos_theta) < th.lagrangian;
  case HypothesisClass::shrinker:
    return shrinker;
  case HypothesisClass::constant_theta_shrinker:
    return constant && shrinker;
  }
  return false;
}

double residual_value(const SurfacePoint& sp, IdentityId id, const Thresholds& th,
                      const PointDiagnostics& diag, std::optional<double>& margin) {
  const auto& f = sp.frame;
  const Vec4<Jet3> JH = apply_J(sp.sf.H_ambient);
  switch (id) {
  case IdentityId::MORVAN_GENERAL: {
    const auto db = dbeta_jets(sp);
    const AmbientVector grad_beta = pushforward_gradient(sp, db[0].value(), db[1].value());
    const AmbientVector jh = values(JH);
    AmbientVector jh_t = frame_value(sp, 0) * dot(jh, frame_value(sp, 0)) +
                         frame_value(sp, 1) * dot(jh, frame_value(sp, 1));
    const double s = f.sin_theta.value();
    return std::sqrt(norm_sq(grad_beta * (s * s) + jh_t));
  }
  case IdentityId::MORVAN_LAGRANGIAN: {
    const auto db = dbeta_jets(sp);
    const AmbientVector grad_beta = pushforward_gradient(sp, db[0].value(), db[1].value());
    return std::sqrt(norm_sq(values(sp.sf.H_ambient) - apply_J(grad_beta)));
  }
  case IdentityId::DTHETA: {
    require_adapted(sp, id);
    const double s = f.sin_theta.value();
    double r2 = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double dtheta = -frame_derivative(f, i, f.cos_theta).value() / s;
      const double rhs = sp.sf.h[1][0][i].value() - sp.sf.h[0][1][i].value();
      r2 += (dtheta - rhs) * (dtheta - rhs);
    }
    return std::sqrt(r2);
  }
  case IdentityId::CONNECTION: {
    const ConnectionData G = connection_data(sp);
    const double c = f.cos_theta.value();
    const double s = f.sin_theta.value();
    double r2 = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double lhs = (G(0, 2, i) + G(1, 3, i)) * c + (G(2, 3, i) - G(0, 1, i)) * s;
      r2 += lhs * lhs;
    }
    return std::sqrt(r2);
  }
  case IdentityId::ETA_NORM: {
    const EtaValue e = eta(sp);
    const double s = f.sin_theta.value();
    return std::abs(e.re * e.re + e.im * e.im - s * s);
  }
  case IdentityId::SHRINKER_DEF:
    return diag.shrinker_residual;
  case IdentityId::SHRINKER_CODAZZI: {
    const ConnectionData G = frame_connection(sp);
    const AmbientVector x = values(sp.x);
    double r2 = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t i = 0; i < 2; ++i) {
        double lhs = frame_derivative(f, i, sp.sf.H[a]).value();
        for (std::size_t b = 0; b < 2; ++b) {
          lhs += sp.sf.H[b].value() * G.G[2 + b][2 + a][i];
        }
        double rhs = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
          rhs += sp.sf.h[a][i][j].value() * dot(x, frame_value(sp, j));
        }
        r2 += (lhs - rhs) * (lhs - rhs);
      }
    }
    return std::sqrt(r2);
  }
  case IdentityId::SHAPE_DRIFT: {
    const Vec4<Jet3> x_t = position_tangential(sp);
    double r2 = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const AmbientVector dxt = values(frame_derivative(f, i, x_t));
      for (std::size_t j = 0; j < 2; ++j) {
        double ah = 0.0;
        for (std::size_t a = 0; a < 2; ++a) {
          ah += sp.sf.h[a][i][j].value() * sp.sf.H[a].value();
        }
        const double r = ah - (i == j ? 1.0 : 0.0) + dot(dxt, frame_value(sp, j));
        r2 += r * r;
      }
    }
    return std::sqrt(r2);
  }
  case IdentityId::JH_SPLIT: {
    require_adapted(sp, id);
    const AmbientVector jh = values(JH);
    const double c = f.cos_theta.value();
    const double s = f.sin_theta.value();
    const double H3 = sp.sf.H[0].value();
    const double H4 = sp.sf.H[1].value();
    AmbientVector tan_part = frame_value(sp, 0) * dot(jh, frame_value(sp, 0)) +
                             frame_value(sp, 1) * dot(jh, frame_value(sp, 1));
    AmbientVector nor_part = frame_value(sp, 2) * dot(jh, frame_value(sp, 2)) +
                             frame_value(sp, 3) * dot(jh, frame_value(sp, 3));
    const AmbientVector tan_rhs = (frame_value(sp, 0) * H3 + frame_value(sp, 1) * H4) * (-s);
    const AmbientVector nor_rhs = (frame_value(sp, 2) * H4 - frame_value(sp, 3) * H3) * c;
    return std::sqrt(norm_sq(tan_part - tan_rhs) + norm_sq(nor_part - nor_rhs));
  }
  case IdentityId::DIV_JH: {
    require_adapted(sp, id);
    const ConnectionData G = connection_data(sp);
    const AmbientVector x = values(sp.x);
    std::array<Jet3, 2> V{dot(JH, f.e[0]), dot(JH, f.e[1])};
    double div = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      div += frame_derivative(f, i, V[i]).value();
      for (std::size_t k = 0; k < 2; ++k) {
        div += V[k].value() * G.G[k][i][i];
      }
      rhs += V[i].value() * dot(x, frame_value(sp, i));
    }
    return std::abs(div - rhs);
  }
  case IdentityId::L_COS: {
    const double c = f.cos_theta.value();
    const double lhs = drift_laplacian(sp, f.cos_theta);
    return std::abs(lhs + 0.25 * c * dbarJM_norm_sq(sp));
  }
  case IdentityId::L_COS2: {
    const double c = f.cos_theta.value();
    const double s = f.sin_theta.value();
    const double gt = require_grad_theta(diag);
    const double lhs = 0.5 * drift_laplacian(sp, f.cos_theta * f.cos_theta);
    const double rhs = s * s * gt * gt - 0.25 * c * c * dbarJM_norm_sq(sp);
    return std::abs(lhs - rhs);
  }
  case IdentityId::PINCH: {
    const double c = f.cos_theta.value();
    const double lam = th.pinch_lambda;
    if (!(lam >= 0.0 && lam < 1.0)) {
      throw ParamError("pinching lambda must lie in [0, 1)");
    }
    const double gt = require_grad_theta(diag);
    const double m =
        lam * c * c * dbarJM_norm_sq(sp) / (4.0 * (1.0 - lam * c * c)) - gt * gt;
    margin = m;
    return std::max(0.0, -m);
  }
  }
  throw std::logic_error("unhandled identity");
}

} // namespace

std::string_view identity_name(IdentityId id) { return entry(id).name; }

IdentityId parse_identity(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) {
      return e.id;
    }
  }
  throw ParamError("unknown identity '" + std::string(name) + "'");
}

HypothesisClass hypothesis_class(IdentityId id) { return entry(id).hyp; }

std::string_view hypothesis_name(HypothesisClass h) {
  switch (h) {
  case HypothesisClass::universal:
    return "universal";
  case HypothesisClass::constant_theta:
    return "constant-theta";
  case HypothesisClass::lagrangian:
    return "lagrangian";
  case HypothesisClass::shrinker:
    return "shrinker";
  case HypothesisClass::constant_theta_shrinker:
    return "constant-theta-shrinker";
  }
  return "";
}

PointDiagnostics point_diagnostics(const SurfacePoint& sp) {
  PointDiagnostics d;
  d.cos_theta = sp.frame.cos_theta.value();
  const AmbientVector R = values(sp.sf.H_ambient) + values(position_normal(sp));
  d.shrinker_residual = std::sqrt(dot(R, R));
  if (sp.frame.adapted) {
    d.grad_theta = grad_theta_norm(sp);
  }
  return d;
}

ResidualSample identity_residual(const SurfacePoint& sp, IdentityId id, const Thresholds& th,
                                 const PointDiagnostics& diag) {
  ResidualSample out;
  out.id = id;
  out.p = sp.p;
  out.diagnostics = diag;
  out.residual = residual_value(sp, id, th, diag, out.margin);
  out.hypothesis_met = hypothesis_holds(hypothesis_class(id), diag, th);
  return out;
}

ResidualSample identity_residual(const SurfacePoint& sp, IdentityId id, const Thresholds& th) {
  return identity_residual(sp, id, th, point_diagnostics(sp));
}

ResidualSample identity_residual(const ImmersionSpec& spec, IdentityId id, ParamPoint p,
                                 const Thresholds& th) {
  return identity_residual(evaluate_point(spec, p), id, th);
}

bool IdentityReport::all_pass() const {
  for (const auto& s : stats) {
    if (!s.pass) {
      return false;
    }
  }
  return true;
}

const IdentityStats& IdentityReport::at(IdentityId id) const {
  for (const auto& s : stats) {
    if (s.id == id) {
      return s;
    }
  }
  throw std::out_of_range("identity not in report");
}

IdentityReport run_suite(const ImmersionSpec& spec, const QuadratureGrid& grid, double tolerance,
                         Execution exec, const Thresholds& th) {
  constexpr std::size_t kIds = kAllIdentities.size();
  struct Cell {
    double residual = 0.0;
    bool ok = false;
    bool hyp = false;
    std::string error;
  };
  const std::size_t n = grid.size();
  std::vector<std::array<Cell, kIds>> cells(n);

  for_each_index(n, exec, [&](std::size_t k) {
    auto& row = cells[k];
    std::optional<SurfacePoint> sp;
    std::optional<PointDiagnostics> diag;
    std::string point_error;
    try {
      sp = evaluate_point(spec, grid.point(k));
      diag = point_diagnostics(*sp);
    } catch (const Error& e) {
      point_error = std::string(e.kind()) + ": " + e.what();
    }
    for (std::size_t m = 0; m < kIds; ++m) {
      if (!sp) {
        row[m].error = point_error;
        continue;
      }
      try {
        const ResidualSample r = identity_residual(*sp, kAllIdentities[m], th, *diag);
        row[m].residual = r.residual;
        row[m].hyp = r.hypothesis_met;
        row[m].ok = true;
      } catch (const Error& e) {
        row[m].error = std::string(e.kind()) + ": " + e.what();
      }
    }
  });

  IdentityReport report;
  report.grid = grid.describe();
  for (std::size_t m = 0; m < kIds; ++m) {
    IdentityStats s;
    s.id = kAllIdentities[m];
    s.tolerance = tolerance;
    std::vector<double> evaluated;
    evaluated.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Cell& c = cells[k][m];
      if (!c.ok) {
        ++s.skipped;
        if (s.skip_reason.empty()) {
          s.skip_reason = c.error;
        }
        continue;
      }
      evaluated.push_back(c.residual);
      s.max_residual = std::max(s.max_residual, c.residual);
      if (c.hyp) {
        ++s.points_hypothesis_met;
        s.max_residual_hypothesis_met = std::max(s.max_residual_hypothesis_met, c.residual);
      }
    }
    s.points_evaluated = evaluated.size();
    s.mean_residual =
        evaluated.empty() ? 0.0 : pairwise_sum(evaluated) / static_cast<double>(evaluated.size());
    s.pass = !(s.max_residual_hypothesis_met >= tolerance) &&
             std::isfinite(s.max_residual_hypothesis_met);
    report.stats.push_back(s);
  }
  return report;
}

} // namespace kahler
