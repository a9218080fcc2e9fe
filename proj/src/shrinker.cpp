#include "kahler/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "kahler/catalog.hpp"
#include "kahler/errors.hpp"

namespace kahler {
namespace {

using Matrix = std::vector<std::vector<double>>;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) {
    s += x * x;
  }
  return std::sqrt(s);
}

QuadratureGrid family_quadrature(const ImmersionSpec& spec, const FamilyGrid& g) {
  if (!spec.domain.closed()) {
    throw UnsupportedDomainError("shrinker families must consist of closed surfaces");
  }
  return make_grid(spec.domain, g.n_u, g.n_v);
}

std::vector<double> project(const Family& f, std::vector<double> pi) {
  for (std::size_t i = 0; i < pi.size(); ++i) {
    pi[i] = std::clamp(pi[i], f.box[i].lo, f.box[i].hi);
  }
  return pi;
}

// Solves A x = b by Gaussian elimination with partial pivoting; empty when
// A is numerically singular.
std::optional<std::vector<double>> solve(Matrix A, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) {
        piv = r;
      }
    }
    if (std::abs(A[piv][c]) < 1e-12) {
      return std::nullopt;
    }
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) {
        A[r][k] -= m * A[c][k];
      }
      b[r] -= m * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) {
      s -= A[i][k] * x[k];
    }
    x[i] = s / A[i][i];
  }
  return x;
}

// Cholesky of -A succeeds iff A is negative definite.
bool negative_definite(const Matrix& A) {
  const std::size_t n = A.size();
  Matrix L(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = -A[i][j];
      for (std::size_t k = 0; k < j; ++k) {
        s -= L[i][k] * L[j][k];
      }
      if (i == j) {
        if (!(s > 0.0)) {
          return false;
        }
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  return true;
}

struct Evaluation {
  std::vector<double> pi;
  double F = 0.0;
  std::vector<double> grad;
  double merit = 0.0;
};

} // namespace

ShrinkerResidual shrinker_residual(const SurfacePoint& sp) {
  ShrinkerResidual r;
  r.R = values(sp.sf.H_ambient) + values(position_normal(sp));
  r.norm = std::sqrt(dot(r.R, r.R));
  return r;
}

ShrinkerResidual shrinker_residual(const ImmersionSpec& spec, ParamPoint p) {
  return shrinker_residual(evaluate_point(spec, p));
}

double gaussian_area(const ImmersionSpec& spec, const QuadratureGrid& grid, Execution exec) {
  std::vector<double> terms(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    const Vec4<Jet3> x = immersion_jets(spec, grid.point(k));
    AmbientVector pos;
    AmbientVector xu;
    AmbientVector xv;
    for (std::size_t i = 0; i < 4; ++i) {
      pos[i] = x[i].value();
      xu[i] = x[i](1, 0);
      xv[i] = x[i](0, 1);
    }
    const double guu = dot(xu, xu);
    const double guv = dot(xu, xv);
    const double gvv = dot(xv, xv);
    const double area = std::sqrt(guu * gvv - guv * guv);
    terms[k] = grid.weight(k) * std::exp(-0.5 * dot(pos, pos)) * area;
  });
  return pairwise_sum(terms);
}

Family product_family() {
  Family f;
  f.name = "product";
  f.param_names = {"r", "s"};
  f.box = {{0.1, 5.0}, {0.1, 5.0}};
  f.default_init = {1.5, 0.7};
  f.build = [](std::span<const double> p) { return product_torus(p[0], p[1]); };
  return f;
}

Family scaling_family() {
  Family f;
  f.name = "scaling";
  f.param_names = {"r"};
  f.box = {{0.1, 5.0}};
  f.default_init = {0.3};
  f.build = [](std::span<const double> p) { return product_torus(p[0], p[0]); };
  return f;
}

Family fourier_family() {
  Family f;
  f.name = "fourier";
  f.param_names = {"c0", "c1", "c2", "c3"};
  f.box = {{-0.19, 0.19}, {-0.19, 0.19}, {-0.19, 0.19}, {-0.19, 0.19}};
  f.default_init = {0.05, -0.05, 0.05, -0.05};
  f.build = [](std::span<const double> p) { return perturbed_torus({p[0], p[1], p[2], p[3]}); };
  return f;
}

Family family_by_name(const std::string& name) {
  if (name == "product") {
    return product_family();
  }
  if (name == "scaling") {
    return scaling_family();
  }
  if (name == "fourier") {
    return fourier_family();
  }
  throw ParamError("unknown family '" + name + "'; expected product, scaling or fourier");
}

double gaussian_area(const Family& family, std::span<const double> pi, const FamilyGrid& grid) {
  if (pi.size() != family.param_names.size()) {
    throw ParamError(family.name + " family takes " + std::to_string(family.param_names.size()) +
                     " parameters");
  }
  const ImmersionSpec spec = family.build(pi);
  return gaussian_area(spec, family_quadrature(spec, grid), grid.exec);
}

std::vector<double> family_gradient(const Family& family, std::span<const double> pi,
                                    const FamilyGrid& grid, double step) {
  std::vector<double> g(pi.size());
  std::vector<double> q(pi.begin(), pi.end());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    q[i] = pi[i] + step;
    const double fp = gaussian_area(family, q, grid);
    q[i] = pi[i] - step;
    const double fm = gaussian_area(family, q, grid);
    q[i] = pi[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

double first_variation_residual(const Family& family, std::span<const double> pi,
                                std::span<const double> direction, const FamilyGrid& grid,
                                double step) {
  if (direction.size() != pi.size()) {
    throw ParamError("direction and parameter vector differ in length");
  }
  const double dn = norm2(direction);
  if (!(dn > 0.0)) {
    throw ParamError("direction must be nonzero");
  }
  std::vector<double> plus(pi.begin(), pi.end());
  std::vector<double> minus(pi.begin(), pi.end());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    plus[i] += step * direction[i] / dn;
    minus[i] -= step * direction[i] / dn;
  }
  const ImmersionSpec base = family.build(pi);
  const ImmersionSpec sp_plus = family.build(plus);
  const ImmersionSpec sp_minus = family.build(minus);
  const QuadratureGrid q = family_quadrature(base, grid);
  const double dF = (gaussian_area(sp_plus, q, grid.exec) - gaussian_area(sp_minus, q, grid.exec)) /
                    (2.0 * step);

  std::vector<double> terms(q.size());
  for_each_index(q.size(), grid.exec, [&](std::size_t k) {
    const ParamPoint p = q.point(k);
    const SurfacePoint sp = evaluate_point(base, p);
    const AmbientVector V = (sp_plus.position(p) - sp_minus.position(p)) * (1.0 / (2.0 * step));
    const AmbientVector R = shrinker_residual(sp).R;
    const AmbientVector x = values(sp.x);
    terms[k] = q.weight(k) * dot(R, V) * std::exp(-0.5 * dot(x, x)) * sp.ff.sqrt_det_g.value();
  });
  const double predicted = -pairwise_sum(terms);
  return std::abs(dF - predicted);
}

OptimizerResult find_critical(const Family& family, std::vector<double> pi0,
                              const OptimizerConfig& cfg) {
  const std::size_t k = family.param_names.size();
  if (pi0.size() != k) {
    throw ParamError(family.name + " family takes " + std::to_string(k) + " parameters");
  }
  if (!(cfg.tol > 0.0 && cfg.fd_step > 0.0 && cfg.hessian_step > 0.0 && cfg.max_step > 0.0 &&
        cfg.shrink > 0.0 && cfg.shrink < 1.0 && cfg.sufficient_decrease > 0.0 && cfg.max_iter >= 0)) {
    throw ParamError("optimizer settings must be positive, with shrink factor in (0, 1)");
  }

  auto evaluate = [&](std::vector<double> pi) {
    Evaluation e;
    e.pi = std::move(pi);
    e.F = gaussian_area(family, e.pi, cfg.grid);
    e.grad = family_gradient(family, e.pi, cfg.grid, cfg.fd_step);
    e.merit = 0.0;
    for (double g : e.grad) {
      e.merit += g * g;
    }
    return e;
  };
  auto hessian = [&](const std::vector<double>& pi) {
    Matrix H(k, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> a = pi;
      std::vector<double> b = pi;
      const double h = std::min(cfg.hessian_step, 0.5 * (family.box[j].hi - family.box[j].lo));
      a[j] = std::min(pi[j] + h, family.box[j].hi);
      b[j] = std::max(pi[j] - h, family.box[j].lo);
      const auto ga = family_gradient(family, a, cfg.grid, cfg.fd_step);
      const auto gb = family_gradient(family, b, cfg.grid, cfg.fd_step);
      for (std::size_t i = 0; i < k; ++i) {
        H[i][j] = (ga[i] - gb[i]) / (a[j] - b[j]);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const double m = 0.5 * (H[i][j] + H[j][i]);
        H[i][j] = m;
        H[j][i] = m;
      }
    }
    return H;
  };

  OptimizerResult res;
  Evaluation cur = evaluate(project(family, std::move(pi0)));
  res.trace.push_back({cur.pi, cur.F, std::sqrt(cur.merit), "start"});
  res.stop_reason = "max_iter";

  for (int iter = 0; iter <= cfg.max_iter; ++iter) {
    if (std::sqrt(cur.merit) < cfg.tol) {
      res.converged = true;
      res.stop_reason = "gradient below tolerance";
      break;
    }
    if (iter == cfg.max_iter) {
      break;
    }
    const Matrix H = hessian(cur.pi);
    std::vector<double> minus_g(k);
    for (std::size_t i = 0; i < k; ++i) {
      minus_g[i] = -cur.grad[i];
    }
    const auto newton = solve(H, minus_g);
    std::vector<double> merit_dir(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        merit_dir[i] -= H[i][j] * cur.grad[j];
      }
    }
    std::vector<std::pair<std::string, std::vector<double>>> candidates;
    const bool concave = negative_definite(H);
    if (concave && newton) {
      candidates.emplace_back("newton", *newton);
    }
    candidates.emplace_back("ascent", cur.grad);
    if (!concave && newton) {
      candidates.emplace_back("newton", *newton);
    }
    candidates.emplace_back("descent", minus_g);
    candidates.emplace_back("merit", merit_dir);

    bool accepted = false;
    for (const auto& [label, d] : candidates) {
      const double dn = norm2(d);
      if (!(dn > 0.0) || !std::isfinite(dn)) {
        continue;
      }
      double alpha = std::min(1.0, cfg.max_step / dn);
      for (int halving = 0; halving < 40 && !accepted; ++halving, alpha *= cfg.shrink) {
        std::vector<double> trial(k);
        for (std::size_t i = 0; i < k; ++i) {
          trial[i] = cur.pi[i] + alpha * d[i];
        }
        trial = project(family, std::move(trial));
        if (trial == cur.pi) {
          break;
        }
        Evaluation next = evaluate(std::move(trial));
        if (next.merit <= (1.0 - cfg.sufficient_decrease) * cur.merit) {
          cur = std::move(next);
          res.trace.push_back({cur.pi, cur.F, std::sqrt(cur.merit), label});
          accepted = true;
        }
      }
      if (accepted) {
        break;
      }
    }
    if (!accepted) {
      res.stop_reason = "no direction decreases ||grad F||^2";
      break;
    }
    ++res.iterations;
  }
  res.pi = cur.pi;
  res.F = cur.F;
  res.grad_norm = std::sqrt(cur.merit);
  return res;
}

} // namespace kahler
