#include "kahler/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kahler/errors.hpp"

namespace kahler {

std::string to_string(QuadratureRule r) {
  return r == QuadratureRule::periodic_trapezoid ? "periodic-trapezoid" : "gauss-legendre";
}

QuadratureRule parse_rule(const std::string& s) {
  if (s == "trapezoid" || s == "periodic-trapezoid") {
    return QuadratureRule::periodic_trapezoid;
  }
  if (s == "gauss" || s == "gauss-legendre") {
    return QuadratureRule::gauss_legendre;
  }
  throw ParamError("unknown quadrature rule '" + s + "'");
}

Rule1D gauss_legendre(int n) {
  if (n < 1) {
    throw ParamError("Gauss-Legendre needs at least one node");
  }
  Rule1D r;
  r.rule = QuadratureRule::gauss_legendre;
  r.nodes.assign(static_cast<std::size_t>(n), 0.0);
  r.weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    {
      // Final derivative at the converged root.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.nodes[lo] = -x;
    r.nodes[hi] = x;
    r.weights[lo] = w;
    r.weights[hi] = w;
  }
  if (n % 2 == 1) {
    r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  }
  return r;
}

Rule1D periodic_trapezoid(Interval iv, int n) {
  if (n < 1) {
    throw ParamError("trapezoid rule needs at least one node");
  }
  Rule1D r;
  r.rule = QuadratureRule::periodic_trapezoid;
  const double h = iv.length() / n;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(iv.lo + i * h);
    r.weights.push_back(h);
  }
  return r;
}

Rule1D make_rule(QuadratureRule rule, Interval iv, int n) {
  if (rule == QuadratureRule::periodic_trapezoid) {
    return periodic_trapezoid(iv, n);
  }
  Rule1D r = gauss_legendre(n);
  const double mid = 0.5 * (iv.lo + iv.hi);
  const double half = 0.5 * iv.length();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

ParamPoint QuadratureGrid::point(std::size_t k) const {
  const std::size_t nt = t.nodes.size();
  return domain.to_param(s.nodes[k / nt], t.nodes[k % nt]);
}

double QuadratureGrid::weight(std::size_t k) const {
  const std::size_t nt = t.nodes.size();
  const double sv = s.nodes[k / nt];
  const double tv = t.nodes[k % nt];
  return s.weights[k / nt] * t.weights[k % nt] * domain.jacobian(sv, tv);
}

std::string QuadratureGrid::describe() const {
  std::ostringstream os;
  os << s.nodes.size() << "x" << t.nodes.size() << " (" << to_string(s.rule) << " x "
     << to_string(t.rule) << ") over " << domain.describe();
  return os.str();
}

QuadratureGrid make_grid(const Domain& domain, int n_s, int n_t,
                         std::optional<QuadratureRule> rule_s,
                         std::optional<QuadratureRule> rule_t) {
  QuadratureGrid g;
  g.domain = domain;
  const auto rs = rule_s.value_or(domain.periodic_u ? QuadratureRule::periodic_trapezoid
                                                    : QuadratureRule::gauss_legendre);
  const auto rt = rule_t.value_or(domain.periodic_v ? QuadratureRule::periodic_trapezoid
                                                    : QuadratureRule::gauss_legendre);
  g.s = make_rule(rs, domain.u, n_s);
  g.t = make_rule(rt, domain.v, n_t);
  return g;
}

std::pair<int, int> parse_grid_size(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) {
      throw std::invalid_argument("no separator");
    }
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, x);
    const std::string b = text.substr(x + 1);
    const int n = std::stoi(a, &used_a);
    const int m = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || n < 1 || m < 1) {
      throw std::invalid_argument("bad size");
    }
    return {n, m};
  } catch (const std::logic_error&) {
    throw ParamError("grid must look like NxM with positive integers, got '" + text + "'");
  }
}

} // namespace kahler
