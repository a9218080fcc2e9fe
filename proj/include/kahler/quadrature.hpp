#pragma once

// Tensor-product quadrature over a surface's sample domain. The same nodes
// double as the evaluation grid of the identity suite and `analyze --grid`.

#include <optional>
#include <string>
#include <vector>

#include "kahler/immersion.hpp"

namespace kahler {

enum class QuadratureRule { periodic_trapezoid, gauss_legendre };

std::string to_string(QuadratureRule r);
/// "trapezoid" / "periodic-trapezoid" or "gauss" / "gauss-legendre".
QuadratureRule parse_rule(const std::string& s);

struct Rule1D {
  QuadratureRule rule = QuadratureRule::gauss_legendre;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n Gauss-Legendre nodes on [-1, 1], ascending.
Rule1D gauss_legendre(int n);
/// n points on [lo, hi): uniform, equal weights (hi - lo) / n.
Rule1D periodic_trapezoid(Interval iv, int n);
Rule1D make_rule(QuadratureRule rule, Interval iv, int n);

struct QuadratureGrid {
  Domain domain;
  Rule1D s;
  Rule1D t;

  [[nodiscard]] std::size_t size() const { return s.nodes.size() * t.nodes.size(); }
  /// Node k, s-major: k = i * t.size + j.
  [[nodiscard]] ParamPoint point(std::size_t k) const;
  /// Product weight times the sample-chart Jacobian.
  [[nodiscard]] double weight(std::size_t k) const;
  [[nodiscard]] std::string describe() const;
};

/// Periodic directions default to the trapezoid rule, others to Gauss-Legendre.
QuadratureGrid make_grid(const Domain& domain, int n_s, int n_t,
                         std::optional<QuadratureRule> rule_s = std::nullopt,
                         std::optional<QuadratureRule> rule_t = std::nullopt);

/// Parses "NxM". Throws ParamError.
std::pair<int, int> parse_grid_size(const std::string& text);

} // namespace kahler
