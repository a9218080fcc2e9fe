#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "kahler/catalog.hpp"
#include "kahler/immersion.hpp"

namespace kahler::testing {

/// Uniform sample-chart points mapped to (u, v). Fixed seed per call site.
inline std::vector<ParamPoint> random_points(const Domain& d, int n, unsigned seed,
                                             double margin = 0.0) {
  std::mt19937_64 rng(seed);
  const double mu = margin * d.u.length();
  const double mv = margin * d.v.length();
  std::uniform_real_distribution<double> su(d.u.lo + mu, d.u.hi - mu);
  std::uniform_real_distribution<double> sv(d.v.lo + mv, d.v.hi - mv);
  std::vector<ParamPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = su(rng);
    const double t = sv(rng);
    out.push_back(d.to_param(s, t));
  }
  return out;
}

/// Every catalog entry at its default parameters.
inline std::vector<ImmersionSpec> default_catalog() {
  std::vector<ImmersionSpec> out;
  for (const auto& e : catalog_entries()) {
    out.push_back(build(e.id, {}));
  }
  return out;
}

inline double max_abs_diff(const AmbientVector& a, const AmbientVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

} // namespace kahler::testing
