#pragma once

// Pointwise residuals of the Kaehler-angle, Lagrangian-angle and
// self-shrinker identities, each gated on its hypothesis as measured at the
// point, and their aggregation over a grid.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kahler/parallel.hpp"
#include "kahler/quadrature.hpp"
#include "kahler/surface_point.hpp"

namespace kahler {

enum class IdentityId {
  MORVAN_GENERAL,    ///< sin^2(theta) x_*(grad beta) = -(JH)^T
  MORVAN_LAGRANGIAN, ///< H = J x_*(grad beta)
  DTHETA,            ///< grad theta = sum_i (h^4_{1i} - h^3_{2i}) e_i
  CONNECTION,        ///< (w_1^3 + w_2^4) cos + (w_3^4 - w_1^2) sin = 0
  ETA_NORM,          ///< |eta|^2 = sin^2(theta)
  SHRINKER_DEF,      ///< H = -x^perp
  SHRINKER_CODAZZI,  ///< H^a_{,i} = sum_j h^a_{ij} <x, e_j>
  SHAPE_DRIFT,       ///< A_H v = v - D_v x^T
  JH_SPLIT,          ///< tangential and normal parts of JH in the adapted frame
  DIV_JH,            ///< div (JH)^T = <(JH)^T, x^T>
  L_COS,             ///< L cos = -1/4 cos |D J_M|^2
  L_COS2,            ///< 1/2 L cos^2 = sin^2 |grad theta|^2 - 1/4 cos^2 |D J_M|^2
  PINCH,             ///< |grad theta|^2 <= lambda cos^2 |D J_M|^2 / (4 (1 - lambda cos^2))
};

inline constexpr std::array<IdentityId, 13> kAllIdentities = {
    IdentityId::MORVAN_GENERAL, IdentityId::MORVAN_LAGRANGIAN, IdentityId::DTHETA,
    IdentityId::CONNECTION,     IdentityId::ETA_NORM,          IdentityId::SHRINKER_DEF,
    IdentityId::SHRINKER_CODAZZI, IdentityId::SHAPE_DRIFT,     IdentityId::JH_SPLIT,
    IdentityId::DIV_JH,         IdentityId::L_COS,             IdentityId::L_COS2,
    IdentityId::PINCH,
};

enum class HypothesisClass { universal, constant_theta, lagrangian, shrinker, constant_theta_shrinker };

std::string_view identity_name(IdentityId id);
/// Throws ParamError for unknown names.
IdentityId parse_identity(std::string_view name);
HypothesisClass hypothesis_class(IdentityId id);
std::string_view hypothesis_name(HypothesisClass h);

/// Cutoffs used to decide, per point, whether a hypothesis holds.
struct Thresholds {
  double constant_theta = 1e-6; ///< |grad theta| below this counts as constant angle
  double lagrangian = 1e-8;     ///< |cos theta| below this counts as Lagrangian
  double shrinker = 1e-6;       ///< |H + x^perp| below this counts as shrinker
  double pinch_lambda = 0.5;    ///< lambda in [0, 1) for PINCH
};

struct PointDiagnostics {
  double cos_theta = 0.0;
  double shrinker_residual = 0.0;
  /// Empty where the adapted frame does not exist.
  std::optional<double> grad_theta;
};

PointDiagnostics point_diagnostics(const SurfacePoint& sp);

struct ResidualSample {
  IdentityId id = IdentityId::ETA_NORM;
  ParamPoint p;
  double residual = 0.0;
  bool hypothesis_met = false;
  /// PINCH only: right side minus left side.
  std::optional<double> margin;
  PointDiagnostics diagnostics;
};

/// Throws NearComplexError, UndefinedAngleError, FrameError where the
/// identity needs structure the point does not have.
ResidualSample identity_residual(const SurfacePoint& sp, IdentityId id, const Thresholds& th = {});
ResidualSample identity_residual(const SurfacePoint& sp, IdentityId id, const Thresholds& th,
                                 const PointDiagnostics& diag);
ResidualSample identity_residual(const ImmersionSpec& spec, IdentityId id, ParamPoint p,
                                 const Thresholds& th = {});

struct IdentityStats {
  IdentityId id = IdentityId::ETA_NORM;
  std::size_t points_evaluated = 0;
  std::size_t points_hypothesis_met = 0;
  std::size_t skipped = 0;
  /// Over all evaluated points, whether or not the hypothesis holds there.
  double max_residual = 0.0;
  double mean_residual = 0.0;
  /// Over hypothesis-met points only; decides `pass`.
  double max_residual_hypothesis_met = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string skip_reason;
};

struct IdentityReport {
  std::string grid;
  std::vector<IdentityStats> stats;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const IdentityStats& at(IdentityId id) const;
};

/// Evaluates every identity at every grid node. Points where the immersion
/// or an identity cannot be evaluated count as skipped for that id.
IdentityReport run_suite(const ImmersionSpec& spec, const QuadratureGrid& grid, double tolerance,
                         Execution exec = Execution::serial, const Thresholds& th = {});

} // namespace kahler
