#pragma once

// Intrinsic operators on the surface (gradient, Laplace-Beltrami, the drift
// operator L f = Lap f - <x, grad f>), |D J_M|^2, ambient connection
// coefficients in the moving frame, and Gaussian-weighted integrals.

#include <array>
#include <functional>
#include <string>

#include "kahler/expr.hpp"
#include "kahler/parallel.hpp"
#include "kahler/quadrature.hpp"
#include "kahler/surface_point.hpp"

namespace kahler {

struct ScalarFieldId {
  enum class Kind { cos_theta, cos2_theta, theta, abs_x_sq, custom };
  Kind kind = Kind::cos_theta;
  ExprAst expr;

  static ScalarFieldId custom(ExprAst e);
  /// "cos_theta", "cos2_theta", "theta", "abs_x_sq", or any u,v expression.
  static ScalarFieldId parse(const std::string& text);
  [[nodiscard]] std::string name() const;
};

/// Field jet at an evaluated point, exact through order 2. theta needs the
/// adapted frame (NearComplexError otherwise).
Jet3 field_jet(const SurfacePoint& sp, const ScalarFieldId& id);
Jet3 field_jet2(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p);

struct SurfaceGradient {
  /// <grad f, e_i>.
  std::array<double, 2> frame{};
  AmbientVector ambient;
  double norm_sq = 0.0;
};

/// Gradient of a field jet (order >= 1) along the surface.
SurfaceGradient surface_gradient(const SurfacePoint& sp, const Jet3& f);
SurfaceGradient surface_gradient(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p);

/// (1/sqrt g) d_i (sqrt g g^{ij} d_j f); f must be exact through order 2.
double laplace_beltrami(const SurfacePoint& sp, const Jet3& f);
double laplace_beltrami(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p);

/// L f = Lap f - <x, grad f>.
double drift_laplacian(const SurfacePoint& sp, const Jet3& f);
double drift_laplacian(const ImmersionSpec& spec, const ScalarFieldId& id, ParamPoint p);

/// The same operator in divergence form, e^{|x|^2/2} div(e^{-|x|^2/2} grad f).
double drift_laplacian_divergence_form(const SurfacePoint& sp, const Jet3& f);

/// |grad theta| = |grad cos| / sin; requires the adapted frame.
double grad_theta_norm(const SurfacePoint& sp);

/// 4 sum_i ((h^4_{2i} + h^3_{1i})^2 + (h^4_{1i} - h^3_{2i})^2); FrameError
/// unless `frame` is adapted.
template <class T>
T dbarJM_norm_sq(const SecondForms<T>& sf, const TangentFrame<T>& frame) {
  if (!frame.adapted) {
    throw FrameError("|D J_M|^2 is defined through the adapted frame only");
  }
  const auto& h3 = sf.h[0];
  const auto& h4 = sf.h[1];
  T s = constant_as<T>(0.0);
  for (std::size_t i = 0; i < 2; ++i) {
    const T a = h4[1][i] + h3[0][i];
    const T b = h4[0][i] - h3[1][i];
    s += a * a + b * b;
  }
  return 4.0 * s;
}
double dbarJM_norm_sq(const SurfacePoint& sp);

/// G[A][B][i] = <D_{e_i} e_A, e_B>, zero-based frame indices.
struct ConnectionData {
  std::array<std::array<std::array<double, 2>, 4>, 4> G{};

  [[nodiscard]] double operator()(int A, int B, int i) const {
    return G[static_cast<std::size_t>(A)][static_cast<std::size_t>(B)][static_cast<std::size_t>(i)];
  }
};

/// Throws NearComplexError unless the point carries an adapted frame.
ConnectionData connection_data(const SurfacePoint& sp);
/// Same coefficients for whatever frame the point carries.
ConnectionData frame_connection(const SurfacePoint& sp);
ConnectionData connection_data(const ImmersionSpec& spec, ParamPoint p);

using PointFunction = std::function<double(const SurfacePoint&)>;

/// sum_k w_k f(x_k) e^{-|x_k|^2/2} sqrt(det g)(x_k). Node values are
/// computed per `exec` and summed pairwise in node order.
double weighted_integral(const ImmersionSpec& spec, const PointFunction& f,
                         const QuadratureGrid& grid, Execution exec = Execution::serial);
double weighted_integral(const ImmersionSpec& spec, const ScalarFieldId& id,
                         const QuadratureGrid& grid, Execution exec = Execution::serial);

/// |int u L v w dV + int <grad u, grad v> w dV|; closed surfaces only
/// (UnsupportedDomainError otherwise).
double stokes_residual(const ImmersionSpec& spec, const ScalarFieldId& u, const ScalarFieldId& v,
                       const QuadratureGrid& grid, Execution exec = Execution::serial);

} // namespace kahler
