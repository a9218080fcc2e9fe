#pragma once

// The density eta with x^* Omega = eta dV, the Lagrangian angle
// beta = arg(eta), the Maslov form alpha = -d(beta), and winding numbers of
// alpha along closed parameter loops.

#include <string>

#include "kahler/expr.hpp"
#include "kahler/surface_point.hpp"

namespace kahler {

/// Cutoff on |eta| below which the Lagrangian angle is undefined.
inline constexpr double kEtaEps = 1e-8;

struct EtaValue {
  double re = 0.0;
  double im = 0.0;

  [[nodiscard]] double abs() const;
  /// theta in [0, pi/2] recovered from |eta| = sin(theta).
  [[nodiscard]] double theta_from_eta() const;
};

/// eta from first derivatives only (no frame).
EtaValue eta(const FirstForms<double>& ff);
EtaValue eta(const SurfacePoint& sp);
/// Cheap evaluation used along loops.
EtaValue eta_at(const ImmersionSpec& spec, ParamPoint p);

/// Principal value of beta in (-pi, pi]. Throws UndefinedAngleError.
double lagrangian_angle(const EtaValue& e, double eps = kEtaEps);

struct MaslovSample {
  double alpha_u = 0.0;
  double alpha_v = 0.0;
  double beta_principal = 0.0;
};

/// alpha = -d(beta) with d(beta) = Im(d eta / eta). Throws UndefinedAngleError.
MaslovSample maslov_form(const SurfacePoint& sp, double eps = kEtaEps);

/// Jets of the coordinate components (d_u beta, d_v beta), exact through order 1.
std::array<Jet3, 2> dbeta_jets(const SurfacePoint& sp, double eps = kEtaEps);

/// d_v(alpha_u) - d_u(alpha_v); zero for a closed form.
double maslov_closedness(const SurfacePoint& sp, double eps = kEtaEps);

struct LoopSpec {
  enum class Kind { u_loop, v_loop, circle, expr };
  Kind kind = Kind::u_loop;
  /// Fixed v of a u-loop or fixed u of a v-loop.
  double fixed = 0.0;
  ParamPoint center;
  double radius = 0.0;
  ExprAst u_of_t;
  ExprAst v_of_t;
  /// Initial uniform sample count; refined adaptively.
  int samples = 64;

  [[nodiscard]] ParamPoint at(const Domain& domain, double t) const;
  [[nodiscard]] std::string describe() const;
};

/// Parses "u-loop[:v0]", "v-loop[:u0]", "circle:cu,cv,r" or "expr:U(t);V(t)"
/// with t in [0, 1]. For u-/v-loops without an explicit fixed coordinate the
/// domain's lower bound is used. Throws ParseError or ParamError.
LoopSpec parse_loop(const std::string& text, const Domain& domain);

struct MaslovIndex {
  long winding = 0;
  double raw = 0.0;
  long evaluations = 0;
};

/// Winding of alpha along the loop by unwrapping arg(eta). Throws
/// UndefinedAngleError, NonConvergenceError, ParamError (loop not closed).
MaslovIndex maslov_index(const ImmersionSpec& spec, const LoopSpec& loop);

} // namespace kahler
