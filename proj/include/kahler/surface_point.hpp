#pragma once

// Everything the library knows about one surface point, as jets. Built once
// per point; the lagrangian, calculus and identities modules read from it.

#include "kahler/geometry.hpp"
#include "kahler/immersion.hpp"

namespace kahler {

enum class FrameChoice {
  best,    ///< adapted frame, falling back to the generic one near complex points
  adapted, ///< adapted frame or NearComplexError
  generic, ///< Gram-Schmidt normal frame with det +1
};

struct SurfacePoint {
  ParamPoint p;
  /// Position, exact through order 3.
  Vec4<Jet3> x;
  /// Coordinate Hessian, exact through order 1.
  Hessian<Jet3> hess;
  /// x_u, x_v, g, ... exact through order 2.
  FirstForms<Jet3> ff;
  /// Frame vectors and cos/sin(theta) exact through order 2.
  TangentFrame<Jet3> frame;
  /// h and H exact through order 1.
  SecondForms<Jet3> sf;
  /// eta = Omega(x_u, x_v) / sqrt(det g), exact through order 2.
  ComplexPair<Jet3> eta;
};

/// Throws DomainError, RankError, and NearComplexError (FrameChoice::adapted only).
SurfacePoint evaluate_point(const ImmersionSpec& spec, ParamPoint p,
                            FrameChoice choice = FrameChoice::best, double frame_rotation = 0.0);

/// Tangential part x^T and normal part x^perp of the position.
Vec4<Jet3> position_tangential(const SurfacePoint& sp);
Vec4<Jet3> position_normal(const SurfacePoint& sp);

} // namespace kahler
