#include "kahler/surface_point.hpp"

namespace kahler {

SurfacePoint evaluate_point(const ImmersionSpec& spec, ParamPoint p, FrameChoice choice,
                            double frame_rotation) {
  SurfacePoint sp;
  sp.p = p;
  sp.x = immersion_jets(spec, p);
  Vec4<Jet3> x_u;
  Vec4<Jet3> x_v;
  for (std::size_t k = 0; k < 4; ++k) {
    x_u[k] = sp.x[k].d_u();
    x_v[k] = sp.x[k].d_v();
    sp.hess[0][0][k] = x_u[k].d_u();
    sp.hess[0][1][k] = x_u[k].d_v();
    sp.hess[1][1][k] = x_v[k].d_v();
  }
  sp.hess[1][0] = sp.hess[0][1];
  sp.ff = first_forms(x_u, x_v);
  switch (choice) {
  case FrameChoice::best:
    sp.frame = best_frame(sp.ff, frame_rotation);
    break;
  case FrameChoice::adapted:
    sp.frame = adapted_frame(sp.ff, kAdaptEps, frame_rotation);
    break;
  case FrameChoice::generic:
    sp.frame = generic_normal_frame(sp.ff, frame_rotation);
    break;
  }
  sp.sf = second_forms(sp.hess, sp.frame);
  const ComplexPair<Jet3> omega = holomorphic_volume(x_u, x_v);
  const Jet3 inv_area = 1.0 / sp.ff.sqrt_det_g;
  sp.eta = {omega.re * inv_area, omega.im * inv_area};
  return sp;
}

Vec4<Jet3> position_tangential(const SurfacePoint& sp) {
  return sp.frame.e[0] * dot(sp.x, sp.frame.e[0]) + sp.frame.e[1] * dot(sp.x, sp.frame.e[1]);
}

Vec4<Jet3> position_normal(const SurfacePoint& sp) {
  return sp.frame.e[2] * dot(sp.x, sp.frame.e[2]) + sp.frame.e[3] * dot(sp.x, sp.frame.e[3]);
}

} // namespace kahler
