#include "kahler/analysis.hpp"

#include "kahler/calculus.hpp"
#include "kahler/lagrangian.hpp"
#include "kahler/shrinker.hpp"

namespace kahler {

SurfaceData summarize(const SurfacePoint& sp) {
  SurfaceData d;
  d.p = sp.p;
  d.x = values(sp.x);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      d.g[i][j] = sp.ff.g[i][j].value();
      for (std::size_t a = 0; a < 2; ++a) {
        d.h[a][i][j] = sp.sf.h[a][i][j].value();
      }
    }
    d.H[i] = sp.sf.H[i].value();
  }
  d.sqrt_det_g = sp.ff.sqrt_det_g.value();
  d.cos_theta = sp.frame.cos_theta.value();
  d.sin_theta = sp.frame.sin_theta.value();
  d.adapted = sp.frame.adapted;
  d.H_norm = std::sqrt(d.H[0] * d.H[0] + d.H[1] * d.H[1]);
  d.norm_h_sq = sp.sf.norm_h_sq.value();
  d.gauss_K = sp.sf.gauss_K.value();
  const EtaValue e = eta(sp);
  d.eta_re = e.re;
  d.eta_im = e.im;
  d.eta_abs = e.abs();
  d.shrinker_residual = shrinker_residual(sp).norm;
  if (d.eta_abs >= kEtaEps) {
    d.beta = lagrangian_angle(e);
  }
  if (sp.frame.adapted) {
    d.grad_theta = grad_theta_norm(sp);
    d.dbarJM_sq = dbarJM_norm_sq(sp);
  }
  return d;
}

SurfaceData analyze_point(const ImmersionSpec& spec, ParamPoint p) {
  return summarize(evaluate_point(spec, p));
}

} // namespace kahler
