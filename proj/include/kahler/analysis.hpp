#pragma once

// Plain-value summary of one surface point, as reported by `analyze`.

#include <optional>

#include "kahler/surface_point.hpp"

namespace kahler {

struct SurfaceData {
  ParamPoint p;
  AmbientVector x;
  Mat2<double> g{};
  double sqrt_det_g = 0.0;
  double cos_theta = 0.0;
  double sin_theta = 0.0;
  bool adapted = false;
  std::array<Mat2<double>, 2> h{};
  std::array<double, 2> H{};
  double H_norm = 0.0;
  double norm_h_sq = 0.0;
  double gauss_K = 0.0;
  double eta_re = 0.0;
  double eta_im = 0.0;
  double eta_abs = 0.0;
  double shrinker_residual = 0.0;
  /// Empty at complex points (|eta| below cutoff).
  std::optional<double> beta;
  /// Empty where the adapted frame does not exist.
  std::optional<double> grad_theta;
  std::optional<double> dbarJM_sq;
};

SurfaceData summarize(const SurfacePoint& sp);
SurfaceData analyze_point(const ImmersionSpec& spec, ParamPoint p);

} // namespace kahler
