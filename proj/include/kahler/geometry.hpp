#pragma once

// Per-point surface geometry: first fundamental form, tangent/normal frames,
// Kaehler angle, second fundamental form.
//
// Every routine is a template over the scalar type T. With T = double the
// result is the plain value; with T = Jet3 (inputs being jets of x_u, x_v,
// ...) the result carries exact derivatives of the same quantity along the
// surface, which is how frame derivatives and connection forms are computed.

#include <algorithm>
#include <array>
#include <cmath>

#include "kahler/ambient.hpp"
#include "kahler/errors.hpp"
#include "kahler/immersion.hpp"
#include "kahler/jet.hpp"

namespace kahler {

template <class T>
using Mat2 = std::array<std::array<T, 2>, 2>;

/// Cutoff on sin(theta) below which the adapted frame is refused.
inline constexpr double kAdaptEps = 1e-8;

template <class T>
struct FirstForms {
  Vec4<T> x_u;
  Vec4<T> x_v;
  Mat2<T> g;
  Mat2<T> g_inv;
  T det_g;
  T sqrt_det_g;
};

template <class T>
FirstForms<T> first_forms(const Vec4<T>& x_u, const Vec4<T>& x_v) {
  FirstForms<T> ff;
  ff.x_u = x_u;
  ff.x_v = x_v;
  ff.g[0][0] = dot(x_u, x_u);
  ff.g[0][1] = dot(x_u, x_v);
  ff.g[1][0] = ff.g[0][1];
  ff.g[1][1] = dot(x_v, x_v);
  ff.det_g = ff.g[0][0] * ff.g[1][1] - ff.g[0][1] * ff.g[0][1];
  if (!(value_of(ff.det_g) >= kRankCutoff)) {
    throw RankError("induced metric is degenerate (Gram determinant below cutoff)");
  }
  ff.sqrt_det_g = sqrt(ff.det_g);
  const T inv_det = 1.0 / ff.det_g;
  ff.g_inv[0][0] = ff.g[1][1] * inv_det;
  ff.g_inv[0][1] = -ff.g[0][1] * inv_det;
  ff.g_inv[1][0] = ff.g_inv[0][1];
  ff.g_inv[1][1] = ff.g[0][0] * inv_det;
  return ff;
}

/// Orthonormal frame along the surface. e[0], e[1] are tangent (x_* e_1,
/// x_* e_2), e[2], e[3] normal (e_3, e_4). E holds the coordinate
/// coefficients of the tangent vectors: e_i = E[i][0] d/du + E[i][1] d/dv.
template <class T>
struct TangentFrame {
  std::array<Vec4<T>, 4> e;
  Mat2<T> E;
  T cos_theta;
  T sin_theta;
  bool adapted = false;
};

namespace detail {

// Gram-Schmidt: e_1 along x_u, e_2 completes it with dV(e_1, e_2) > 0. The
// pair is then rotated by `phi` (zero for the canonical frame).
template <class T>
void tangent_basis(const FirstForms<T>& ff, TangentFrame<T>& f, double phi) {
  const T len_u = sqrt(ff.g[0][0]);
  const T inv_u = 1.0 / len_u;
  const Vec4<T> e1 = ff.x_u * inv_u;
  const T proj = dot(ff.x_v, e1);
  const Vec4<T> w = ff.x_v - e1 * proj;
  const T inv_n = 1.0 / sqrt(dot(w, w));
  const Vec4<T> e2 = w * inv_n;
  const T zero = constant_as<T>(0.0);
  Mat2<T> E{{{inv_u, zero}, {-(proj * inv_u) * inv_n, inv_n}}};
  if (phi == 0.0) {
    f.e[0] = e1;
    f.e[1] = e2;
    f.E = E;
    return;
  }
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  f.e[0] = e1 * c + e2 * s;
  f.e[1] = e2 * c - e1 * s;
  for (int k = 0; k < 2; ++k) {
    f.E[0][k] = E[0][k] * c + E[1][k] * s;
    f.E[1][k] = E[1][k] * c - E[0][k] * s;
  }
}

} // namespace detail

/// cos(theta) = <J e_1, e_2> for the Gram-Schmidt tangent frame.
template <class T>
T kahler_cos(const FirstForms<T>& ff) {
  TangentFrame<T> f;
  detail::tangent_basis(ff, f, 0.0);
  T c = kahler_form(f.e[0], f.e[1]);
  if constexpr (std::is_same_v<T, double>) {
    if (std::abs(c) > 1.0 && std::abs(c) <= 1.0 + 1e-14) {
      c = std::copysign(1.0, c);
    }
  }
  return c;
}

/// Frame with J e_1 = cos e_2 + sin e_3 and J e_2 = -cos e_1 + sin e_4.
/// Throws NearComplexError when sin(theta) < eps. `phi` rotates (e_1, e_2)
/// before the normals are built.
template <class T>
TangentFrame<T> adapted_frame(const FirstForms<T>& ff, double eps = kAdaptEps, double phi = 0.0) {
  TangentFrame<T> f;
  detail::tangent_basis(ff, f, phi);
  const Vec4<T> je1 = apply_J(f.e[0]);
  const Vec4<T> je2 = apply_J(f.e[1]);
  f.cos_theta = dot(je1, f.e[1]);
  const Vec4<T> w = je1 - f.e[1] * f.cos_theta;
  const T s2 = dot(w, w);
  if (!(value_of(s2) >= eps * eps)) {
    throw NearComplexError("sin(theta) below the adapted-frame cutoff; tangent plane is nearly complex");
  }
  f.sin_theta = sqrt(s2);
  const T inv_s = 1.0 / f.sin_theta;
  f.e[2] = w * inv_s;
  f.e[3] = (je2 + f.e[0] * f.cos_theta) * inv_s;
  f.adapted = true;
  return f;
}

/// Orthonormal normal pair by Gram-Schmidt on the ambient basis, oriented
/// so that det(e_1, e_2, e_3, e_4) = +1. Always succeeds.
template <class T>
TangentFrame<T> generic_normal_frame(const FirstForms<T>& ff, double phi = 0.0) {
  TangentFrame<T> f;
  detail::tangent_basis(ff, f, phi);
  std::array<Vec4<T>, 4> cand;
  for (std::size_t k = 0; k < 4; ++k) {
    Vec4<T> b;
    for (std::size_t i = 0; i < 4; ++i) {
      b[i] = constant_as<T>(i == k ? 1.0 : 0.0);
    }
    cand[k] = b - f.e[0] * f.e[0][k] - f.e[1] * f.e[1][k];
  }
  auto pick = [&cand](std::array<bool, 4>& used) {
    std::size_t best = 4;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double n = value_of(dot(cand[k], cand[k]));
      if (!used[k] && n > best_norm) {
        best = k;
        best_norm = n;
      }
    }
    used[best] = true;
    return best;
  };
  std::array<bool, 4> used{};
  const std::size_t k3 = pick(used);
  f.e[2] = cand[k3] * (1.0 / sqrt(dot(cand[k3], cand[k3])));
  for (std::size_t k = 0; k < 4; ++k) {
    cand[k] = cand[k] - f.e[2] * dot(cand[k], f.e[2]);
  }
  const std::size_t k4 = pick(used);
  f.e[3] = cand[k4] * (1.0 / sqrt(dot(cand[k4], cand[k4])));
  if (det4(values(f.e[0]), values(f.e[1]), values(f.e[2]), values(f.e[3])) < 0.0) {
    f.e[3] = -f.e[3];
  }
  f.cos_theta = kahler_form(f.e[0], f.e[1]);
  const Vec4<T> w = apply_J(f.e[0]) - f.e[1] * f.cos_theta;
  const T s2 = dot(w, w);
  if (value_of(s2) >= kAdaptEps * kAdaptEps) {
    f.sin_theta = sqrt(s2);
  } else {
    f.sin_theta = constant_as<T>(std::sqrt(std::max(0.0, value_of(s2))));
  }
  f.adapted = false;
  return f;
}

/// Adapted frame where it exists, the generic one otherwise.
template <class T>
TangentFrame<T> best_frame(const FirstForms<T>& ff, double phi = 0.0) {
  try {
    return adapted_frame(ff, kAdaptEps, phi);
  } catch (const NearComplexError&) {
    return generic_normal_frame(ff, phi);
  }
}

/// Coordinate Hessian of x: hess[k][l] = d^2 x / du_k du_l.
template <class T>
using Hessian = std::array<std::array<Vec4<T>, 2>, 2>;

template <class T>
struct SecondForms {
  /// h[a][i][j] = h^{a+3}_{i+1, j+1} = <d^2 x(e_i, e_j), e_{a+3}>.
  std::array<Mat2<T>, 2> h;
  /// Mean curvature components (H^3, H^4) in the normal frame.
  std::array<T, 2> H;
  Vec4<T> H_ambient;
  T norm_h_sq;
  T gauss_K;
};

template <class T>
SecondForms<T> second_forms(const Hessian<T>& hess, const TangentFrame<T>& f) {
  SecondForms<T> sf;
  sf.norm_h_sq = constant_as<T>(0.0);
  sf.gauss_K = constant_as<T>(0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    Mat2<T> coord;
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t l = 0; l < 2; ++l) {
        coord[k][l] = dot(hess[k][l], f.e[2 + a]);
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        T s = f.E[i][0] * f.E[j][0] * coord[0][0];
        s += f.E[i][0] * f.E[j][1] * coord[0][1];
        s += f.E[i][1] * f.E[j][0] * coord[1][0];
        s += f.E[i][1] * f.E[j][1] * coord[1][1];
        sf.h[a][i][j] = s;
      }
    }
    const Mat2<T>& h = sf.h[a];
    sf.H[a] = h[0][0] + h[1][1];
    sf.norm_h_sq += h[0][0] * h[0][0] + h[0][1] * h[0][1] + h[1][0] * h[1][0] + h[1][1] * h[1][1];
    sf.gauss_K += h[0][0] * h[1][1] - h[0][1] * h[0][1];
  }
  sf.H_ambient = f.e[2] * sf.H[0] + f.e[3] * sf.H[1];
  return sf;
}

template <class T>
struct FrameSplit {
  std::array<T, 2> tangential;
  std::array<T, 2> normal;
};

template <class T>
FrameSplit<T> tangent_normal_split(const Vec4<T>& vec, const TangentFrame<T>& f) {
  return {{dot(vec, f.e[0]), dot(vec, f.e[1])}, {dot(vec, f.e[2]), dot(vec, f.e[3])}};
}

/// Derivative of a scalar jet along e_i: e_i(f) = E[i][0] f_u + E[i][1] f_v.
inline Jet3 frame_derivative(const TangentFrame<Jet3>& f, std::size_t i, const Jet3& q) {
  return f.E[i][0] * q.d_u() + f.E[i][1] * q.d_v();
}

inline Vec4<Jet3> frame_derivative(const TangentFrame<Jet3>& f, std::size_t i,
                                   const Vec4<Jet3>& q) {
  Vec4<Jet3> r;
  for (std::size_t k = 0; k < 4; ++k) {
    r[k] = frame_derivative(f, i, q[k]);
  }
  return r;
}

} // namespace kahler
