#pragma once

// C^2 = R^4 in the fixed coordinate order (x1, y1, x2, y2), with
// z1 = x1 + i y1 and z2 = x2 + i y2.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

#include "kahler/jet.hpp"

namespace kahler {

template <class T>
struct Vec4 {
  std::array<T, 4> c{};

  constexpr T& operator[](std::size_t i) { return c[i]; }
  constexpr const T& operator[](std::size_t i) const { return c[i]; }

  Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) {
      c[i] += o.c[i];
    }
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) {
      c[i] -= o.c[i];
    }
    return *this;
  }
  template <class S>
  Vec4& operator*=(const S& s) {
    for (std::size_t i = 0; i < 4; ++i) {
      c[i] = c[i] * s;
    }
    return *this;
  }

  friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend Vec4 operator-(Vec4 a) {
    for (std::size_t i = 0; i < 4; ++i) {
      a.c[i] = -a.c[i];
    }
    return a;
  }
  friend Vec4 operator*(Vec4 a, const T& s) { return a *= s; }
  friend Vec4 operator*(const T& s, Vec4 a) { return a *= s; }
};

using AmbientVector = Vec4<double>;

template <class T>
Vec4<T> operator*(Vec4<T> a, double s)
  requires(!std::is_same_v<T, double>)
{
  return a *= s;
}
template <class T>
Vec4<T> operator*(double s, Vec4<T> a)
  requires(!std::is_same_v<T, double>)
{
  return a *= s;
}

template <class T>
T dot(const Vec4<T>& a, const Vec4<T>& b) {
  T s = a[0] * b[0];
  for (std::size_t i = 1; i < 4; ++i) {
    s += a[i] * b[i];
  }
  return s;
}

inline double norm(const AmbientVector& a) { return std::sqrt(dot(a, a)); }

/// Complex structure: J d/dx_i = d/dy_i, J d/dy_i = -d/dx_i.
template <class T>
Vec4<T> apply_J(const Vec4<T>& a) {
  return Vec4<T>{{-a[1], a[0], -a[3], a[2]}};
}

/// Kaehler form, omega(a, b) = <J a, b>.
template <class T>
T kahler_form(const Vec4<T>& a, const Vec4<T>& b) {
  return dot(apply_J(a), b);
}

template <class T>
struct ComplexPair {
  T re;
  T im;
};

/// Holomorphic volume form dz1 ^ dz2 evaluated on (a, b).
template <class T>
ComplexPair<T> holomorphic_volume(const Vec4<T>& a, const Vec4<T>& b) {
  // (a1 + i a2)(b3 + i b4) - (b1 + i b2)(a3 + i a4)
  T re = a[0] * b[2] - a[1] * b[3] - (b[0] * a[2] - b[1] * a[3]);
  T im = a[0] * b[3] + a[1] * b[2] - (b[0] * a[3] + b[1] * a[2]);
  return {re, im};
}

template <class T>
AmbientVector values(const Vec4<T>& a) {
  return AmbientVector{{value_of(a[0]), value_of(a[1]), value_of(a[2]), value_of(a[3])}};
}

/// Determinant of the 4x4 matrix whose rows are a, b, c, d.
double det4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
            const AmbientVector& d);

} // namespace kahler
