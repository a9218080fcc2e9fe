#pragma once

// Truncated two-variable Taylor jets used for every derivative in the
// library. A Jet3 stores the partial derivatives d^(a+b) f / du^a dv^b at a
// base point for a + b <= 3, one slot per multi-index.

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <type_traits>

namespace kahler {

/// Surface parameters (u, v) of a chart point.
struct ParamPoint {
  double u = 0.0;
  double v = 0.0;
};

class Jet3 {
public:
  static constexpr int kMaxOrder = 3;
  static constexpr int kSize = 10;

  /// Zero constant, valid to order 3.
  constexpr Jet3() = default;

  static Jet3 constant(double value);
  static Jet3 variable_u(double value);
  static Jet3 variable_v(double value);

  /// Flat slot of multi-index (a, b); slots are grouped by total order.
  static constexpr int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }

  /// d^(a+b) f / du^a dv^b. Throws std::out_of_range beyond the valid order.
  [[nodiscard]] double operator()(int a, int b) const;
  [[nodiscard]] double value() const { return c_[0]; }

  /// Highest total order for which coefficients are exact. Differentiating
  /// lowers it by one; binary operations take the minimum of their inputs.
  [[nodiscard]] int order() const { return order_; }

  [[nodiscard]] Jet3 d_u() const;
  [[nodiscard]] Jet3 d_v() const;
  /// Same coefficients, order lowered to `order` (higher slots zeroed).
  [[nodiscard]] Jet3 truncated(int order) const;

  [[nodiscard]] const std::array<double, kSize>& coefficients() const { return c_; }

  Jet3& operator+=(const Jet3& o);
  Jet3& operator-=(const Jet3& o);
  Jet3& operator*=(const Jet3& o);
  Jet3& operator/=(const Jet3& o);
  Jet3& operator+=(double s);
  Jet3& operator-=(double s);
  Jet3& operator*=(double s);
  Jet3& operator/=(double s);

  friend Jet3 operator-(Jet3 a);
  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator*(const Jet3& a, const Jet3& b);
  friend Jet3 operator/(const Jet3& a, const Jet3& b);
  friend Jet3 operator+(Jet3 a, double s) { return a += s; }
  friend Jet3 operator+(double s, Jet3 a) { return a += s; }
  friend Jet3 operator-(Jet3 a, double s) { return a -= s; }
  friend Jet3 operator-(double s, const Jet3& a) { return -a + s; }
  friend Jet3 operator*(Jet3 a, double s) { return a *= s; }
  friend Jet3 operator*(double s, Jet3 a) { return a *= s; }
  friend Jet3 operator/(Jet3 a, double s) { return a /= s; }
  friend Jet3 operator/(double s, const Jet3& a);

  /// Truncated composition phi(f) from phi and its first three derivatives
  /// at f's base value.
  [[nodiscard]] Jet3 compose(double phi0, double phi1, double phi2, double phi3) const;

private:
  std::array<double, kSize> c_{};
  int order_ = kMaxOrder;

  friend Jet3 reciprocal(const Jet3& f);
};

Jet3 reciprocal(const Jet3& f);
Jet3 sin(const Jet3& f);
Jet3 cos(const Jet3& f);
Jet3 exp(const Jet3& f);
Jet3 sqrt(const Jet3& f);
Jet3 acos(const Jet3& f);
Jet3 pow(const Jet3& f, int exponent);
Jet3 atan2(const Jet3& y, const Jet3& x);

// Scalar counterparts so geometry templates compile for T = double.
inline double value_of(double x) { return x; }
inline double value_of(const Jet3& x) { return x.value(); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double exp(double x) { return std::exp(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double atan2(double y, double x) { return std::atan2(y, x); }

/// `x` as a constant of scalar type T (a plain double, or a constant jet).
template <class T>
T constant_as(double x) {
  if constexpr (std::is_same_v<T, Jet3>) {
    return Jet3::constant(x);
  } else {
    return x;
  }
}

enum class LiftRole { constant, var_u, var_v };

Jet3 jet_lift(double value, LiftRole role);

enum class JetOp { add, sub, mul, div, neg, sin, cos, exp, sqrt, pow_int, atan2 };

/// Table-driven entry point over the elementary operations. `exponent` is
/// only read by pow_int. Throws DomainError on singular arguments and
/// std::invalid_argument on arity mismatch.
Jet3 jet_apply(JetOp op, std::span<const Jet3> args, int exponent = 0);

/// Default central-difference step per derivative order.
double default_fd_step(int order);

/// Central-difference estimate of d^(a+b) f / du^a dv^b at p, O(step^2).
double fd_oracle(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b,
                 double step);
double fd_oracle(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b);

/// Richardson combination (4 D(step/2) - D(step)) / 3 of two fd_oracle
/// estimates, O(step^4). The default steps (1e-3, 4e-3 at order 3) keep
/// third derivatives accurate where plain central differences are limited
/// by round-off, e.g. near the inner rim of the catenoid annulus.
double fd_oracle_extrapolated(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b,
                              double step);
double fd_oracle_extrapolated(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b);

} // namespace kahler
