#include "kahler/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

constexpr double kBinomial[4][4] = {
    {1, 0, 0, 0},
    {1, 1, 0, 0},
    {1, 2, 1, 0},
    {1, 3, 3, 1},
};

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

} // namespace

Jet3 Jet3::constant(double value) {
  Jet3 j;
  j.c_[0] = value;
  return j;
}

Jet3 Jet3::variable_u(double value) {
  Jet3 j;
  j.c_[0] = value;
  j.c_[index(1, 0)] = 1.0;
  return j;
}

Jet3 Jet3::variable_v(double value) {
  Jet3 j;
  j.c_[0] = value;
  j.c_[index(0, 1)] = 1.0;
  return j;
}

double Jet3::operator()(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) {
    throw std::out_of_range("Jet3 coefficient (" + std::to_string(a) + "," + std::to_string(b) +
                            ") beyond valid order " + std::to_string(order_));
  }
  return c_[index(a, b)];
}

Jet3 Jet3::d_u() const {
  if (order_ < 1) {
    throw std::logic_error("Jet3::d_u on an order-0 jet");
  }
  Jet3 r;
  r.order_ = order_ - 1;
  for (int n = 0; n <= r.order_; ++n) {
    for (int b = 0; b <= n; ++b) {
      r.c_[index(n - b, b)] = c_[index(n - b + 1, b)];
    }
  }
  return r;
}

Jet3 Jet3::d_v() const {
  if (order_ < 1) {
    throw std::logic_error("Jet3::d_v on an order-0 jet");
  }
  Jet3 r;
  r.order_ = order_ - 1;
  for (int n = 0; n <= r.order_; ++n) {
    for (int b = 0; b <= n; ++b) {
      r.c_[index(n - b, b)] = c_[index(n - b, b + 1)];
    }
  }
  return r;
}

Jet3 Jet3::truncated(int order) const {
  Jet3 r = *this;
  r.order_ = std::clamp(order, 0, order_);
  for (int k = index(r.order_ + 1, 0); k < kSize; ++k) {
    r.c_[k] = 0.0;
  }
  return r;
}

Jet3& Jet3::operator+=(const Jet3& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k < kSize; ++k) {
    c_[k] += o.c_[k];
  }
  return *this = truncated(order_);
}

Jet3& Jet3::operator-=(const Jet3& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k < kSize; ++k) {
    c_[k] -= o.c_[k];
  }
  return *this = truncated(order_);
}

Jet3& Jet3::operator*=(const Jet3& o) { return *this = *this * o; }
Jet3& Jet3::operator/=(const Jet3& o) { return *this = *this / o; }

Jet3& Jet3::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet3& Jet3::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet3& Jet3::operator*=(double s) {
  for (double& x : c_) {
    x *= s;
  }
  return *this;
}

Jet3& Jet3::operator/=(double s) {
  if (s == 0.0) {
    throw DomainError("jet division by zero scalar");
  }
  for (double& x : c_) {
    x /= s;
  }
  return *this;
}

Jet3 operator-(Jet3 a) {
  for (double& x : a.c_) {
    x = -x;
  }
  return a;
}

// Leibniz rule on derivative coefficients.
Jet3 operator*(const Jet3& f, const Jet3& g) {
  Jet3 r;
  r.order_ = std::min(f.order_, g.order_);
  for (int n = 0; n <= r.order_; ++n) {
    for (int b = 0; b <= n; ++b) {
      const int a = n - b;
      double sum = 0.0;
      for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
          sum += kBinomial[a][i] * kBinomial[b][j] * f.c_[Jet3::index(i, j)] *
                 g.c_[Jet3::index(a - i, b - j)];
        }
      }
      r.c_[Jet3::index(a, b)] = sum;
    }
  }
  return r;
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

Jet3 operator/(double s, const Jet3& a) { return reciprocal(a) * s; }

Jet3 Jet3::compose(double phi0, double phi1, double phi2, double phi3) const {
  Jet3 delta = *this;
  delta.c_[0] = 0.0;
  const Jet3 delta2 = delta * delta;
  const Jet3 delta3 = delta2 * delta;
  Jet3 r = delta * phi1 + delta2 * (phi2 / 2.0) + delta3 * (phi3 / 6.0);
  r.c_[0] = phi0;
  return r;
}

Jet3 reciprocal(const Jet3& f) {
  const double t = f.value();
  require_finite(t, "reciprocal");
  if (t == 0.0) {
    throw DomainError("division by a jet whose base value is zero");
  }
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  return f.compose(inv, -inv2, 2.0 * inv2 * inv, -6.0 * inv2 * inv2);
}

Jet3 sin(const Jet3& f) {
  const double s = std::sin(f.value());
  const double c = std::cos(f.value());
  return f.compose(s, c, -s, -c);
}

Jet3 cos(const Jet3& f) {
  const double s = std::sin(f.value());
  const double c = std::cos(f.value());
  return f.compose(c, -s, -c, s);
}

Jet3 exp(const Jet3& f) {
  require_finite(f.value(), "exp");
  const double e = std::exp(f.value());
  return f.compose(e, e, e, e);
}

Jet3 sqrt(const Jet3& f) {
  const double t = f.value();
  require_finite(t, "sqrt");
  if (!(t > 0.0)) {
    throw DomainError("sqrt of a jet with non-positive base value " + std::to_string(t));
  }
  const double s = std::sqrt(t);
  const double s3 = s * t;
  return f.compose(s, 0.5 / s, -0.25 / s3, 0.375 / (s3 * t));
}

Jet3 acos(const Jet3& f) {
  const double t = f.value();
  require_finite(t, "acos");
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("acos derivative undefined at |t| >= 1");
  }
  const double q = 1.0 - t * t;
  const double rq = std::sqrt(q);
  return f.compose(std::acos(t), -1.0 / rq, -t / (q * rq), -(1.0 + 2.0 * t * t) / (q * q * rq));
}

Jet3 pow(const Jet3& f, int exponent) {
  if (exponent < 0) {
    return reciprocal(pow(f, -exponent));
  }
  Jet3 result = Jet3::constant(1.0).truncated(f.order());
  Jet3 base = f;
  unsigned n = static_cast<unsigned>(exponent);
  bool first = true;
  while (n != 0) {
    if (n & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1U;
    if (n != 0) {
      base = base * base;
    }
  }
  return result;
}

// atan2(y, x) = theta0 + atan(N / D) with N = x0*y - y0*x and D = x0*x + y0*y;
// N vanishes at the base point and D equals x0^2 + y0^2 > 0 there.
Jet3 atan2(const Jet3& y, const Jet3& x) {
  const double x0 = x.value();
  const double y0 = y.value();
  require_finite(x0, "atan2");
  require_finite(y0, "atan2");
  if (x0 == 0.0 && y0 == 0.0) {
    throw DomainError("atan2 with both arguments zero");
  }
  Jet3 num = y * x0 - x * y0;
  num -= num.value();
  const Jet3 den = x * x0 + y * y0;
  const Jet3 ratio = num / den;
  Jet3 r = ratio.compose(0.0, 1.0, 0.0, -2.0);
  return r + std::atan2(y0, x0);
}

Jet3 jet_lift(double value, LiftRole role) {
  switch (role) {
  case LiftRole::constant:
    return Jet3::constant(value);
  case LiftRole::var_u:
    return Jet3::variable_u(value);
  case LiftRole::var_v:
    return Jet3::variable_v(value);
  }
  throw std::invalid_argument("unknown lift role");
}

Jet3 jet_apply(JetOp op, std::span<const Jet3> args, int exponent) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw std::invalid_argument("jet_apply: expected " + std::to_string(n) + " arguments, got " +
                                  std::to_string(args.size()));
    }
  };
  switch (op) {
  case JetOp::add:
    need(2);
    return args[0] + args[1];
  case JetOp::sub:
    need(2);
    return args[0] - args[1];
  case JetOp::mul:
    need(2);
    return args[0] * args[1];
  case JetOp::div:
    need(2);
    return args[0] / args[1];
  case JetOp::neg:
    need(1);
    return -args[0];
  case JetOp::sin:
    need(1);
    return sin(args[0]);
  case JetOp::cos:
    need(1);
    return cos(args[0]);
  case JetOp::exp:
    need(1);
    return exp(args[0]);
  case JetOp::sqrt:
    need(1);
    return sqrt(args[0]);
  case JetOp::pow_int:
    need(1);
    return pow(args[0], exponent);
  case JetOp::atan2:
    need(2);
    return atan2(args[0], args[1]);
  }
  throw std::invalid_argument("unknown jet operation");
}

double default_fd_step(int order) {
  switch (order) {
  case 0:
  case 1:
    return 1e-6;
  case 2:
    return 1e-4;
  default:
    return 1e-3;
  }
}

namespace {

// Central stencils (offset multiples of h, weight) divided by h^order.
struct Stencil {
  int count;
  int offsets[4];
  double weights[4];
  double divisor_exponent;
};

constexpr Stencil kStencils[4] = {
    {1, {0}, {1.0}, 0},
    {2, {1, -1}, {0.5, -0.5}, 1},
    {3, {1, 0, -1}, {1.0, -2.0, 1.0}, 2},
    {4, {2, 1, -1, -2}, {0.5, -1.0, 1.0, -0.5}, 3},
};

} // namespace

double fd_oracle(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b,
                 double step) {
  if (a < 0 || b < 0 || a + b > 3) {
    throw std::invalid_argument("fd_oracle supports multi-indices up to total order 3");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("fd_oracle step must be positive");
  }
  const Stencil& su = kStencils[a];
  const Stencil& sv = kStencils[b];
  double sum = 0.0;
  for (int i = 0; i < su.count; ++i) {
    for (int j = 0; j < sv.count; ++j) {
      const ParamPoint q{p.u + su.offsets[i] * step, p.v + sv.offsets[j] * step};
      sum += su.weights[i] * sv.weights[j] * f(q);
    }
  }
  return sum / std::pow(step, a + b);
}

double fd_oracle(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b) {
  return fd_oracle(f, p, a, b, default_fd_step(a + b));
}

double fd_oracle_extrapolated(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b,
                              double step) {
  return (4.0 * fd_oracle(f, p, a, b, 0.5 * step) - fd_oracle(f, p, a, b, step)) / 3.0;
}

double fd_oracle_extrapolated(const std::function<double(ParamPoint)>& f, ParamPoint p, int a, int b) {
  return fd_oracle_extrapolated(f, p, a, b, a + b >= 3 ? 4e-3 : 1e-3);
}

} // namespace kahler
