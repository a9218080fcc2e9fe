#include "kahler/lagrangian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kMaxLoopSamples = 1L << 20;

double wrap_angle(double d) { return d - 2.0 * kPi * std::round(d / (2.0 * kPi)); }

void require_angle(const EtaValue& e, double eps) {
  if (!(e.abs() >= eps)) {
    std::ostringstream os;
    os << "|eta| = " << e.abs() << " below cutoff; Lagrangian angle undefined (complex point)";
    throw UndefinedAngleError(os.str());
  }
}

bool close_modulo(double d, double period, bool periodic) {
  constexpr double tol = 1e-9;
  if (std::abs(d) < tol) {
    return true;
  }
  return periodic && std::abs(d - period * std::round(d / period)) < tol;
}

} // namespace

double EtaValue::abs() const { return std::hypot(re, im); }

double EtaValue::theta_from_eta() const { return std::asin(std::min(1.0, abs())); }

EtaValue eta(const FirstForms<double>& ff) {
  const ComplexPair<double> w = holomorphic_volume(ff.x_u, ff.x_v);
  return {w.re / ff.sqrt_det_g, w.im / ff.sqrt_det_g};
}

EtaValue eta(const SurfacePoint& sp) { return {sp.eta.re.value(), sp.eta.im.value()}; }

EtaValue eta_at(const ImmersionSpec& spec, ParamPoint p) {
  const Vec4<Jet3> x = immersion_jets(spec, p);
  AmbientVector x_u;
  AmbientVector x_v;
  for (std::size_t k = 0; k < 4; ++k) {
    x_u[k] = x[k](1, 0);
    x_v[k] = x[k](0, 1);
  }
  return eta(first_forms(x_u, x_v));
}

double lagrangian_angle(const EtaValue& e, double eps) {
  require_angle(e, eps);
  // +0.0 folds a negative-zero imaginary part onto the upper branch.
  const double beta = std::atan2(e.im + 0.0, e.re);
  return beta == -kPi ? kPi : beta;
}

std::array<Jet3, 2> dbeta_jets(const SurfacePoint& sp, double eps) {
  require_angle(eta(sp), eps);
  const Jet3& re = sp.eta.re;
  const Jet3& im = sp.eta.im;
  const Jet3 inv_abs2 = 1.0 / (re * re + im * im);
  return {(re * im.d_u() - im * re.d_u()) * inv_abs2, (re * im.d_v() - im * re.d_v()) * inv_abs2};
}

MaslovSample maslov_form(const SurfacePoint& sp, double eps) {
  const auto db = dbeta_jets(sp, eps);
  return {-db[0].value(), -db[1].value(), lagrangian_angle(eta(sp), eps)};
}

double maslov_closedness(const SurfacePoint& sp, double eps) {
  const auto db = dbeta_jets(sp, eps);
  return -(db[0].d_v().value() - db[1].d_u().value());
}

ParamPoint LoopSpec::at(const Domain& domain, double t) const {
  switch (kind) {
  case Kind::u_loop:
    return domain.to_param(domain.u.lo + t * domain.u.length(), fixed);
  case Kind::v_loop:
    return domain.to_param(fixed, domain.v.lo + t * domain.v.length());
  case Kind::circle:
    return {center.u + radius * std::cos(2.0 * kPi * t), center.v + radius * std::sin(2.0 * kPi * t)};
  case Kind::expr:
    return {eval_value(u_of_t, 0, 0, t), eval_value(v_of_t, 0, 0, t)};
  }
  return {};
}

std::string LoopSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
  case Kind::u_loop:
    os << "u-loop at v=" << fixed;
    break;
  case Kind::v_loop:
    os << "v-loop at u=" << fixed;
    break;
  case Kind::circle:
    os << "circle center (" << center.u << ", " << center.v << ") radius " << radius;
    break;
  case Kind::expr:
    os << "curve u(t)=" << u_of_t.to_string() << ", v(t)=" << v_of_t.to_string();
    break;
  }
  return os.str();
}

LoopSpec parse_loop(const std::string& text, const Domain& domain) {
  LoopSpec loop;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "u-loop" || head == "v-loop") {
    const bool u = head == "u-loop";
    loop.kind = u ? LoopSpec::Kind::u_loop : LoopSpec::Kind::v_loop;
    if (!(u ? domain.periodic_u : domain.periodic_v)) {
      throw ParamError(head + " needs a periodic " + (u ? "u" : "v") + " direction");
    }
    loop.fixed = rest.empty() ? (u ? domain.v.lo : domain.u.lo) : eval_constant(rest);
  } else if (head == "circle") {
    std::vector<double> vals;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      vals.push_back(eval_constant(rest.substr(start, comma - start)));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    if (vals.size() != 3 || !(vals[2] > 0.0)) {
      throw ParamError("circle loop needs center u, center v and a positive radius");
    }
    loop.kind = LoopSpec::Kind::circle;
    loop.center = {vals[0], vals[1]};
    loop.radius = vals[2];
  } else if (head == "expr") {
    const auto semi = rest.find(';');
    if (semi == std::string::npos) {
      throw ParamError("expression loop needs 'U(t);V(t)'");
    }
    const ParseOptions opts{.allow_t = true, .allow_uv = false};
    loop.kind = LoopSpec::Kind::expr;
    loop.u_of_t = parse(rest.substr(0, semi), opts);
    loop.v_of_t = parse(rest.substr(semi + 1), opts);
    const ParamPoint a = loop.at(domain, 0.0);
    const ParamPoint b = loop.at(domain, 1.0);
    const bool cart = domain.chart == SampleChart::cartesian;
    if (!close_modulo(b.u - a.u, domain.u.length(), cart && domain.periodic_u) ||
        !close_modulo(b.v - a.v, domain.v.length(), cart && domain.periodic_v)) {
      throw ParamError("loop endpoints do not coincide (modulo the domain periods)");
    }
  } else {
    throw ParamError("unknown loop '" + text + "'; expected u-loop, v-loop, circle:cu,cv,r or expr:U;V");
  }
  return loop;
}

MaslovIndex maslov_index(const ImmersionSpec& spec, const LoopSpec& loop) {
  if (loop.samples < 16) {
    throw ParamError("loop sample count must be at least 16");
  }
  MaslovIndex out;
  auto arg_at = [&](double t) {
    if (++out.evaluations > kMaxLoopSamples) {
      throw NonConvergenceError("loop refinement exceeded 2^20 samples");
    }
    const EtaValue e = eta_at(spec, loop.at(spec.domain, t));
    require_angle(e, kEtaEps);
    return std::atan2(e.im, e.re);
  };

  struct Piece {
    double t0, a0, t1, a1;
  };
  double total = 0.0;
  const int n = loop.samples;
  double t_prev = 0.0;
  double a_prev = arg_at(0.0);
  std::vector<Piece> stack;
  for (int k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    const double a = arg_at(t);
    stack.push_back({t_prev, a_prev, t, a});
    while (!stack.empty()) {
      const Piece pc = stack.back();
      stack.pop_back();
      const double d = wrap_angle(pc.a1 - pc.a0);
      if (std::abs(d) < kPi / 2) {
        total += d;
        continue;
      }
      const double tm = 0.5 * (pc.t0 + pc.t1);
      if (!(tm > pc.t0 && tm < pc.t1)) {
        throw NonConvergenceError("phase jump does not resolve under refinement (eta discontinuous?)");
      }
      const double am = arg_at(tm);
      stack.push_back({tm, am, pc.t1, pc.a1});
      stack.push_back({pc.t0, pc.a0, tm, am});
    }
    t_prev = t;
    a_prev = a;
  }
  out.raw = -total / (2.0 * kPi);
  out.winding = std::lround(out.raw);
  if (std::abs(out.raw - static_cast<double>(out.winding)) > 1e-6) {
    throw NonConvergenceError("accumulated phase is not a multiple of 2 pi; loop not closed");
  }
  return out;
}

} // namespace kahler
