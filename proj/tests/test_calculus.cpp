#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kahler/calculus.hpp"
#include "kahler/catalog.hpp"
#include "kahler/errors.hpp"
#include "kahler/quadrature.hpp"
#include "support.hpp"

using namespace kahler;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarFieldId field(const std::string& s) { return ScalarFieldId::parse(s); }

ImmersionSpec flat_lagrangian_plane() {
  Domain d;
  d.u = {-1.0, 1.0};
  d.v = {-1.0, 1.0};
  return make_immersion("flat", "test", {}, d, [](auto u, auto v) {
    using T = decltype(u);
    return Vec4<T>{{u, constant_as<T>(0.0), v, constant_as<T>(0.0)}};
  });
}

// (1/sqrt g) d_i (sqrt g g^ij d_j f) with g from central differences of the
// position and the outer divergence by central differences of the flux.
double fd_laplace_beltrami(const ImmersionSpec& s, const std::function<std::array<double, 2>(ParamPoint)>& df,
                           ParamPoint p) {
  const auto metric = [&](ParamPoint q, double& sqrt_g, std::array<std::array<double, 2>, 2>& g_inv) {
    const double h = 1e-5;
    AmbientVector xu;
    AmbientVector xv;
    const AmbientVector a = s.position({q.u + h, q.v});
    const AmbientVector b = s.position({q.u - h, q.v});
    const AmbientVector c = s.position({q.u, q.v + h});
    const AmbientVector d = s.position({q.u, q.v - h});
    for (std::size_t k = 0; k < 4; ++k) {
      xu[k] = (a[k] - b[k]) / (2 * h);
      xv[k] = (c[k] - d[k]) / (2 * h);
    }
    const double E = dot(xu, xu);
    const double F = dot(xu, xv);
    const double G = dot(xv, xv);
    const double det = E * G - F * F;
    sqrt_g = std::sqrt(det);
    g_inv = {{{G / det, -F / det}, {-F / det, E / det}}};
  };
  const auto flux = [&](ParamPoint q, int i) {
    double sg = 0.0;
    std::array<std::array<double, 2>, 2> gi{};
    metric(q, sg, gi);
    const auto d = df(q);
    return sg * (gi[static_cast<std::size_t>(i)][0] * d[0] + gi[static_cast<std::size_t>(i)][1] * d[1]);
  };
  const double H = 1e-3;
  const double div = (flux({p.u + H, p.v}, 0) - flux({p.u - H, p.v}, 0)) / (2 * H) +
                     (flux({p.u, p.v + H}, 1) - flux({p.u, p.v - H}, 1)) / (2 * H);
  double sg = 0.0;
  std::array<std::array<double, 2>, 2> gi{};
  metric(p, sg, gi);
  return div / sg;
}

// 4x4 matrix of J_M built from the adapted frame: J_M e1 = e2, J_M e2 = -e1,
// J_M e3 = -e4, J_M e4 = e3.
std::array<std::array<double, 4>, 4> jm_matrix(const ImmersionSpec& s, ParamPoint p) {
  const SurfacePoint sp = evaluate_point(s, p, FrameChoice::adapted);
  const AmbientVector e1 = values(sp.frame.e[0]);
  const AmbientVector e2 = values(sp.frame.e[1]);
  const AmbientVector e3 = values(sp.frame.e[2]);
  const AmbientVector e4 = values(sp.frame.e[3]);
  std::array<std::array<double, 4>, 4> m{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      m[r][c] = e2[r] * e1[c] - e1[r] * e2[c] - e4[r] * e3[c] + e3[r] * e4[c];
    }
  }
  return m;
}

double brute_force_dbarJM_sq(const ImmersionSpec& s, ParamPoint p) {
  const SurfacePoint sp = evaluate_point(s, p, FrameChoice::adapted);
  const double h = 1e-5;
  const auto mu_p = jm_matrix(s, {p.u + h, p.v});
  const auto mu_m = jm_matrix(s, {p.u - h, p.v});
  const auto mv_p = jm_matrix(s, {p.u, p.v + h});
  const auto mv_m = jm_matrix(s, {p.u, p.v - h});
  double total = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const double a = sp.frame.E[i][0].value();
    const double b = sp.frame.E[i][1].value();
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        const double d = a * (mu_p[r][c] - mu_m[r][c]) / (2 * h) + b * (mv_p[r][c] - mv_m[r][c]) / (2 * h);
        total += d * d;
      }
    }
  }
  return total;
}

} // namespace

TEST_CASE("field jets") {
  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 10, 1)) {
    const Jet3 c = field_jet2(clifford_torus(), field("cos_theta"), p);
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; a + b <= 2; ++b) {
        CHECK(std::abs(c(a, b)) < 1e-14);
      }
    }
    const Jet3 x2 = field_jet2(product_torus(2.0, 1.0), field("abs_x_sq"), p);
    CHECK(x2(0, 0) == doctest::Approx(5.0));
    CHECK(std::abs(x2(1, 0)) < 1e-14);
    CHECK(std::abs(x2(0, 1)) < 1e-14);
  }
  CHECK(field_jet2(lagrangian_catenoid(), field("abs_x_sq"), {1.0, 0.0})(0, 0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(field_jet2(build("holomorphic_graph", {}), field("theta"), {0.1, 0.1}), NearComplexError);
  CHECK(field("cos_theta").kind == ScalarFieldId::Kind::cos_theta);
  CHECK(field("sin(u)").kind == ScalarFieldId::Kind::custom);
}

TEST_CASE("surface gradient") {
  const SurfaceGradient z = surface_gradient(perturbed_torus({0.1, 0.1, 0.1, 0.1}), field("3"), {0.4, 1.1});
  CHECK(z.norm_sq == 0.0);
  CHECK(norm(z.ambient) == 0.0);

  const SurfaceGradient g = surface_gradient(clifford_torus(), field("u + v"), {0.4, 1.1});
  CHECK(g.frame[0] == doctest::Approx(1.0));
  CHECK(g.frame[1] == doctest::Approx(1.0));
  CHECK(g.norm_sq == doctest::Approx(2.0));

  // grad cos = -sin grad theta = -sin sum_i (h^4_{1i} - h^3_{2i}) e_i
  const ImmersionSpec pt = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  for (const ParamPoint p : testing::random_points(pt.domain, 30, 2)) {
    const SurfacePoint sp = evaluate_point(pt, p);
    REQUIRE(sp.frame.adapted);
    const SurfaceGradient gc = surface_gradient(sp, field_jet(sp, field("cos_theta")));
    const double s = sp.frame.sin_theta.value();
    for (std::size_t i = 0; i < 2; ++i) {
      const double expect = -s * (sp.sf.h[1][0][i].value() - sp.sf.h[0][1][i].value());
      CHECK(std::abs(gc.frame[i] - expect) < 1e-8);
    }
  }
}

TEST_CASE("Laplace-Beltrami") {
  CHECK(laplace_beltrami(flat_lagrangian_plane(), field("u^2 + v^2"), {0.3, -0.2}) == doctest::Approx(4.0));
  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 10, 3)) {
    CHECK(laplace_beltrami(clifford_torus(), field("sin(u)"), p) == doctest::Approx(-std::sin(p.u)));
  }
  const ImmersionSpec cat = lagrangian_catenoid();
  const auto du = [](ParamPoint) { return std::array<double, 2>{1.0, 0.0}; };
  for (const ParamPoint p : {ParamPoint{1.0, 0.0}, ParamPoint{0.6, 0.5}, ParamPoint{-1.2, 0.9}}) {
    const double lb = laplace_beltrami(cat, field("u"), p);
    CHECK(std::abs(lb - fd_laplace_beltrami(cat, du, p)) < 1e-5);
  }
  const ImmersionSpec pt = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  const auto dsin = [](ParamPoint q) { return std::array<double, 2>{std::cos(q.u) * std::cos(q.v), -std::sin(q.u) * std::sin(q.v)}; };
  for (const ParamPoint p : testing::random_points(pt.domain, 5, 4)) {
    const double lb = laplace_beltrami(pt, field("sin(u)*cos(v)"), p);
    CHECK(std::abs(lb - fd_laplace_beltrami(pt, dsin, p)) < 1e-5);
  }
}

TEST_CASE("drift Laplacian") {
  for (const ImmersionSpec& s : testing::default_catalog()) {
    CHECK(drift_laplacian(s, field("2.5"), testing::random_points(s.domain, 1, 5)[0]) == 0.0);
  }
  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 10, 6)) {
    CHECK(std::abs(drift_laplacian(clifford_torus(), field("cos_theta"), p)) < 1e-14);
    // x is normal on a product torus, so only Lap sin(u) = -sin(u)/r^2 remains
    const double L = drift_laplacian(product_torus(2.0, 1.0), field("sin(u)"), p);
    CHECK(L == doctest::Approx(-std::sin(p.u) / 4.0).epsilon(1e-12));
    const auto d = [](ParamPoint q) { return std::array<double, 2>{std::cos(q.u), 0.0}; };
    CHECK(std::abs(L - fd_laplace_beltrami(product_torus(2.0, 1.0), d, p)) < 1e-5);
  }
}

TEST_CASE("drift Laplacian equals its divergence form") {
  for (const ImmersionSpec& s : testing::default_catalog()) {
    CAPTURE(s.name);
    for (const ParamPoint p : testing::random_points(s.domain, 20, 7)) {
      const SurfacePoint sp = evaluate_point(s, p);
      for (const char* f : {"cos_theta", "cos2_theta", "abs_x_sq", "sin(u)*v"}) {
        const Jet3 fj = field_jet(sp, field(f));
        CHECK(std::abs(drift_laplacian(sp, fj) - drift_laplacian_divergence_form(sp, fj)) < 1e-8);
      }
    }
  }
}

TEST_CASE("|D J_M|^2") {
  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 10, 8)) {
    CHECK(std::abs(dbarJM_norm_sq(evaluate_point(clifford_torus(), p)) - 8.0) < 1e-9);
  }
  CHECK(std::abs(dbarJM_norm_sq(evaluate_point(constant_angle_plane(kPi / 6, kPi / 6), {0.2, 0.1}))) < 1e-20);
  CHECK_THROWS_AS(dbarJM_norm_sq(evaluate_point(build("holomorphic_graph", {}), {0.2, 0.1})), FrameError);

  for (const ImmersionSpec& s : {lagrangian_catenoid(), clifford_torus(), perturbed_torus({0.1, 0.1, 0.1, 0.1}),
                                 constant_angle_plane(0.3, 0.5)}) {
    CAPTURE(s.name);
    const ParamPoint p = s.name == "lagrangian_catenoid" ? ParamPoint{1.0, 0.0} : ParamPoint{0.7, 2.1};
    const double formula = dbarJM_norm_sq(evaluate_point(s, p));
    CHECK(std::abs(formula - brute_force_dbarJM_sq(s, p)) < 1e-6);
  }
}

TEST_CASE("|D J_M|^2 vanishes exactly when the frame conditions hold") {
  // constant-angle plane: all h vanish, so both conditions hold
  const SurfacePoint pl = evaluate_point(constant_angle_plane(0.2, 0.9), {0.5, -0.5});
  CHECK(dbarJM_norm_sq(pl) == 0.0);
  // Clifford torus violates h^4_{2i} = -h^3_{1i}
  const SurfacePoint cl = evaluate_point(clifford_torus(), {0.5, -0.5});
  CHECK(dbarJM_norm_sq(cl) > 1.0);
}

TEST_CASE("connection coefficients") {
  const ConnectionData flat = connection_data(flat_lagrangian_plane(), {0.1, 0.3});
  for (int A = 0; A < 4; ++A) {
    for (int B = 0; B < 4; ++B) {
      for (int i = 0; i < 2; ++i) {
        CHECK(flat(A, B, i) == 0.0);
      }
    }
  }
  CHECK(connection_data(clifford_torus(), {0.0, 0.0})(0, 2, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(connection_data(build("holomorphic_graph", {}), {0.1, 0.1}), NearComplexError);

  for (const ImmersionSpec& s : testing::default_catalog()) {
    for (const ParamPoint p : testing::random_points(s.domain, 20, 9)) {
      const SurfacePoint sp = evaluate_point(s, p);
      const ConnectionData G = frame_connection(sp);
      for (int A = 0; A < 4; ++A) {
        for (int B = 0; B < 4; ++B) {
          for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(G(A, B, i) + G(B, A, i)) < 1e-9);
          }
        }
      }
      // <D_{e_i} e_j, e_a> is the second fundamental form
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t i = 0; i < 2; ++i) {
          for (std::size_t j = 0; j < 2; ++j) {
            CHECK(std::abs(G(static_cast<int>(j), static_cast<int>(a + 2), static_cast<int>(i)) -
                           sp.sf.h[a][i][j].value()) < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("Gaussian-weighted integrals") {
  const ScalarFieldId one = field("1");
  const QuadratureGrid g = make_grid(clifford_torus().domain, 64, 64);
  CHECK(std::abs(weighted_integral(clifford_torus(), one, g) - 4 * kPi * kPi * std::exp(-1.0)) < 1e-8);
  for (const auto& [r, s] : {std::pair{2.0, 1.0}, std::pair{0.5, 1.5}, std::pair{1.3, 0.8}}) {
    const double exact = 4 * kPi * kPi * r * s * std::exp(-(r * r + s * s) / 2);
    CHECK(std::abs(weighted_integral(product_torus(r, s), one, g) - exact) < 1e-8);
  }
  CHECK(std::abs(weighted_integral(clifford_torus(), [](const SurfacePoint& sp) {
                   return drift_laplacian(sp, field_jet(sp, ScalarFieldId::parse("cos_theta")));
                 }, g)) < 1e-10);
}

TEST_CASE("trapezoid rule converges spectrally on closed surfaces") {
  const ImmersionSpec pt = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  const double a = weighted_integral(pt, field("1"), make_grid(pt.domain, 64, 64));
  const double b = weighted_integral(pt, field("1"), make_grid(pt.domain, 128, 128));
  CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("truncated catenoid integrals converge with the radius") {
  const ImmersionSpec cat = lagrangian_catenoid();
  double prev = 0.0;
  double prev_change = 1e300;
  for (double R : {2.0, 4.0, 6.0, 8.0}) {
    const Domain d = cat.truncate(R);
    const double F = weighted_integral(cat, field("1"), make_grid(d, 96, 32));
    const double change = std::abs(F - prev);
    CHECK(F > prev);
    CHECK(change < prev_change);
    prev_change = change;
    prev = F;
  }
  CHECK(prev_change < 1e-6);
}

TEST_CASE("integration by parts") {
  const QuadratureGrid g32 = make_grid(clifford_torus().domain, 32, 32);
  CHECK(stokes_residual(clifford_torus(), field("1"), field("cos_theta"), g32) < 1e-10);
  const ImmersionSpec pt = perturbed_torus({0.1, 0.1, 0.1, 0.1});
  CHECK(stokes_residual(pt, field("sin(u)"), field("cos(v)"), make_grid(pt.domain, 96, 96)) < 1e-7);
  const QuadratureGrid g64 = make_grid(clifford_torus().domain, 64, 64);
  CHECK(stokes_residual(product_torus(2.0, 1.0), field("1"), field("sin(2*u)"), g64) < 1e-8);
  CHECK(stokes_residual(pt, field("abs_x_sq"), field("cos_theta"), make_grid(pt.domain, 96, 96)) < 1e-7);
  const ImmersionSpec cat = lagrangian_catenoid();
  CHECK_THROWS_AS(stokes_residual(cat, field("1"), field("u"), make_grid(cat.domain, 8, 8)),
                  UnsupportedDomainError);
}

TEST_CASE("gradient of theta vanishes on constant-angle surfaces") {
  for (const ImmersionSpec& s : {clifford_torus(), constant_angle_plane(0.3, 0.5), lagrangian_catenoid()}) {
    for (const ParamPoint p : testing::random_points(s.domain, 10, 10)) {
      CHECK(grad_theta_norm(evaluate_point(s, p)) < 1e-10);
    }
  }
}
