#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kahler/ambient.hpp"
#include "kahler/catalog.hpp"
#include "kahler/errors.hpp"
#include "kahler/geometry.hpp"
#include "kahler/lagrangian.hpp"
#include "kahler/surface_point.hpp"
#include "support.hpp"

using namespace kahler;

namespace {

constexpr double kPi = std::numbers::pi;

FirstForms<double> ff_at(const ImmersionSpec& s, ParamPoint p) {
  const Vec4<Jet3> x = immersion_jets(s, p);
  AmbientVector xu;
  AmbientVector xv;
  for (std::size_t c = 0; c < 4; ++c) {
    xu[c] = x[c](1, 0);
    xv[c] = x[c](0, 1);
  }
  return first_forms(xu, xv);
}

std::array<AmbientVector, 4> frame_values(const TangentFrame<Jet3>& f) {
  return {values(f.e[0]), values(f.e[1]), values(f.e[2]), values(f.e[3])};
}

double max_orthonormal_defect(const std::array<AmbientVector, 4>& e) {
  double m = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      m = std::max(m, std::abs(dot(e[a], e[b]) - (a == b ? 1.0 : 0.0)));
    }
  }
  return m;
}

ImmersionSpec flat_lagrangian_plane() {
  Domain d;
  d.u = {-1.0, 1.0};
  d.v = {-1.0, 1.0};
  return make_immersion("flat", "test", {}, d, [](auto u, auto v) {
    using T = decltype(u);
    return Vec4<T>{{u, constant_as<T>(0.0), v, constant_as<T>(0.0)}};
  });
}

} // namespace

TEST_CASE("immersion jets") {
  const Vec4<Jet3> x = immersion_jets(clifford_torus(), {0.0, 0.0});
  CHECK(testing::max_abs_diff(values(x), {{1.0, 0.0, 1.0, 0.0}}) == 0.0);
  CHECK(x[1](1, 0) == 1.0);
  CHECK(x[3](0, 1) == 1.0);
  CHECK(x[0](1, 0) == 0.0);

  CHECK_THROWS_AS(immersion_jets(lagrangian_catenoid(), {0.0, 0.0}), DomainError);

  const ImmersionSpec plane = constant_angle_plane(kPi / 6, kPi / 6);
  for (const ParamPoint p : testing::random_points(plane.domain, 5, 1)) {
    const Vec4<Jet3> y = immersion_jets(plane, p);
    for (std::size_t c = 0; c < 4; ++c) {
      for (int a = 0; a <= 3; ++a) {
        for (int b = 0; a + b <= 3; ++b) {
          if (a + b >= 2) {
            CHECK(y[c](a, b) == 0.0);
          }
        }
      }
    }
  }

  Domain d;
  d.u = {-1.0, 1.0};
  d.v = {-1.0, 1.0};
  const ImmersionSpec degenerate = make_immersion("line", "test", {}, d, [](auto u, auto v) {
    using T = decltype(u);
    return Vec4<T>{{u + v, constant_as<T>(0.0), constant_as<T>(0.0), constant_as<T>(0.0)}};
  });
  CHECK_THROWS_AS(immersion_jets(degenerate, {0.2, 0.3}), RankError);
}

TEST_CASE("first fundamental form") {
  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 5, 2)) {
    const FirstForms<double> ff = ff_at(clifford_torus(), p);
    CHECK(ff.g[0][0] == doctest::Approx(1.0));
    CHECK(std::abs(ff.g[0][1]) < 1e-15);
    CHECK(ff.g[1][1] == doctest::Approx(1.0));
    CHECK(ff.sqrt_det_g == doctest::Approx(1.0));

    const FirstForms<double> pt = ff_at(product_torus(2.0, 1.0), p);
    CHECK(pt.g[0][0] == doctest::Approx(4.0));
    CHECK(pt.g[1][1] == doctest::Approx(1.0));
    CHECK(std::abs(pt.g[0][1]) < 1e-15);
  }
  const FirstForms<double> cat = ff_at(lagrangian_catenoid(), {1.0, 0.0});
  CHECK(cat.g[0][0] == doctest::Approx(2.0));
  CHECK(cat.g[1][1] == doctest::Approx(2.0));
  CHECK(std::abs(cat.g[0][1]) < 1e-15);
  CHECK(cat.sqrt_det_g == doctest::Approx(2.0));

  for (const ImmersionSpec& s : testing::default_catalog()) {
    for (const ParamPoint p : testing::random_points(s.domain, 10, 3)) {
      const FirstForms<double> ff = ff_at(s, p);
      CHECK(std::abs(ff.sqrt_det_g * ff.sqrt_det_g - ff.det_g) <= 1e-12 * ff.det_g);
      CHECK(ff.det_g > 0.0);
    }
  }
}

TEST_CASE("Kaehler angle") {
  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 10, 4)) {
    CHECK(std::abs(kahler_cos(ff_at(clifford_torus(), p))) < 1e-14);
  }
  const ImmersionSpec plane = constant_angle_plane(kPi / 6, kPi / 6);
  for (const ParamPoint p : testing::random_points(plane.domain, 10, 5)) {
    CHECK(std::abs(kahler_cos(ff_at(plane, p)) - 0.5) < 1e-12);
  }
  const ImmersionSpec holo = build("holomorphic_graph", {});
  for (const ParamPoint p : testing::random_points(holo.domain, 10, 6)) {
    CHECK(std::abs(kahler_cos(ff_at(holo, p)) - 1.0) < 1e-12);
  }
}

TEST_CASE("adapted frame") {
  const TangentFrame<double> f = adapted_frame(ff_at(clifford_torus(), {0.0, 0.0}));
  CHECK(testing::max_abs_diff(f.e[0], {{0.0, 1.0, 0.0, 0.0}}) < 1e-15);
  CHECK(testing::max_abs_diff(f.e[2], {{-1.0, 0.0, 0.0, 0.0}}) < 1e-15);
  CHECK(f.adapted);

  const TangentFrame<double> g = adapted_frame(ff_at(constant_angle_plane(kPi / 6, kPi / 6), {0.2, -0.4}));
  CHECK(std::abs(dot(apply_J(g.e[0]), g.e[2]) - std::sqrt(3.0) / 2) < 1e-12);

  CHECK_THROWS_AS(adapted_frame(ff_at(build("holomorphic_graph", {}), {0.3, 0.1})), NearComplexError);
  CHECK_THROWS_AS(evaluate_point(build("holomorphic_graph", {}), {0.3, 0.1}, FrameChoice::adapted),
                  NearComplexError);
}

TEST_CASE("adapted frame relations at random points of every catalog surface") {
  // J e1 = c e2 + s e3, J e2 = -c e1 + s e4, and applying J once more:
  // J e3 = -s e1 - c e4, J e4 = -s e2 + c e3.
  for (const ImmersionSpec& s : testing::default_catalog()) {
    CAPTURE(s.name);
    for (const ParamPoint p : testing::random_points(s.domain, 100, 7)) {
      const SurfacePoint sp = evaluate_point(s, p);
      const double c = sp.frame.cos_theta.value();
      const double si = sp.frame.sin_theta.value();
      CHECK(std::abs(c * c + si * si - 1.0) < 1e-12);
      const auto e = frame_values(sp.frame);
      CHECK(max_orthonormal_defect(e) < 1e-10);
      if (si <= 1e-3) {
        CHECK_FALSE(sp.frame.adapted);
        continue;
      }
      REQUIRE(sp.frame.adapted);
      CHECK(testing::max_abs_diff(apply_J(e[0]), e[1] * c + e[2] * si) < 1e-10);
      CHECK(testing::max_abs_diff(apply_J(e[1]), e[0] * (-c) + e[3] * si) < 1e-10);
      CHECK(testing::max_abs_diff(apply_J(e[2]), e[0] * (-si) + e[3] * (-c)) < 1e-10);
      CHECK(testing::max_abs_diff(apply_J(e[3]), e[1] * (-si) + e[2] * c) < 1e-10);
    }
  }
}

TEST_CASE("generic normal frame") {
  const TangentFrame<double> flat = generic_normal_frame(ff_at(flat_lagrangian_plane(), {0.1, 0.2}));
  for (std::size_t a = 2; a < 4; ++a) {
    const double in_span = flat.e[a][1] * flat.e[a][1] + flat.e[a][3] * flat.e[a][3];
    CHECK(in_span == doctest::Approx(1.0));
  }
  for (const ImmersionSpec& s : {build("holomorphic_graph", {}), clifford_torus()}) {
    const TangentFrame<double> f = generic_normal_frame(ff_at(s, {0.0, 0.0}));
    const std::array<AmbientVector, 4> e = {f.e[0], f.e[1], f.e[2], f.e[3]};
    CHECK(max_orthonormal_defect(e) < 1e-12);
    CHECK(det4(e[0], e[1], e[2], e[3]) == doctest::Approx(1.0));
    CHECK_FALSE(f.adapted);
  }
}

TEST_CASE("second fundamental form") {
  const SurfacePoint cl = evaluate_point(clifford_torus(), {0.0, 0.0});
  const auto h = [&](int a, int i, int j) {
    return cl.sf.h[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
        .value();
  };
  CHECK(h(0, 0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(h(0, 0, 1)) < 1e-15);
  CHECK(std::abs(h(0, 1, 1)) < 1e-15);
  CHECK(std::abs(h(1, 0, 0)) < 1e-15);
  CHECK(h(1, 1, 1) == doctest::Approx(1.0));
  CHECK(cl.sf.H[0].value() == doctest::Approx(1.0));
  CHECK(cl.sf.H[1].value() == doctest::Approx(1.0));
  CHECK(cl.sf.norm_h_sq.value() == doctest::Approx(2.0));

  const SurfacePoint pl = evaluate_point(constant_angle_plane(kPi / 6, kPi / 6), {0.3, 0.7});
  CHECK(std::abs(pl.sf.norm_h_sq.value()) < 1e-24);
  CHECK(std::abs(pl.sf.gauss_K.value()) < 1e-12);

  const SurfacePoint cat = evaluate_point(lagrangian_catenoid(), {1.0, 0.0});
  CHECK(norm(values(cat.sf.H_ambient)) < 1e-9);

  for (const ImmersionSpec& s : testing::default_catalog()) {
    for (const ParamPoint p : testing::random_points(s.domain, 20, 8)) {
      const SurfacePoint sp = evaluate_point(s, p);
      double sum = 0.0;
      for (std::size_t a = 0; a < 2; ++a) {
        CHECK(std::abs(sp.sf.h[a][0][1].value() - sp.sf.h[a][1][0].value()) < 1e-10);
        for (std::size_t i = 0; i < 2; ++i) {
          for (std::size_t j = 0; j < 2; ++j) {
            sum += sp.sf.h[a][i][j].value() * sp.sf.h[a][i][j].value();
          }
        }
      }
      CHECK(sp.sf.norm_h_sq.value() == doctest::Approx(sum).epsilon(1e-12));
      const AmbientVector Ha = values(sp.frame.e[2]) * sp.sf.H[0].value() +
                               values(sp.frame.e[3]) * sp.sf.H[1].value();
      CHECK(testing::max_abs_diff(Ha, values(sp.sf.H_ambient)) < 1e-10);
    }
  }

  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 20, 9)) {
    CHECK(std::abs(evaluate_point(product_torus(2.0, 1.0), p).sf.gauss_K.value()) < 1e-10);
    CHECK(std::abs(evaluate_point(product_torus(0.7, 1.9), p).sf.gauss_K.value()) < 1e-10);
  }
}

TEST_CASE("tangent/normal split") {
  const SurfacePoint cl = evaluate_point(clifford_torus(), {0.0, 0.0});
  const TangentFrame<double> f{{values(cl.frame.e[0]), values(cl.frame.e[1]), values(cl.frame.e[2]),
                                values(cl.frame.e[3])},
                               {},
                               0.0,
                               1.0,
                               true};
  const FrameSplit<double> x = tangent_normal_split(values(cl.x), f);
  CHECK(std::abs(x.tangential[0]) < 1e-15);
  CHECK(std::abs(x.tangential[1]) < 1e-15);
  CHECK(x.normal[0] * x.normal[0] + x.normal[1] * x.normal[1] == doctest::Approx(2.0));
  const FrameSplit<double> e1 = tangent_normal_split(f.e[0], f);
  CHECK(e1.tangential[0] == doctest::Approx(1.0));
  CHECK(std::abs(e1.tangential[1]) + std::abs(e1.normal[0]) + std::abs(e1.normal[1]) < 1e-15);

  for (const ParamPoint p : testing::random_points(clifford_torus().domain, 10, 10)) {
    const SurfacePoint pt = evaluate_point(product_torus(2.0, 1.0), p);
    const AmbientVector xt = values(position_tangential(pt));
    const AmbientVector xn = values(position_normal(pt));
    CHECK(norm(xt) < 1e-14);
    CHECK(dot(xn, xn) == doctest::Approx(5.0));
  }

  for (const ImmersionSpec& s : testing::default_catalog()) {
    for (const ParamPoint p : testing::random_points(s.domain, 10, 12)) {
      const SurfacePoint sp = evaluate_point(s, p);
      const auto e = frame_values(sp.frame);
      const AmbientVector v{{0.3, -1.2, 0.5, 2.0}};
      const TangentFrame<double> fd{e, {}, 0.0, 1.0, false};
      const FrameSplit<double> sv = tangent_normal_split(v, fd);
      const AmbientVector back = e[0] * sv.tangential[0] + e[1] * sv.tangential[1] +
                                 e[2] * sv.normal[0] + e[3] * sv.normal[1];
      CHECK(testing::max_abs_diff(back, v) < 1e-10);
    }
  }
}

TEST_CASE("observables do not depend on the tangent frame rotation") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (const ImmersionSpec& s : testing::default_catalog()) {
    CAPTURE(s.name);
    for (const ParamPoint p : testing::random_points(s.domain, 20, 14)) {
      const double phi = ang(rng);
      const SurfacePoint a = evaluate_point(s, p);
      const SurfacePoint b = evaluate_point(s, p, FrameChoice::best, phi);
      CHECK(std::abs(a.frame.cos_theta.value() - b.frame.cos_theta.value()) < 1e-10);
      CHECK(std::abs(a.sf.norm_h_sq.value() - b.sf.norm_h_sq.value()) < 1e-10);
      CHECK(std::abs(norm(values(a.sf.H_ambient)) - norm(values(b.sf.H_ambient))) < 1e-10);
      const EtaValue ea = eta(a);
      const EtaValue eb = eta(b);
      CHECK(std::abs(ea.re - eb.re) < 1e-10);
      CHECK(std::abs(ea.im - eb.im) < 1e-10);
    }
  }
}

TEST_CASE("constant-angle surfaces satisfy the constancy criterion") {
  for (const ImmersionSpec& s : {clifford_torus(), constant_angle_plane(kPi / 6, kPi / 6),
                                 constant_angle_plane(0.4, 0.9), lagrangian_catenoid()}) {
    CAPTURE(s.name);
    for (const ParamPoint p : testing::random_points(s.domain, 30, 15)) {
      const SurfacePoint sp = evaluate_point(s, p);
      REQUIRE(sp.frame.adapted);
      const auto& h3 = sp.sf.h[0];
      const auto& h4 = sp.sf.h[1];
      CHECK(std::abs(h4[0][0].value() - h3[0][1].value()) < 1e-9);
      CHECK(std::abs(h4[0][1].value() - h3[1][1].value()) < 1e-9);
    }
  }
}
