#include <doctest.h>

#include <cmath>

#include "helixlab/catalog.hpp"
#include "helixlab/helix.hpp"

using namespace helixlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("registry contents and ordering") {
  auto names = catalog_names();
  REQUIRE(names.size() >= 6);
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const char* expected : {"plane", "cylinder", "cone", "sphere",
                               "torus_product", "product_s1_r3"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
  CHECK_THROWS_AS(catalog_get("moebius"), UnknownEntry);
  CHECK_THROWS_AS(catalog_get("cone", {{"gamma", 1.0}}), BadParameter);
  CHECK_THROWS_AS(catalog_get("cone", {{"beta", 2.0}}), BadParameter);
  CHECK_THROWS_AS(catalog_get("cone", {{"beta", 0.0}}), BadParameter);
}

TEST_CASE("entry ground truths") {
  CHECK(catalog_get("plane").known_helix_space->dim() == 3);
  CHECK(catalog_get("cylinder").known_helix_space->dim() == 1);
  CHECK(catalog_get("sphere").known_helix_space->dim() == 0);
  CHECK(catalog_get("torus_product").known_helix_space->dim() == 2);
  CHECK(catalog_get("product_s1_r3").known_helix_space->dim() == 3);

  CatalogEntry cone = catalog_get("cone", {{"beta", kPi / 3.0}});
  CHECK(cone.parameters.at("beta") == doctest::Approx(kPi / 3.0));
  CHECK(cone.known_helix_space->dim() == 1);
  CHECK(std::abs(cone.known_helix_space->basis.col(0)[2]) == doctest::Approx(1.0));
}

TEST_CASE("estimate_helix_space reproduces every known space") {
  for (const std::string& name : catalog_names()) {
    CatalogEntry e = catalog_get(name);
    REQUIRE(e.known_helix_space.has_value());
    HelixSpace est = estimate_helix_space(*e.patch, e.samples(64), 1e-6);
    CHECK(est.basis.dim() == e.known_helix_space->dim());
    if (est.basis.dim() > 0) {
      Mat overlap = est.basis.basis.transpose() * e.known_helix_space->basis;
      CHECK(std::abs(overlap.determinant()) >= 0.999);
    }
  }
}

TEST_CASE("normal fields are unit normals") {
  for (const char* name : {"plane", "cylinder", "cone", "sphere",
                           "torus_product", "product_s1_r3"}) {
    CatalogEntry e = catalog_get(name);
    REQUIRE(e.normal_field);
    for (const Vec& u : e.samples(16)) {
      Vec n = e.normal_field(u);
      CHECK(std::abs(n.norm() - 1.0) < 1e-12);
      PointFrame f = point_frame(*e.patch, u);
      CHECK((f.P_tan * n).norm() < 1e-9);
    }
  }
}

TEST_CASE("curve fixtures are unit speed and stay in the chart domain") {
  for (const std::string& name : catalog_names()) {
    CatalogEntry e = catalog_get(name);
    for (const CurveSpec& spec : e.curves) {
      ParamCurve pc = e.curve(spec.name);
      AmbientCurve amb = pc.ambient();
      for (double t : sample_times(pc.t0, pc.t1, 9)) {
        CHECK(std::abs(curve_derivative(amb, t, 1).norm() - 1.0) < 1e-8);
        CHECK(e.patch->domain().contains(pc.u_at(t)));
      }
    }
  }
  CatalogEntry cyl = catalog_get("cylinder");
  CHECK_THROWS_AS(cyl.curve("nope"), UnknownEntry);
  CHECK_THROWS_AS(cyl.curve("geodesic", {{"bogus", 1.0}}), BadParameter);
  CHECK_THROWS_AS(cyl.curve("geodesic", {{"a", 2.0}}), BadParameter);
}

TEST_CASE("parse_immersion basics") {
  auto cyl = parse_immersion("cos(u1), sin(u1), u2", 2, 3);
  Vec p = cyl->eval(v2(0.0, 1.0));
  CHECK((p - (Vec(3) << 1, 0, 1).finished()).norm() < 1e-15);

  auto saddle = parse_immersion("u1, u2, u1*u2", 2, 3);
  CHECK((saddle->eval(v2(1, 2)) - (Vec(3) << 1, 2, 2).finished()).norm() < 1e-15);

  CHECK_THROWS_AS(parse_immersion("u1, u2", 2, 3), ComponentCountMismatch);
  CHECK_THROWS_AS(parse_immersion("cos(u1, u2), 0, 0", 2, 3), ArityError);
  CHECK_THROWS_AS(parse_immersion("u1, u2, u3", 2, 3), UnknownIdentifier);
  CHECK_THROWS_AS(parse_immersion("u1, u2, 0", 3, 2), BadParameter);
}

TEST_CASE("parsed cylinder agrees with the built-in entry") {
  CatalogEntry builtin = catalog_get("cylinder");
  auto parsed = parse_immersion("cos(u1), sin(u1), u2", 2, 3, {},
                                Box::cube(2, -16.0, 16.0));
  for (const Vec& u : builtin.samples(16)) {
    PointFrame fb = point_frame(*builtin.patch, u);
    PointFrame fp = point_frame(*parsed, u);
    CHECK((fb.P_tan - fp.P_tan).norm() < 1e-8);
    Vec n = builtin.normal_field(u);
    ShapeOperatorData sb = shape_operator(*builtin.patch, u, n);
    ShapeOperatorData sp = shape_operator(*parsed, u, n);
    CHECK((sb.A - sp.A).norm() < 1e-8);
    CHECK((sb.principal_curvatures - sp.principal_curvatures).norm() < 1e-8);
  }
}

TEST_CASE("spiral45 mixes the principal directions at 45 degrees") {
  CatalogEntry cone = catalog_get("cone");
  ParamCurve sp = cone.curve("spiral45");
  AmbientCurve amb = sp.ambient();
  for (double t : sample_times(0.05, 1.4, 7)) {
    Vec T = curve_derivative(amb, t, 1);
    Vec u = sp.u_at(t);
    // angle against the circle direction t1 = normalized d f / du1
    Mat J = cone.patch->jacobian_at(u);
    double c = std::abs(T.dot(J.col(0).normalized()));
    CHECK(std::abs(c - std::cos(kPi / 4.0)) < 1e-9);
  }
}

TEST_CASE("flat_helix has its acceleration inside the flat factor") {
  CatalogEntry prod = catalog_get("product_s1_r3");
  ParamCurve hel = prod.curve("flat_helix");
  AmbientCurve amb = hel.ambient();
  for (double t : sample_times(0.1, 8.0, 7)) {
    Vec acc = curve_derivative(amb, t, 2);
    CHECK(std::abs(acc[0]) < 1e-12);
    CHECK(std::abs(acc[1]) < 1e-12);
    CHECK(acc.norm() > 0.1);
  }
}
