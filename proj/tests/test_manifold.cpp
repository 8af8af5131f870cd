#include <doctest.h>

#include <cmath>
#include <random>

#include "helixlab/catalog.hpp"
#include "helixlab/manifold.hpp"

using namespace helixlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

/// Lambda-backed patches exercise the pure finite-difference path.
ImmersedPatch lambda_cylinder() {
  return ImmersedPatch(
      [](const Vec& u) { return v3(std::cos(u[0]), std::sin(u[0]), u[1]); }, 2, 3,
      Box::cube(2, -8.0, 8.0));
}

ImmersedPatch lambda_plane() {
  return ImmersedPatch([](const Vec& u) { return v3(u[0], u[1], 0.0); }, 2, 3,
                       Box::cube(2, -8.0, 8.0));
}

}  // namespace

TEST_CASE("jacobian oracles: plane, cylinder, cone") {
  ImmersedPatch plane = lambda_plane();
  Mat jp = jacobian(plane, v2(0.2, -0.4));
  Mat expected(3, 2);
  expected << 1, 0, 0, 1, 0, 0;
  CHECK((jp - expected).norm() < 1e-9);

  ImmersedPatch cyl = lambda_cylinder();
  Mat jc = jacobian(cyl, v2(0.0, 0.3));
  CHECK((jc.col(0) - v3(0, 1, 0)).norm() < 1e-8);
  CHECK((jc.col(1) - v3(0, 0, 1)).norm() < 1e-8);

  const double beta = kPi / 4.0;
  auto cone = parse_immersion(
      "u2*sin(beta)*cos(u1), u2*sin(beta)*sin(u1), u2*cos(beta)", 2, 3,
      {{"beta", beta}}, Box{v2(-8, 0.05), v2(8, 8)});
  Mat jk = jacobian(*cone, v2(0.0, 1.0));
  CHECK((jk.col(0) - v3(0, std::sin(beta), 0)).norm() < 1e-8);
  CHECK((jk.col(1) - v3(std::sin(beta), 0, std::cos(beta))).norm() < 1e-8);
}

TEST_CASE("jacobian domain and rank errors") {
  ImmersedPatch plane = lambda_plane();
  CHECK_THROWS_AS(jacobian(plane, v2(20.0, 0.0)), OutOfDomain);

  ImmersedPatch degenerate(
      [](const Vec& u) { return v3(u[0] + u[1], u[0] + u[1], 0.0); }, 2, 3,
      Box::cube(2, -1.0, 1.0));
  CHECK_THROWS_AS(point_frame(degenerate, v2(0.0, 0.0)), RankDeficient);
}

TEST_CASE("point_frame oracles") {
  ImmersedPatch plane = lambda_plane();
  PointFrame f = point_frame(plane, v2(0.1, 0.2));
  CHECK(f.tangent.dim() == 2);
  CHECK(f.normal.dim() == 1);
  CHECK(std::abs(std::abs(f.normal.basis.col(0)[2]) - 1.0) < 1e-10);

  // sphere: normal is radial
  auto sphere = parse_immersion("sin(u1)*cos(u2), sin(u1)*sin(u2), cos(u1)", 2,
                                3, {}, Box{v2(0.1, -8), v2(kPi - 0.1, 8)});
  Vec u = v2(0.3, 0.7);
  PointFrame fs = point_frame(*sphere, u);
  Vec radial = sphere->eval(u);
  CHECK(std::abs(std::abs(fs.normal.basis.col(0).dot(radial)) - 1.0) < 1e-7);

  // cylinder at u = (0, 0): normal along e1
  ImmersedPatch cyl = lambda_cylinder();
  PointFrame fc = point_frame(cyl, v2(0.0, 0.0));
  CHECK(std::abs(std::abs(fc.normal.basis.col(0)[0]) - 1.0) < 1e-8);

  // frame invariants
  CHECK((fc.tangent.basis.transpose() * fc.normal.basis).norm() < 1e-9);
  Mat split = fc.P_tan + fc.normal.projector();
  CHECK((split - Mat::Identity(3, 3)).norm() < 1e-10);
  // the tangent projector fixes the Jacobian columns
  Mat J = cyl.jacobian_at(v2(0.0, 0.0));
  CHECK((fc.P_tan * J - J).norm() < 1e-9);
}

TEST_CASE("second fundamental form oracles") {
  ImmersedPatch plane = lambda_plane();
  CHECK(second_fundamental_form(plane, v2(0.3, -0.2), v2(1, 2), v2(-1, 0.5)).norm() <
        1e-8);

  ImmersedPatch cyl = lambda_cylinder();
  Vec du = v2(1, 0), dv = v2(0, 1);
  Vec vuu = second_fundamental_form(cyl, v2(0.0, 0.0), du, du);
  CHECK((vuu - v3(-1, 0, 0)).norm() < 1e-6);
  CHECK(second_fundamental_form(cyl, v2(0.0, 0.0), dv, dv).norm() < 1e-6);

  // symmetry in (x, y)
  Vec a = v2(0.3, 1.1), b = v2(-0.7, 0.4);
  Vec vab = second_fundamental_form(cyl, v2(0.5, 0.2), a, b);
  Vec vba = second_fundamental_form(cyl, v2(0.5, 0.2), b, a);
  CHECK((vab - vba).norm() <= 1e-7);
}

TEST_CASE("shape operator sign convention and spectra") {
  ImmersedPatch plane = lambda_plane();
  ShapeOperatorData sp = shape_operator(plane, v2(0.0, 0.0), v3(0, 0, 1));
  CHECK(sp.A.norm() < 1e-8);
  CHECK(sp.principal_curvatures.cwiseAbs().maxCoeff() < 1e-8);

  // unit sphere, outward normal: curvatures (-1, -1)
  auto sphere = parse_immersion("sin(u1)*cos(u2), sin(u1)*sin(u2), cos(u1)", 2,
                                3, {}, Box{v2(0.1, -8), v2(kPi - 0.1, 8)});
  Vec u = v2(1.1, 0.4);
  Vec n_out = sphere->eval(u);
  ShapeOperatorData ss = shape_operator(*sphere, u, n_out);
  CHECK(std::abs(ss.principal_curvatures[0] + 1.0) < 1e-6);
  CHECK(std::abs(ss.principal_curvatures[1] + 1.0) < 1e-6);

  // unit cylinder, outward normal: curvatures (-1, 0)
  ImmersedPatch cyl = lambda_cylinder();
  Vec uc = v2(0.8, -0.3);
  ShapeOperatorData sc =
      shape_operator(cyl, uc, v3(std::cos(uc[0]), std::sin(uc[0]), 0.0));
  CHECK(std::abs(sc.principal_curvatures[0] + 1.0) < 1e-6);
  CHECK(std::abs(sc.principal_curvatures[1]) < 1e-6);
  // principal vector of curvature 0 is the ruling direction e3
  CHECK(std::abs(std::abs(sc.principal_vectors.col(1)[2]) - 1.0) < 1e-6);

  CHECK_THROWS_AS(shape_operator(cyl, uc, v3(0, 0, 2)), NotNormal);
  CHECK_THROWS_AS(shape_operator(cyl, uc, v3(0, 0, 1)), NotNormal);  // tangent
}

TEST_CASE("christoffel oracles") {
  ImmersedPatch plane = lambda_plane();
  for (Mat& g : christoffel(plane, v2(0.3, 0.4))) CHECK(g.norm() < 1e-6);

  ImmersedPatch cyl = lambda_cylinder();
  for (Mat& g : christoffel(cyl, v2(0.7, -0.1))) CHECK(g.norm() < 1e-6);

  // polar chart of the plane: Gamma^r_pp = -r, Gamma^p_rp = 1/r
  auto polar = parse_immersion("u1*cos(u2), u1*sin(u2), 0", 2, 3, {},
                               Box{v2(0.2, -8), v2(8, 8)});
  double r = 1.3;
  auto gamma = christoffel(*polar, v2(r, 0.4));
  CHECK(std::abs(gamma[0](1, 1) + r) < 1e-5);
  CHECK(std::abs(gamma[1](0, 1) - 1.0 / r) < 1e-5);
  CHECK(std::abs(gamma[1](1, 0) - 1.0 / r) < 1e-5);
  CHECK(std::abs(gamma[0](0, 0)) < 1e-5);
}

TEST_CASE("gauss split oracles") {
  ImmersedPatch plane = lambda_plane();
  auto [tp, np] = gauss_split(plane, v2(0.1, 0.1), v2(1, 1), v2(2, -1));
  CHECK(tp.norm() < 1e-7);
  CHECK(np.norm() < 1e-7);

  ImmersedPatch cyl = lambda_cylinder();
  auto [tc, nc] = gauss_split(cyl, v2(0.0, 0.0), v2(1, 0), v2(1, 0));
  CHECK(tc.norm() < 1e-6);
  CHECK((nc - v3(-1, 0, 0)).norm() < 1e-6);

  // sphere equator along the azimuthal coordinate: acceleration is -radial
  auto sphere = parse_immersion("sin(u1)*cos(u2), sin(u1)*sin(u2), cos(u1)", 2,
                                3, {}, Box{v2(0.1, -8), v2(kPi - 0.1, 8)});
  Vec u = v2(kPi / 2.0, 0.3);
  auto [ts, ns] = gauss_split(*sphere, u, v2(0, 1), v2(0, 1));
  CHECK(ts.norm() < 1e-5);
  CHECK((ns + sphere->eval(u)).norm() < 1e-5);
}

TEST_CASE("gauss closure and weingarten consistency on random data") {
  auto sphere = parse_immersion("sin(u1)*cos(u2), sin(u1)*sin(u2), cos(u1)", 2,
                                3, {}, Box{v2(0.3, -8), v2(kPi - 0.3, 8)});
  auto saddle = parse_immersion("u1, u2, u1*u2", 2, 3, {}, Box::cube(2, -2, 2));
  auto s1r2 = parse_immersion("cos(u1), sin(u1), u2, u3", 3, 4, {},
                              Box::cube(3, -2, 2));
  // codimension 2: a cylinder bent inside two normal directions
  auto codim2 = parse_immersion("cos(u1), sin(u1), u2, sin(u2)", 2, 4, {},
                                Box::cube(2, -2, 2));
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  auto random_point = [&](const ImmersedPatch& p) {
    Vec u(p.param_dim());
    for (int i = 0; i < u.size(); ++i) {
      double lo = p.domain().lo[i] + 0.2, hi = p.domain().hi[i] - 0.2;
      u[i] = lo + (hi - lo) * (0.5 + 0.5 * unit(rng));
    }
    return u;
  };

  for (const auto& patch : {sphere, saddle, s1r2, codim2}) {
    const int m = patch->param_dim();
    for (int k = 0; k < 40; ++k) {
      Vec u = random_point(*patch);
      Vec x(m), y(m);
      for (int i = 0; i < m; ++i) {
        x[i] = unit(rng);
        y[i] = unit(rng);
      }
      // closure: tangential + normal = full second-derivative expression
      auto [tg, nm] = gauss_split(*patch, u, x, y);
      Vec full = Vec::Zero(patch->ambient_dim());
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          full += x[i] * y[j] * patch->hessian_at(u, i, j);
        }
      }
      double scale = 1.0 + full.norm();
      CHECK((tg + nm - full).norm() <= 1e-7 * scale);

      // weingarten: <A x_hat, y_hat> = <V(x, y), N>
      PointFrame f = point_frame(*patch, u);
      Vec coeff(f.normal.dim());
      for (int i = 0; i < coeff.size(); ++i) coeff[i] = unit(rng);
      if (coeff.norm() < 1e-3) coeff[0] = 1.0;
      Vec N = (f.normal.basis * coeff).normalized();
      ShapeOperatorData so = shape_operator(*patch, u, N);
      Mat J = patch->jacobian_at(u);
      Vec xh = f.tangent.basis.transpose() * (J * x);
      Vec yh = f.tangent.basis.transpose() * (J * y);
      double lhs = xh.dot(so.A * yh);
      double rhs = second_fundamental_form(*patch, u, x, y).dot(N);
      CHECK(std::abs(lhs - rhs) <= 1e-6 * (1.0 + std::abs(rhs)));
      CHECK((so.A - so.A.transpose()).norm() <= 1e-8);
    }
  }
}
