#include <doctest.h>

#include <cmath>

#include "helixlab/catalog.hpp"
#include "helixlab/theorems.hpp"

using namespace helixlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec axis(int n, int k) {
  Vec v = Vec::Zero(n);
  v[k] = 1.0;
  return v;
}

std::vector<double> curve_ts(const ParamCurve& pc, int count = 33) {
  return sample_times(pc.t0, pc.t1, count);
}

const PremiseCheck& premise(const TheoremReport& rep, const std::string& name) {
  for (const PremiseCheck& p : rep.premises) {
    if (p.name == name) return p;
  }
  FAIL(("missing premise " + name).c_str());
  static PremiseCheck dummy;
  return dummy;
}

}  // namespace

TEST_CASE("thm 3.1: cone and cylinder circles verified, ruling fails the premise") {
  const double beta = kPi / 4.0;
  CatalogEntry cone = catalog_get("cone", {{"beta", beta}});
  ParamCurve circ = cone.curve("u_circle");
  TheoremReport r1 = verify_thm_3_1(*cone.patch, circ, axis(3, 2),
                                    cone.normal_field, curve_ts(circ));
  CHECK(r1.verdict == Verdict::Verified);
  CHECK(std::abs(r1.conclusion.residual - std::cos(beta)) < 1e-4);

  CatalogEntry cyl = catalog_get("cylinder");
  ParamCurve ucirc = cyl.curve("u_circle");
  TheoremReport r2 = verify_thm_3_1(*cyl.patch, ucirc, axis(3, 2),
                                    cyl.normal_field, curve_ts(ucirc));
  CHECK(r2.verdict == Verdict::Verified);
  CHECK(std::abs(r2.conclusion.residual - 1.0) < 1e-4);

  ParamCurve ruling = cyl.curve("ruling");
  TheoremReport r3 = verify_thm_3_1(*cyl.patch, ruling, axis(3, 2),
                                    cyl.normal_field, curve_ts(ruling));
  CHECK(r3.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r3, "not_a_line").holds);
  CHECK(premise(r3, "line_of_curvature").holds);
}

TEST_CASE("thm 3.1 requires a hypersurface") {
  auto helix_curve_patch = parse_immersion("cos(u1), sin(u1), 0.5*u1", 1, 3, {},
                                           Box::cube(1, -8.0, 8.0));
  ParamCurve pc;
  pc.patch = helix_curve_patch;
  pc.u_of_t = [](double t) {
    Vec u(1);
    u << t;
    return u;
  };
  pc.t0 = 0.0;
  pc.t1 = 1.0;
  CHECK_THROWS_AS(verify_thm_3_1(*helix_curve_patch, pc, axis(3, 2),
                                 [](const Vec&) { return axis(3, 2); },
                                 {0.1, 0.2, 0.3}),
                  CodimensionMismatch);
}

TEST_CASE("thm 3.2: cylinder geodesic helices are slant helices") {
  CatalogEntry cyl = catalog_get("cylinder");
  for (double a : {0.2, 0.4, 0.6, 0.8, 0.95}) {
    ParamCurve geo = cyl.curve("geodesic", {{"a", a}});
    TheoremReport r = verify_thm_3_2(*cyl.patch, geo, axis(3, 2), curve_ts(geo));
    CHECK(r.verdict == Verdict::Verified);
    CHECK(r.conclusion.residual <= 1e-5);
    // e3 is tangent to the cylinder: xi is flagged, so <V2, xi> = 0 exactly
    CHECK(premise(r, "<V2,xi>_constant").residual == 0.0);
  }
}

TEST_CASE("thm 3.2 negative controls") {
  CatalogEntry plane = catalog_get("plane");
  ParamCurve circ = plane.curve("circle");
  TheoremReport r1 = verify_thm_3_2(*plane.patch, circ, axis(3, 2), curve_ts(circ));
  CHECK(r1.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r1, "geodesic").holds);
  CHECK(std::abs(premise(r1, "geodesic").residual - 1.0) < 1e-5);

  CatalogEntry sphere = catalog_get("sphere");
  ParamCurve gc = sphere.curve("great_circle");
  TheoremReport r2 = verify_thm_3_2(*sphere.patch, gc, axis(3, 2), curve_ts(gc));
  CHECK(r2.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r2, "helix_direction").holds);
  CHECK(premise(r2, "geodesic").holds);
}

TEST_CASE("thm 3.3: flat-factor helix in S1 x R3") {
  CatalogEntry prod = catalog_get("product_s1_r3");
  ParamCurve hel = prod.curve("flat_helix");
  TheoremReport r = verify_thm_3_3(*prod.patch, hel, axis(5, 4), curve_ts(hel));
  CHECK(r.verdict == Verdict::Verified);
  CHECK(premise(r, "normal_curvature_zero").residual <= 1e-8);
  CHECK(premise(r, "<V2,Tj>_constant").residual <= 1e-8);
}

TEST_CASE("thm 3.3 holds at codimension 2 as well") {
  // S1 x R3 embedded in R6 with a flat last coordinate: normal space is
  // 2-dimensional everywhere
  ExprSurface s = parse_immersion_full("cos(u1), sin(u1), u2, u3, u4, 0", 4, 6,
                                       {}, Box::cube(4, -16.0, 16.0));
  double c = std::sqrt(2.0);
  ParamCurve hel = make_expr_curve(s.patch, s.components,
                                   "0, cos(t/c), sin(t/c), t/c", {{"c", c}}, 0.0,
                                   2.0 * kPi * c);
  TheoremReport r =
      verify_thm_3_3(*s.patch, hel, axis(6, 4), curve_ts(hel));
  CHECK(r.verdict == Verdict::Verified);
  CHECK(premise(r, "normal_curvature_zero").residual <= 1e-8);
}

TEST_CASE("thm 3.3 negative and not-applicable fixtures") {
  CatalogEntry cyl = catalog_get("cylinder");
  ParamCurve ucirc = cyl.curve("u_circle");
  TheoremReport r1 = verify_thm_3_3(*cyl.patch, ucirc, axis(3, 2), curve_ts(ucirc));
  CHECK(r1.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r1, "normal_curvature_zero").holds);
  CHECK(std::abs(premise(r1, "normal_curvature_zero").residual - 1.0) < 1e-5);

  CatalogEntry plane = catalog_get("plane");
  ParamCurve line = plane.curve("line");
  TheoremReport r2 = verify_thm_3_3(*plane.patch, line, axis(3, 0), curve_ts(line));
  CHECK(r2.verdict == Verdict::PremiseFailed);
  CHECK(premise(r2, "normal_curvature_zero").holds);
  CHECK_FALSE(premise(r2, "V2_defined").holds);
  CHECK(r2.note.find("not applicable") != std::string::npos);
}

TEST_CASE("thm 3.5: cone circles for three half-angles") {
  for (double beta : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    CatalogEntry cone = catalog_get("cone", {{"beta", beta}});
    ParamCurve circ = cone.curve("u_circle");
    TheoremReport r = verify_thm_3_5(*cone.patch, circ, axis(3, 2), curve_ts(circ));
    CHECK(r.verdict == Verdict::Verified);
    CHECK(r.conclusion.residual <= 1e-6);
    // lambda = cot(beta) at slant height 1
    CHECK(std::abs(premise(r, "lambda_nonvacuous").residual -
                   1.0 / std::tan(beta)) < 1e-5);
  }
}

TEST_CASE("thm 3.5: cylinder circle is not applicable (xi degenerate)") {
  CatalogEntry cyl = catalog_get("cylinder");
  ParamCurve ucirc = cyl.curve("u_circle");
  TheoremReport r = verify_thm_3_5(*cyl.patch, ucirc, axis(3, 2), curve_ts(ucirc));
  CHECK(r.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r, "xi_nondegenerate").holds);
  CHECK(r.note.find("not applicable") != std::string::npos);
}

TEST_CASE("thm 3.5: cone ruling is vacuous, never falsified") {
  CatalogEntry cone = catalog_get("cone");
  ParamCurve ruling = cone.curve("ruling");
  TheoremReport r = verify_thm_3_5(*cone.patch, ruling, axis(3, 2), curve_ts(ruling));
  // along a ruling N_j is constant and lambda = 0: the line-of-curvature
  // relation pins nothing, and the conclusion residual |<T, e3>| = cos(beta)
  // stays large; the vacuity premise must catch this before falsification
  CHECK(r.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r, "lambda_nonvacuous").holds);
  CHECK(premise(r, "line_of_curvature_wrt_Nj").holds);
  CHECK(premise(r, "Nj_prime_tangent").holds);
  CHECK_FALSE(r.conclusion.holds);
  CHECK(std::abs(r.conclusion.residual - std::cos(kPi / 4.0)) < 1e-6);
}

TEST_CASE("thm 3.6: cone circle and plane circle verified") {
  CatalogEntry cone = catalog_get("cone");
  ParamCurve circ = cone.curve("u_circle");
  TheoremReport r1 = verify_thm_3_6(*cone.patch, circ, axis(3, 2), curve_ts(circ));
  CHECK(r1.verdict == Verdict::Verified);
  CHECK(premise(r1, "Tj_prime_T_dependent").residual <= 1e-8);

  CatalogEntry plane = catalog_get("plane");
  ParamCurve pcirc = plane.curve("circle");
  Vec d = (axis(3, 0) + axis(3, 2)).normalized();
  TheoremReport r2 = verify_thm_3_6(*plane.patch, pcirc, d, curve_ts(pcirc));
  CHECK(r2.verdict == Verdict::Verified);
  CHECK(r2.conclusion.residual <= 1e-8);
}

TEST_CASE("thm 3.6: non-principal spiral fails the dependence premise") {
  CatalogEntry cone = catalog_get("cone");
  ParamCurve sp = cone.curve("spiral45");
  TheoremReport r = verify_thm_3_6(*cone.patch, sp, axis(3, 2), curve_ts(sp));
  CHECK(r.verdict == Verdict::PremiseFailed);
  CHECK_FALSE(premise(r, "Tj_prime_T_dependent").holds);
  CHECK(premise(r, "Tj_prime_T_dependent").residual > 1e-2);
  CHECK(premise(r, "helix_direction").holds);
}

namespace {

struct GridCase {
  TheoremReport report;
  std::string label;
};

std::vector<GridCase> fixture_grid(const ToleranceProfile& tols) {
  std::vector<GridCase> out;
  auto add = [&out](TheoremReport rep, std::string label) {
    out.push_back({std::move(rep), std::move(label)});
  };

  CatalogEntry cone = catalog_get("cone");
  CatalogEntry cyl = catalog_get("cylinder");
  CatalogEntry plane = catalog_get("plane");
  CatalogEntry sphere = catalog_get("sphere");
  CatalogEntry prod = catalog_get("product_s1_r3");
  Vec e3 = axis(3, 2);

  {
    ParamCurve c = cone.curve("u_circle");
    add(verify_thm_3_1(*cone.patch, c, e3, cone.normal_field, curve_ts(c), tols),
        "3.1 cone circle");
    ParamCurve r = cone.curve("ruling");
    add(verify_thm_3_1(*cone.patch, r, e3, cone.normal_field, curve_ts(r), tols),
        "3.1 cone ruling (line)");
    ParamCurve u = cyl.curve("u_circle");
    add(verify_thm_3_1(*cyl.patch, u, e3, cyl.normal_field, curve_ts(u), tols),
        "3.1 cylinder circle");
    ParamCurve lat = sphere.curve("latitude");
    add(verify_thm_3_1(*sphere.patch, lat, e3, sphere.normal_field, curve_ts(lat),
                       tols),
        "3.1 sphere latitude (no helix direction)");
  }
  for (double a : {0.2, 0.5, 0.8}) {
    ParamCurve g = cyl.curve("geodesic", {{"a", a}});
    add(verify_thm_3_2(*cyl.patch, g, e3, curve_ts(g), tols), "3.2 cylinder geodesic");
  }
  {
    ParamCurve c = plane.curve("circle");
    add(verify_thm_3_2(*plane.patch, c, e3, curve_ts(c), tols), "3.2 plane circle");
    ParamCurve gc = sphere.curve("great_circle");
    add(verify_thm_3_2(*sphere.patch, gc, e3, curve_ts(gc), tols),
        "3.2 sphere great circle");
    ParamCurve fh = prod.curve("flat_helix");
    add(verify_thm_3_3(*prod.patch, fh, axis(5, 4), curve_ts(fh), tols),
        "3.3 flat helix");
    ParamCurve uc = cyl.curve("u_circle");
    add(verify_thm_3_3(*cyl.patch, uc, e3, curve_ts(uc), tols),
        "3.3 cylinder circle (k_T = 1)");
  }
  for (double beta : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    CatalogEntry c = catalog_get("cone", {{"beta", beta}});
    ParamCurve circ = c.curve("u_circle");
    add(verify_thm_3_5(*c.patch, circ, e3, curve_ts(circ), tols), "3.5 cone circle");
  }
  {
    ParamCurve r = cone.curve("ruling");
    add(verify_thm_3_5(*cone.patch, r, e3, curve_ts(r), tols),
        "3.5 cone ruling (vacuous)");
    ParamCurve uc = cyl.curve("u_circle");
    add(verify_thm_3_5(*cyl.patch, uc, e3, curve_ts(uc), tols),
        "3.5 cylinder circle (degenerate xi)");
    ParamCurve circ = cone.curve("u_circle");
    add(verify_thm_3_6(*cone.patch, circ, e3, curve_ts(circ), tols),
        "3.6 cone circle");
    ParamCurve pc = plane.curve("circle");
    add(verify_thm_3_6(*plane.patch, pc, (axis(3, 0) + axis(3, 2)).normalized(),
                       curve_ts(pc), tols),
        "3.6 plane circle");
    ParamCurve sp = cone.curve("spiral45");
    add(verify_thm_3_6(*cone.patch, sp, e3, curve_ts(sp), tols),
        "3.6 cone spiral (negative)");
  }
  return out;
}

}  // namespace

TEST_CASE("no falsification across the fixture grid") {
  for (const GridCase& c : fixture_grid({})) {
    INFO(c.label);
    CHECK(c.report.verdict != Verdict::Falsified);
  }
}

TEST_CASE("premise monotonicity: tightening premise tolerances never un-fails") {
  ToleranceProfile tight;
  tight.helix_spread *= 0.01;
  tight.geodesic_defect *= 0.01;
  tight.normal_curv_zero *= 0.01;
  tight.const_spread *= 0.01;
  tight.loc_defect *= 0.01;
  tight.tangency *= 0.01;
  tight.dependence *= 0.01;
  tight.lambda_min *= 100.0;

  auto base = fixture_grid({});
  auto tightened = fixture_grid(tight);
  REQUIRE(base.size() == tightened.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    INFO(base[i].label);
    CHECK(tightened[i].report.verdict != Verdict::Falsified);
    if (base[i].report.verdict == Verdict::PremiseFailed) {
      CHECK(tightened[i].report.verdict == Verdict::PremiseFailed);
    }
  }
}

TEST_CASE("report completeness: every premise named with a finite residual") {
  for (const GridCase& c : fixture_grid({})) {
    INFO(c.label);
    std::size_t expected = 0;
    switch (c.report.theorem_id) {
      case TheoremId::T31: expected = 3; break;
      case TheoremId::T32: expected = 4; break;
      case TheoremId::T33: expected = 4; break;
      case TheoremId::T35: expected = 5; break;
      case TheoremId::T36: expected = 4; break;
    }
    CHECK(c.report.premises.size() == expected);
    for (const PremiseCheck& p : c.report.premises) {
      CHECK(std::isfinite(p.residual));
      CHECK(std::isfinite(p.tol));
      CHECK_FALSE(p.name.empty());
    }
    CHECK(std::isfinite(c.report.conclusion.residual));
    CHECK(c.report.samples == 33);
  }
}
