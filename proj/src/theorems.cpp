#include "helixlab/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace helixlab {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T31: return "T31";
    case TheoremId::T32: return "T32";
    case TheoremId::T33: return "T33";
    case TheoremId::T35: return "T35";
    case TheoremId::T36: return "T36";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "Verified";
    case Verdict::PremiseFailed: return "PremiseFailed";
    case Verdict::Falsified: return "FALSIFIED";
  }
  return "?";
}

namespace {

void check_inputs(const ImmersedPatch& patch, const ParamCurve& pc, const Vec& d,
                  const std::vector<double>& ts, const ToleranceProfile& tols) {
  if (pc.patch.get() != &patch) {
    throw BadParameter("verify: curve does not live on the given patch");
  }
  if (std::abs(d.norm() - 1.0) > tols.unit_norm) {
    throw BadParameter("verify: direction must be a unit vector");
  }
  if (ts.empty()) throw BadParameter("verify: no sample parameters given");
}

PremiseCheck helix_premise(const ImmersedPatch& patch, const Vec& d,
                           const ToleranceProfile& tols) {
  HelixDirectionReport rep = is_helix_direction(patch, d, default_patch_grid(patch),
                                                tols.helix_spread, tols);
  return {"helix_direction", rep.is_helix, rep.spread, tols.helix_spread};
}

double spread_of(const std::vector<double>& vals) {
  auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  return *hi - *lo;
}

void finalize(TheoremReport& rep) {
  bool all = std::all_of(rep.premises.begin(), rep.premises.end(),
                         [](const PremiseCheck& p) { return p.holds; });
  rep.verdict = !all ? Verdict::PremiseFailed
                     : (rep.conclusion.holds ? Verdict::Verified : Verdict::Falsified);
}

/// Central difference of a unit field along the curve, sign-aligned against
/// the center value so continuation flips cannot corrupt the derivative.
Vec field_derivative(const std::function<Vec(double)>& field, double t,
                     double delta) {
  Vec center = field(t);
  Vec fp = field(t + delta);
  if (fp.dot(center) < 0.0) fp = -fp;
  Vec fm = field(t - delta);
  if (fm.dot(center) < 0.0) fm = -fm;
  return (fp - fm) / (2.0 * delta);
}

double field_delta(const ImmersedPatch& patch, double t) {
  return fd_scale(patch.has_analytic_jacobian() ? 6e-6 : 1e-4, std::abs(t));
}

struct V2Samples {
  std::vector<int> defined;    // indices into sample_ts with rank >= 2
  std::vector<Vec> v2;         // parallel to `defined`
  double fraction = 0.0;
};

V2Samples collect_v2(const AmbientCurve& amb, const std::vector<double>& ts,
                     const ToleranceProfile& tols) {
  V2Samples out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    FrenetApparatus app = frenet(amb, ts[i], 2, tols);
    if (app.rank() >= 2) {
      out.defined.push_back(static_cast<int>(i));
      out.v2.push_back(app.vec(2));
    }
  }
  out.fraction = ts.empty() ? 0.0
                            : static_cast<double>(out.defined.size()) /
                                  static_cast<double>(ts.size());
  return out;
}

}  // namespace

TheoremReport verify_thm_3_1(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const NormalField& N_field,
                             const std::vector<double>& ts,
                             const ToleranceProfile& tols) {
  if (patch.ambient_dim() - patch.param_dim() != 1) {
    throw CodimensionMismatch("Thm 3.1 requires a hypersurface (codimension 1)");
  }
  check_inputs(patch, pc, d, ts, tols);

  TheoremReport rep;
  rep.theorem_id = TheoremId::T31;
  rep.samples = static_cast<int>(ts.size());
  rep.premises.push_back(helix_premise(patch, d, tols));

  LocReport loc = line_of_curvature_test(pc, N_field, ts, tols.loc_defect, tols);
  rep.premises.push_back(
      {"line_of_curvature", loc.is_loc, loc.max_angle_defect, tols.loc_defect});

  AmbientCurve amb = pc.ambient();
  int rank2 = 0;
  for (double t : ts) {
    if (frenet(amb, t, 2, tols).rank() >= 2) ++rank2;
  }
  double frac = static_cast<double>(rank2) / static_cast<double>(ts.size());
  // "not a line": Frenet rank >= 2 at a strict majority of samples
  rep.premises.push_back({"not_a_line", 1.0 - frac < 0.5, 1.0 - frac, 0.5});

  double min_dist = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    Vec u = pc.u_at(t);
    Vec e1 = N_field(u).normalized();
    Vec T = curve_derivative(amb, t, 1);
    T -= T.dot(e1) * e1;
    Vec e2 = T.normalized();
    Vec res = d - d.dot(e1) * e1 - d.dot(e2) * e2;
    min_dist = std::min(min_dist, res.norm());
  }
  rep.conclusion = {min_dist >= tols.separation_min, min_dist, tols.separation_min};
  finalize(rep);
  return rep;
}

TheoremReport verify_thm_3_2(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& ts,
                             const ToleranceProfile& tols) {
  check_inputs(patch, pc, d, ts, tols);
  TheoremReport rep;
  rep.theorem_id = TheoremId::T32;
  rep.samples = static_cast<int>(ts.size());
  rep.premises.push_back(helix_premise(patch, d, tols));

  double worst_geo = 0.0;
  for (double t : ts) worst_geo = std::max(worst_geo, geodesic_residual(pc, t, tols));
  rep.premises.push_back(
      {"geodesic", worst_geo <= tols.geodesic_defect, worst_geo, tols.geodesic_defect});

  AmbientCurve amb = pc.ambient();
  V2Samples v2s = collect_v2(amb, ts, tols);
  rep.premises.push_back(
      {"V2_defined", v2s.fraction == 1.0, 1.0 - v2s.fraction, 0.0});
  if (v2s.defined.empty()) {
    rep.note = "not applicable: V2 undefined along the curve";
    rep.premises.push_back({"<V2,xi>_constant", false, 0.0, tols.const_spread});
    rep.conclusion = {false, 0.0, tols.slant_spread};
    finalize(rep);
    return rep;
  }

  std::vector<double> xi_vals, d_vals;
  for (std::size_t k = 0; k < v2s.defined.size(); ++k) {
    double t = ts[v2s.defined[k]];
    DirectionDecomposition dec =
        decompose_direction(point_frame(patch, pc.u_at(t), tols), d, tols);
    xi_vals.push_back(dec.normal_degenerate ? 0.0 : v2s.v2[k].dot(dec.xi));
    d_vals.push_back(v2s.v2[k].dot(d));
  }
  double xi_spread = spread_of(xi_vals);
  rep.premises.push_back(
      {"<V2,xi>_constant", xi_spread <= tols.const_spread, xi_spread, tols.const_spread});

  double d_spread = spread_of(d_vals);
  rep.conclusion = {d_spread <= tols.slant_spread, d_spread, tols.slant_spread};
  finalize(rep);
  return rep;
}

TheoremReport verify_thm_3_3(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& ts,
                             const ToleranceProfile& tols) {
  check_inputs(patch, pc, d, ts, tols);
  TheoremReport rep;
  rep.theorem_id = TheoremId::T33;
  rep.samples = static_cast<int>(ts.size());
  rep.premises.push_back(helix_premise(patch, d, tols));

  double worst_kt = 0.0;
  for (double t : ts) worst_kt = std::max(worst_kt, normal_curvature(pc, t, tols));
  rep.premises.push_back({"normal_curvature_zero", worst_kt <= tols.normal_curv_zero,
                          worst_kt, tols.normal_curv_zero});

  AmbientCurve amb = pc.ambient();
  V2Samples v2s = collect_v2(amb, ts, tols);
  rep.premises.push_back(
      {"V2_defined", v2s.fraction == 1.0, 1.0 - v2s.fraction, 0.0});
  if (v2s.defined.empty()) {
    rep.note = "not applicable: V2 undefined along the curve";
    rep.premises.push_back({"<V2,Tj>_constant", false, 0.0, tols.const_spread});
    rep.conclusion = {false, 0.0, tols.slant_spread};
    finalize(rep);
    return rep;
  }

  std::vector<double> tj_vals, d_vals;
  for (std::size_t k = 0; k < v2s.defined.size(); ++k) {
    double t = ts[v2s.defined[k]];
    DirectionDecomposition dec =
        decompose_direction(point_frame(patch, pc.u_at(t), tols), d, tols);
    tj_vals.push_back(dec.tangent_degenerate ? 0.0 : v2s.v2[k].dot(dec.t_dir));
    d_vals.push_back(v2s.v2[k].dot(d));
  }
  double tj_spread = spread_of(tj_vals);
  rep.premises.push_back(
      {"<V2,Tj>_constant", tj_spread <= tols.const_spread, tj_spread, tols.const_spread});

  double d_spread = spread_of(d_vals);
  rep.conclusion = {d_spread <= tols.slant_spread, d_spread, tols.slant_spread};
  finalize(rep);
  return rep;
}

TheoremReport verify_thm_3_5(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& ts,
                             const ToleranceProfile& tols) {
  check_inputs(patch, pc, d, ts, tols);
  TheoremReport rep;
  rep.theorem_id = TheoremId::T35;
  rep.samples = static_cast<int>(ts.size());
  rep.premises.push_back(helix_premise(patch, d, tols));

  int degenerate = 0;
  for (double t : ts) {
    DirectionDecomposition dec =
        decompose_direction(point_frame(patch, pc.u_at(t), tols), d, tols);
    if (dec.normal_degenerate) ++degenerate;
  }
  double bad_frac = static_cast<double>(degenerate) / static_cast<double>(ts.size());
  rep.premises.push_back({"xi_nondegenerate", degenerate == 0, bad_frac, 0.0});
  if (degenerate > 0) {
    rep.note = "not applicable: normal component of d is degenerate along the curve";
    rep.premises.push_back({"line_of_curvature_wrt_Nj", false, 0.0, tols.loc_defect});
    rep.premises.push_back({"Nj_prime_tangent", false, 0.0, tols.tangency});
    rep.premises.push_back({"lambda_nonvacuous", false, 0.0, tols.lambda_min});
    rep.conclusion = {false, 0.0, tols.orthogonality};
    finalize(rep);
    return rep;
  }

  NormalField njf = [&patch, d, &tols](const Vec& u) -> Vec {
    PointFrame f = point_frame(patch, u, tols);
    Vec pn = d - f.P_tan * d;
    double n = pn.norm();
    if (n < tols.decomposition_degenerate) {
      throw DegenerateDecomposition("normal component of d vanished during Thm 3.5 check");
    }
    return pn / n;
  };

  LocReport loc = line_of_curvature_test(pc, njf, ts, tols.loc_defect, tols);
  rep.premises.push_back({"line_of_curvature_wrt_Nj", loc.is_loc,
                          loc.max_angle_defect, tols.loc_defect});

  auto nj_along = [&](double t) { return njf(pc.u_at(t)); };
  double worst_tangency = 0.0;
  for (double t : ts) {
    Vec njp = field_derivative(nj_along, t, field_delta(patch, t));
    PointFrame f = point_frame(patch, pc.u_at(t), tols);
    worst_tangency = std::max(worst_tangency, (njp - f.P_tan * njp).norm());
  }
  rep.premises.push_back({"Nj_prime_tangent", worst_tangency <= tols.tangency,
                          worst_tangency, tols.tangency});

  double min_lambda = std::numeric_limits<double>::infinity();
  for (double l : loc.lambdas) min_lambda = std::min(min_lambda, std::abs(l));
  bool nonvacuous = min_lambda >= tols.lambda_min;
  rep.premises.push_back({"lambda_nonvacuous", nonvacuous, min_lambda, tols.lambda_min});
  if (!nonvacuous) {
    rep.note =
        "not applicable: principal curvature along the curve is numerically zero, "
        "so the line-of-curvature relation pins nothing";
  }

  AmbientCurve amb = pc.ambient();
  double worst = 0.0;
  for (double t : ts) {
    worst = std::max(worst, std::abs(curve_derivative(amb, t, 1).dot(d)));
  }
  rep.conclusion = {worst <= tols.orthogonality, worst, tols.orthogonality};
  finalize(rep);
  return rep;
}

TheoremReport verify_thm_3_6(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& ts,
                             const ToleranceProfile& tols) {
  check_inputs(patch, pc, d, ts, tols);
  TheoremReport rep;
  rep.theorem_id = TheoremId::T36;
  rep.samples = static_cast<int>(ts.size());
  rep.premises.push_back(helix_premise(patch, d, tols));

  int t_degenerate = 0, n_degenerate = 0;
  for (double t : ts) {
    DirectionDecomposition dec =
        decompose_direction(point_frame(patch, pc.u_at(t), tols), d, tols);
    if (dec.tangent_degenerate) ++t_degenerate;
    if (dec.normal_degenerate) ++n_degenerate;
  }
  const double nsamp = static_cast<double>(ts.size());
  rep.premises.push_back(
      {"Tj_nondegenerate", t_degenerate == 0, t_degenerate / nsamp, 0.0});
  rep.premises.push_back(
      {"xi_nondegenerate", n_degenerate == 0, n_degenerate / nsamp, 0.0});
  if (t_degenerate > 0 || n_degenerate > 0) {
    rep.note = "not applicable: decomposition of d is degenerate along the curve";
    rep.premises.push_back({"Tj_prime_T_dependent", false, 0.0, tols.dependence});
    rep.conclusion = {false, 0.0, tols.loc_defect};
    finalize(rep);
    return rep;
  }

  auto tj_along = [&](double t) -> Vec {
    PointFrame f = point_frame(patch, pc.u_at(t), tols);
    Vec pt = f.P_tan * d;
    return pt / pt.norm();
  };
  AmbientCurve amb = pc.ambient();
  double worst_dep = 0.0;
  for (double t : ts) {
    Vec tjp = field_derivative(tj_along, t, field_delta(patch, t));
    Vec T = curve_derivative(amb, t, 1);
    double a = tjp.squaredNorm();
    double b = tjp.dot(T);
    double c = T.squaredNorm();
    double gram = a * c - b * b;
    double scale = (1.0 + a) * (1.0 + a);
    worst_dep = std::max(worst_dep, gram / scale);
  }
  rep.premises.push_back(
      {"Tj_prime_T_dependent", worst_dep <= tols.dependence, worst_dep, tols.dependence});

  NormalField njf = [&patch, d, &tols](const Vec& u) -> Vec {
    PointFrame f = point_frame(patch, u, tols);
    Vec pn = d - f.P_tan * d;
    double n = pn.norm();
    if (n < tols.decomposition_degenerate) {
      throw DegenerateDecomposition("normal component of d vanished during Thm 3.6 check");
    }
    return pn / n;
  };
  LocReport loc = line_of_curvature_test(pc, njf, ts, tols.loc_defect, tols);
  rep.conclusion = {loc.is_loc, loc.max_angle_defect, tols.loc_defect};
  finalize(rep);
  return rep;
}

}  // namespace helixlab
