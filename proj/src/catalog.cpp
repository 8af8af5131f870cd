#include "helixlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace helixlab {

namespace {

std::vector<std::string> variable_names(int m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (int i = 1; i <= m; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

std::vector<std::string> keys_of(const ParamMap& params) {
  std::vector<std::string> keys;
  for (const auto& [k, _] : params) keys.push_back(k);
  return keys;
}

/// Patch evaluators from parameter-bound component ASTs.
std::shared_ptr<ImmersedPatch> expr_patch(std::vector<AstPtr> comps, int m, int n,
                                          Box domain) {
  auto jac = std::make_shared<std::vector<std::vector<AstPtr>>>();  // [comp][var]
  auto hess = std::make_shared<std::vector<std::vector<std::vector<AstPtr>>>>();
  jac->resize(n);
  hess->resize(n);
  for (int c = 0; c < n; ++c) {
    (*jac)[c].resize(m);
    (*hess)[c].assign(m, std::vector<AstPtr>(m));
    for (int i = 0; i < m; ++i) (*jac)[c][i] = differentiate(comps[c], i);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        (*hess)[c][i][j] = differentiate((*jac)[c][i], j);
        (*hess)[c][j][i] = (*hess)[c][i][j];
      }
    }
  }
  auto comps_shared = std::make_shared<std::vector<AstPtr>>(std::move(comps));

  auto map = [comps_shared, n](const Vec& u) -> Vec {
    Vec out(n);
    for (int c = 0; c < n; ++c) out[c] = eval_ast((*comps_shared)[c], u);
    return out;
  };
  auto patch = std::make_shared<ImmersedPatch>(map, m, n, std::move(domain));
  patch->set_analytic_jacobian([jac, m, n](const Vec& u) -> Mat {
    Mat J(n, m);
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < m; ++i) J(c, i) = eval_ast((*jac)[c][i], u);
    }
    return J;
  });
  patch->set_analytic_hessian([hess, n](const Vec& u, int i, int j) -> Vec {
    Vec out(n);
    for (int c = 0; c < n; ++c) out[c] = eval_ast((*hess)[c][i][j], u);
    return out;
  });
  return patch;
}

Subspace axes_subspace(int n, const std::vector<int>& axes) {
  Subspace s;
  s.basis = Mat::Zero(n, static_cast<int>(axes.size()));
  for (std::size_t k = 0; k < axes.size(); ++k) s.basis(axes[k], k) = 1.0;
  return s;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

ExprSurface parse_immersion_full(const std::string& text, int m, int n,
                                 const ParamMap& params,
                                 std::optional<Box> domain) {
  if (m < 1 || n <= m) {
    throw BadParameter("parse_immersion: need 1 <= m < n");
  }
  std::vector<AstPtr> comps =
      parse_expression_list(text, variable_names(m), keys_of(params));
  if (static_cast<int>(comps.size()) != n) {
    throw ComponentCountMismatch("expected " + std::to_string(n) +
                                 " components, got " +
                                 std::to_string(comps.size()));
  }
  for (AstPtr& c : comps) c = bind_parameters(c, params);
  Box box = domain.value_or(Box::cube(m, -1.0, 1.0));
  ExprSurface s;
  s.patch = expr_patch(comps, m, n, std::move(box));
  s.components = std::move(comps);
  return s;
}

std::shared_ptr<ImmersedPatch> parse_immersion(const std::string& text, int m,
                                               int n, const ParamMap& params,
                                               std::optional<Box> domain) {
  return parse_immersion_full(text, m, n, params, std::move(domain)).patch;
}

AmbientCurve make_expr_ambient_curve(const std::string& text,
                                     const ParamMap& params, double t0,
                                     double t1) {
  std::vector<AstPtr> comps = parse_expression_list(text, {"t"}, keys_of(params));
  for (AstPtr& c : comps) c = bind_parameters(c, params);
  const int n = static_cast<int>(comps.size());

  constexpr int kOrders = 6;
  auto tab = std::make_shared<std::vector<std::vector<AstPtr>>>();
  tab->push_back(comps);
  for (int k = 1; k <= kOrders; ++k) {
    std::vector<AstPtr> d(n);
    for (int c = 0; c < n; ++c) d[c] = differentiate((*tab)[k - 1][c], 0);
    tab->push_back(std::move(d));
  }
  auto eval_row = [](const std::vector<AstPtr>& row, double t) -> Vec {
    Vec out(static_cast<int>(row.size()));
    Vec arg(1);
    arg[0] = t;
    for (std::size_t c = 0; c < row.size(); ++c) out[c] = eval_ast(row[c], arg);
    return out;
  };
  AmbientCurve c;
  c.map = [tab, eval_row](double t) { return eval_row((*tab)[0], t); };
  c.t0 = t0;
  c.t1 = t1;
  c.dim = n;
  c.analytic = [tab, eval_row](double t, int order) {
    if (order > kOrders) throw BadParameter("curve derivative order too high");
    return eval_row((*tab)[order], t);
  };
  c.analytic_max_order = kOrders;
  return c;
}

ParamCurve make_expr_curve(std::shared_ptr<const ImmersedPatch> patch,
                           const std::vector<AstPtr>& patch_components,
                           const std::string& u_exprs, const ParamMap& params,
                           double t0, double t1) {
  const int m = patch->param_dim();
  const int n = patch->ambient_dim();
  std::vector<AstPtr> us = parse_expression_list(u_exprs, {"t"}, keys_of(params));
  if (static_cast<int>(us.size()) != m) {
    throw ComponentCountMismatch("curve expression needs " + std::to_string(m) +
                                 " chart components, got " +
                                 std::to_string(us.size()));
  }
  for (AstPtr& c : us) c = bind_parameters(c, params);

  std::vector<AstPtr> amb(n);
  for (int c = 0; c < n; ++c) amb[c] = substitute_variables(patch_components[c], us);

  constexpr int kOrders = 6;
  // [order][component]; order 0 is the value
  auto u_tab = std::make_shared<std::vector<std::vector<AstPtr>>>();
  auto a_tab = std::make_shared<std::vector<std::vector<AstPtr>>>();
  u_tab->push_back(us);
  a_tab->push_back(amb);
  for (int k = 1; k <= kOrders; ++k) {
    std::vector<AstPtr> du(m), da(n);
    for (int c = 0; c < m; ++c) du[c] = differentiate((*u_tab)[k - 1][c], 0);
    for (int c = 0; c < n; ++c) da[c] = differentiate((*a_tab)[k - 1][c], 0);
    u_tab->push_back(std::move(du));
    a_tab->push_back(std::move(da));
  }

  auto eval_row = [](const std::vector<AstPtr>& row, double t) -> Vec {
    Vec out(static_cast<int>(row.size()));
    Vec arg(1);
    arg[0] = t;
    for (std::size_t c = 0; c < row.size(); ++c) out[c] = eval_ast(row[c], arg);
    return out;
  };

  ParamCurve pc;
  pc.patch = std::move(patch);
  pc.t0 = t0;
  pc.t1 = t1;
  pc.u_of_t = [u_tab, eval_row](double t) { return eval_row((*u_tab)[0], t); };
  pc.u_analytic = [u_tab, eval_row](double t, int order) {
    if (order > kOrders) throw BadParameter("curve derivative order too high");
    return eval_row((*u_tab)[order], t);
  };
  pc.u_analytic_max = kOrders;
  pc.ambient_analytic = [a_tab, eval_row](double t, int order) {
    if (order > kOrders) throw BadParameter("curve derivative order too high");
    return eval_row((*a_tab)[order], t);
  };
  pc.ambient_analytic_max = kOrders;
  return pc;
}

std::vector<double> sample_times(double t0, double t1, int count, unsigned seed) {
  if (count < 2) throw BadParameter("sample_times: need at least 2 samples");
  std::vector<double> ts(count);
  ts.front() = t0;
  ts.back() = t1;
  if (seed == 0) {
    for (int i = 1; i + 1 < count; ++i) {
      ts[i] = t0 + (t1 - t0) * static_cast<double>(i) / (count - 1);
    }
  } else {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pick(t0, t1);
    for (int i = 1; i + 1 < count; ++i) ts[i] = pick(rng);
    std::sort(ts.begin(), ts.end());
  }
  return ts;
}

ParamCurve CatalogEntry::curve(const std::string& curve_name,
                               const ParamMap& overrides) const {
  for (const CurveSpec& spec : curves) {
    if (spec.name != curve_name) continue;
    ParamMap merged = spec.defaults;
    for (const auto& [k, v] : overrides) {
      if (merged.find(k) == merged.end()) {
        throw BadParameter("curve '" + curve_name + "' has no parameter '" + k + "'");
      }
      merged[k] = v;
    }
    return spec.make(*this, merged);
  }
  throw UnknownEntry("surface '" + name + "' has no curve named '" + curve_name + "'");
}

namespace {

using EntryBuilder = CatalogEntry (*)(const ParamMap&);

ParamMap merge_params(const ParamMap& defaults, const ParamMap& given,
                      const std::string& entry) {
  ParamMap merged = defaults;
  for (const auto& [k, v] : given) {
    if (merged.find(k) == merged.end()) {
      throw BadParameter("catalog entry '" + entry + "' has no parameter '" + k + "'");
    }
    merged[k] = v;
  }
  return merged;
}

CatalogEntry build_plane(const ParamMap& params) {
  CatalogEntry e;
  e.name = "plane";
  e.parameters = merge_params({}, params, e.name);
  e.components = parse_expression_list("u1, u2, 0", variable_names(2));
  e.patch = expr_patch(e.components, 2, 3, Box::cube(2, -16.0, 16.0));
  e.sample_box = Box::cube(2, -1.0, 1.0);
  e.known_helix_space = axes_subspace(3, {0, 1, 2});
  e.normal_field = [](const Vec&) {
    Vec n(3);
    n << 0, 0, 1;
    return n;
  };
  e.curves.push_back(
      {"circle", {}, "unit circle in the plane", [](const CatalogEntry& ent, const ParamMap& p) {
         return make_expr_curve(ent.patch, ent.components, "cos(t), sin(t)", p, 0.0,
                                2.0 * kPi);
       }});
  e.curves.push_back(
      {"line", {}, "straight coordinate line", [](const CatalogEntry& ent, const ParamMap& p) {
         return make_expr_curve(ent.patch, ent.components, "t, 0", p, -2.0, 2.0);
       }});
  return e;
}

CatalogEntry build_cylinder(const ParamMap& params) {
  CatalogEntry e;
  e.name = "cylinder";
  e.parameters = merge_params({}, params, e.name);
  e.components = parse_expression_list("cos(u1), sin(u1), u2", variable_names(2));
  e.patch = expr_patch(e.components, 2, 3, Box::cube(2, -16.0, 16.0));
  e.sample_box.lo = Vec(2);
  e.sample_box.hi = Vec(2);
  e.sample_box.lo << 0.0, -1.0;
  e.sample_box.hi << 2.0 * kPi, 1.0;
  e.known_helix_space = axes_subspace(3, {2});
  e.normal_field = [](const Vec& u) {
    Vec n(3);
    n << std::cos(u[0]), std::sin(u[0]), 0.0;
    return n;
  };
  e.curves.push_back({"u_circle",
                      {{"v0", 0.0}},
                      "cross-section circle at height v0",
                      [](const CatalogEntry& ent, const ParamMap& p) {
                        return make_expr_curve(ent.patch, ent.components, "t, v0", p,
                                               0.0, 2.0 * kPi);
                      }});
  e.curves.push_back({"ruling",
                      {{"u0", 0.0}},
                      "vertical ruling line at angle u0",
                      [](const CatalogEntry& ent, const ParamMap& p) {
                        return make_expr_curve(ent.patch, ent.components, "u0, t", p,
                                               -2.0, 2.0);
                      }});
  e.curves.push_back(
      {"geodesic",
       {{"a", 1.0 / std::sqrt(2.0)}, {"u0", 0.0}, {"v0", 0.0}},
       "unit-speed geodesic helix; a in [0,1] is the angular speed",
       [](const CatalogEntry& ent, const ParamMap& p) {
         double a = p.at("a");
         if (a < 0.0 || a > 1.0) {
           throw BadParameter("cylinder geodesic: parameter a must lie in [0, 1]");
         }
         ParamMap full = p;
         full["b"] = std::sqrt(std::max(0.0, 1.0 - a * a));
         return make_expr_curve(ent.patch, ent.components, "u0 + a*t, v0 + b*t", full,
                                0.0, 10.0);
       }});
  return e;
}

CatalogEntry build_cone(const ParamMap& params) {
  CatalogEntry e;
  e.name = "cone";
  e.parameters = merge_params({{"beta", kPi / 4.0}}, params, e.name);
  double beta = e.parameters.at("beta");
  if (!(beta > 0.0 && beta < kPi / 2.0)) {
    throw BadParameter("cone: beta must lie in (0, pi/2)");
  }
  e.components = parse_expression_list(
      "u2*sin(beta)*cos(u1), u2*sin(beta)*sin(u1), u2*cos(beta)",
      variable_names(2), {"beta"});
  for (AstPtr& c : e.components) c = bind_parameters(c, e.parameters);
  Box domain;
  domain.lo = Vec(2);
  domain.hi = Vec(2);
  domain.lo << -16.0, 0.05;  // apex excluded
  domain.hi << 16.0, 16.0;
  e.patch = expr_patch(e.components, 2, 3, domain);
  e.sample_box.lo = Vec(2);
  e.sample_box.hi = Vec(2);
  e.sample_box.lo << 0.0, 0.5;
  e.sample_box.hi << 2.0 * kPi, 2.0;
  e.known_helix_space = axes_subspace(3, {2});
  e.normal_field = [beta](const Vec& u) {
    Vec n(3);
    n << std::cos(beta) * std::cos(u[0]), std::cos(beta) * std::sin(u[0]),
        -std::sin(beta);
    return n;
  };
  e.curves.push_back(
      {"u_circle",
       {{"v0", 1.0}},
       "horizontal circle at slant height v0",
       [beta](const CatalogEntry& ent, const ParamMap& p) {
         ParamMap full = p;
         full["beta"] = beta;
         double v0 = p.at("v0");
         return make_expr_curve(ent.patch, ent.components, "t/(v0*sin(beta)), v0",
                                full, 0.0, 2.0 * kPi * v0 * std::sin(beta));
       }});
  e.curves.push_back({"ruling",
                      {{"u0", 0.0}},
                      "ruling line through the apex direction",
                      [](const CatalogEntry& ent, const ParamMap& p) {
                        return make_expr_curve(ent.patch, ent.components, "u0, t", p,
                                               0.5, 2.0);
                      }});
  e.curves.push_back(
      {"spiral45",
       {{"v0", 1.0}},
       "unit-speed spiral at 45 degrees to the principal directions",
       [beta](const CatalogEntry& ent, const ParamMap& p) {
         ParamMap full = p;
         full["beta"] = beta;
         return make_expr_curve(ent.patch, ent.components,
                                "log(1 + t/(v0*sqrt(2)))/sin(beta), v0 + t/sqrt(2)",
                                full, 0.0, 1.5);
       }});
  return e;
}

CatalogEntry build_sphere(const ParamMap& params) {
  CatalogEntry e;
  e.name = "sphere";
  e.parameters = merge_params({}, params, e.name);
  e.components = parse_expression_list(
      "sin(u1)*cos(u2), sin(u1)*sin(u2), cos(u1)", variable_names(2));
  Box domain;
  domain.lo = Vec(2);
  domain.hi = Vec(2);
  domain.lo << 0.2, -16.0;  // poles excluded
  domain.hi << kPi - 0.2, 16.0;
  e.patch = expr_patch(e.components, 2, 3, domain);
  e.sample_box.lo = Vec(2);
  e.sample_box.hi = Vec(2);
  e.sample_box.lo << 0.4, 0.0;
  e.sample_box.hi << kPi - 0.4, 2.0 * kPi;
  Subspace none;
  none.basis = Mat(3, 0);
  e.known_helix_space = none;
  e.normal_field = [patch = e.patch](const Vec& u) { return patch->eval(u); };
  e.curves.push_back(
      {"great_circle", {}, "equator", [](const CatalogEntry& ent, const ParamMap& p) {
         return make_expr_curve(ent.patch, ent.components, "1.5707963267948966, t", p,
                                0.0, 2.0 * kPi);
       }});
  e.curves.push_back(
      {"latitude",
       {{"theta0", kPi / 4.0}},
       "latitude circle at polar angle theta0 (not a geodesic)",
       [](const CatalogEntry& ent, const ParamMap& p) {
         double theta0 = p.at("theta0");
         if (theta0 <= 0.2 || theta0 >= kPi - 0.2) {
           throw BadParameter("sphere latitude: theta0 must avoid the poles");
         }
         return make_expr_curve(ent.patch, ent.components, "theta0, t/sin(theta0)", p,
                                0.0, 2.0 * kPi * std::sin(theta0));
       }});
  return e;
}

CatalogEntry build_torus_product(const ParamMap& params) {
  CatalogEntry e;
  e.name = "torus_product";
  e.parameters = merge_params({}, params, e.name);
  e.components =
      parse_expression_list("cos(u1), sin(u1), u2, u3", variable_names(3));
  e.patch = expr_patch(e.components, 3, 4, Box::cube(3, -16.0, 16.0));
  e.sample_box.lo = Vec(3);
  e.sample_box.hi = Vec(3);
  e.sample_box.lo << 0.0, -1.0, -1.0;
  e.sample_box.hi << 2.0 * kPi, 1.0, 1.0;
  e.known_helix_space = axes_subspace(4, {2, 3});
  e.normal_field = [](const Vec& u) {
    Vec n(4);
    n << std::cos(u[0]), std::sin(u[0]), 0.0, 0.0;
    return n;
  };
  e.curves.push_back(
      {"u_circle", {}, "circle factor", [](const CatalogEntry& ent, const ParamMap& p) {
         return make_expr_curve(ent.patch, ent.components, "t, 0, 0", p, 0.0,
                                2.0 * kPi);
       }});
  return e;
}

CatalogEntry build_product_s1_r3(const ParamMap& params) {
  CatalogEntry e;
  e.name = "product_s1_r3";
  e.parameters = merge_params({}, params, e.name);
  e.components =
      parse_expression_list("cos(u1), sin(u1), u2, u3, u4", variable_names(4));
  e.patch = expr_patch(e.components, 4, 5, Box::cube(4, -16.0, 16.0));
  e.sample_box.lo = Vec(4);
  e.sample_box.hi = Vec(4);
  e.sample_box.lo << 0.0, -1.0, -1.0, -1.0;
  e.sample_box.hi << 2.0 * kPi, 1.0, 1.0, 1.0;
  e.known_helix_space = axes_subspace(5, {2, 3, 4});
  e.normal_field = [](const Vec& u) {
    Vec n(5);
    n << std::cos(u[0]), std::sin(u[0]), 0.0, 0.0, 0.0;
    return n;
  };
  e.curves.push_back(
      {"flat_helix",
       {{"a", 1.0}, {"b", 1.0}},
       "circular helix inside the flat factor, axis along the last coordinate",
       [](const CatalogEntry& ent, const ParamMap& p) {
         double a = p.at("a"), b = p.at("b");
         if (a <= 0.0) throw BadParameter("flat_helix: a must be positive");
         ParamMap full = p;
         double c = std::hypot(a, b);
         full["c"] = c;
         return make_expr_curve(ent.patch, ent.components,
                                "0, a*cos(t/c), a*sin(t/c), b*t/c", full, 0.0,
                                2.0 * kPi * c);
       }});
  e.curves.push_back(
      {"u_circle", {}, "circle factor", [](const CatalogEntry& ent, const ParamMap& p) {
         return make_expr_curve(ent.patch, ent.components, "t, 0, 0, 0", p, 0.0,
                                2.0 * kPi);
       }});
  return e;
}

const std::map<std::string, EntryBuilder>& registry() {
  static const std::map<std::string, EntryBuilder> reg = {
      {"plane", &build_plane},
      {"cylinder", &build_cylinder},
      {"cone", &build_cone},
      {"sphere", &build_sphere},
      {"torus_product", &build_torus_product},
      {"product_s1_r3", &build_product_s1_r3},
  };
  return reg;
}

}  // namespace

CatalogEntry catalog_get(const std::string& name, const ParamMap& params) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    throw UnknownEntry("no catalog entry named '" + name + "'");
  }
  return it->second(params);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;  // std::map iterates lexicographically
}

}  // namespace helixlab
