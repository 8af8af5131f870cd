// Command-line front end: catalog listing, Frenet reports, helix-space
// estimation, theorem verification and flow tracing, with deterministic
// JSON/CSV output.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "helixlab/catalog.hpp"
#include "helixlab/report_io.hpp"
#include "helixlab/theorems.hpp"

using namespace helixlab;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// exit codes: 0 ok / Verified, 2 parse or usage error, 3 degenerate frame,
// 4 geometric failure, 5 PremiseFailed, 6 FALSIFIED
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitGeometric = 4;
constexpr int kExitPremiseFailed = 5;
constexpr int kExitFalsified = 6;

ParamMap parse_kv_params(const std::vector<std::string>& kvs) {
  ParamMap out;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw BadParameter("expected key=value, got '" + kv + "'");
    }
    try {
      out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw BadParameter("bad numeric value in '" + kv + "'");
    }
  }
  return out;
}

std::optional<Box> parse_domain_spec(const std::string& spec, int m) {
  if (spec.empty()) return std::nullopt;
  Box box;
  box.lo = Vec(m);
  box.hi = Vec(m);
  std::stringstream ss(spec);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos || i >= m) {
      throw BadParameter("domain spec: expected m comma-separated lo:hi ranges");
    }
    box.lo[i] = std::stod(item.substr(0, colon));
    box.hi[i] = std::stod(item.substr(colon + 1));
    ++i;
  }
  if (i != m) throw BadParameter("domain spec: expected " + std::to_string(m) + " ranges");
  return box;
}

struct SurfaceOptions {
  std::string catalog_name;
  std::vector<std::string> params;
  std::string immersion;
  int m = 0, n = 0;
  std::string domain;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--surface", catalog_name, "catalog entry name");
    cmd->add_option("--param", params, "surface parameter key=value (repeatable)");
    cmd->add_option("--immersion", immersion,
                    "comma-separated component expressions over u1..um");
    cmd->add_option("--m", m, "parameter dimension for --immersion");
    cmd->add_option("--n", n, "ambient dimension for --immersion");
    cmd->add_option("--domain", domain,
                    "immersion domain as lo:hi,lo:hi,... (default [-1,1]^m)");
  }
};

struct ResolvedSurface {
  std::shared_ptr<const ImmersedPatch> patch;
  std::vector<AstPtr> components;
  std::optional<CatalogEntry> entry;
  nlohmann::json echo;
};

ResolvedSurface resolve_surface(const SurfaceOptions& opt) {
  if (opt.catalog_name.empty() == opt.immersion.empty()) {
    throw BadParameter("specify exactly one surface source: --surface or --immersion");
  }
  ResolvedSurface out;
  if (!opt.catalog_name.empty()) {
    CatalogEntry entry = catalog_get(opt.catalog_name, parse_kv_params(opt.params));
    out.patch = entry.patch;
    out.components = entry.components;
    out.echo["catalog"] = entry.name;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : entry.parameters) params[k] = v;
    out.echo["parameters"] = params;
    out.entry = std::move(entry);
  } else {
    if (opt.m < 1 || opt.n < 1) {
      throw BadParameter("--immersion requires --m and --n");
    }
    ExprSurface s = parse_immersion_full(opt.immersion, opt.m, opt.n,
                                         parse_kv_params(opt.params),
                                         parse_domain_spec(opt.domain, opt.m));
    out.patch = s.patch;
    out.components = s.components;
    out.echo["immersion"] = opt.immersion;
    out.echo["m"] = opt.m;
    out.echo["n"] = opt.n;
  }
  return out;
}

struct CurveOptions {
  std::string name;
  std::vector<std::string> params;
  std::string expr;
  double t0 = 0.0, t1 = 1.0;
  bool has_range = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--curve", name, "catalog curve fixture name");
    cmd->add_option("--curve-param", params, "curve parameter key=value (repeatable)");
    cmd->add_option("--curve-expr", expr,
                    "chart curve u1(t),...,um(t) as expressions over t");
    auto* o0 = cmd->add_option("--t0", t0, "curve parameter start");
    auto* o1 = cmd->add_option("--t1", t1, "curve parameter end");
    o0->needs(o1);
  }
};

ParamCurve resolve_curve(const ResolvedSurface& surface, const CurveOptions& opt,
                         nlohmann::json& echo) {
  if (opt.name.empty() == opt.expr.empty()) {
    throw BadParameter("specify exactly one curve source: --curve or --curve-expr");
  }
  if (!opt.name.empty()) {
    if (!surface.entry) {
      throw BadParameter("--curve requires a catalog surface");
    }
    echo["curve"] = opt.name;
    ParamMap params = parse_kv_params(opt.params);
    nlohmann::json pj = nlohmann::json::object();
    for (const auto& [k, v] : params) pj[k] = v;
    echo["curve_parameters"] = pj;
    return surface.entry->curve(opt.name, params);
  }
  ParamCurve pc = make_expr_curve(surface.patch, surface.components, opt.expr,
                                  parse_kv_params(opt.params), opt.t0, opt.t1);
  echo["curve_expr"] = opt.expr;
  echo["t0"] = opt.t0;
  echo["t1"] = opt.t1;
  return pc;
}

Vec parse_tuple(const std::string& spec, int m, const std::string& what) {
  std::string body = spec;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw BadParameter(what + ": unbalanced parentheses");
    body = body.substr(1, body.size() - 2);
  }
  Vec out = Vec::Zero(m);
  std::stringstream ss(body);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= m) throw BadParameter(what + ": too many components");
    try {
      out[i++] = std::stod(item);
    } catch (const std::exception&) {
      throw BadParameter(what + ": bad number '" + item + "'");
    }
  }
  if (i != m) {
    throw BadParameter(what + ": expected " + std::to_string(m) + " components");
  }
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadParameter("cannot open output file '" + path + "'");
  out << text;
}

std::string csv_row(const std::vector<double>& vals) {
  std::string row;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) row += ',';
    row += format_double(vals[i]);
  }
  row += '\n';
  return row;
}

// ---- subcommand state ------------------------------------------------------

struct FrenetArgs {
  SurfaceOptions surface;
  CurveOptions curve;
  std::string expr;  // ambient expression curve; t-range from --t0/--t1
  int order = 3;
  int samples = 50;
  std::string output;
};

int run_frenet(const FrenetArgs& args) {
  nlohmann::json echo;
  AmbientCurve amb;
  if (!args.expr.empty()) {
    amb = make_expr_ambient_curve(args.expr, {}, args.curve.t0, args.curve.t1);
    echo["curve_expr"] = args.expr;
  } else {
    ResolvedSurface surface = resolve_surface(args.surface);
    echo["surface"] = surface.echo;
    ParamCurve pc = resolve_curve(surface, args.curve, echo);
    amb = pc.ambient();
  }
  std::vector<double> ts = sample_times(amb.t0, amb.t1, args.samples);

  std::string csv = "# helixlab frenet order=" + std::to_string(args.order) + "\n";
  csv += "t";
  for (int i = 1; i <= args.order; ++i) {
    for (int c = 0; c < amb.dim; ++c) {
      csv += ",V" + std::to_string(i) + "_" + std::to_string(c + 1);
    }
  }
  for (int i = 1; i < args.order; ++i) csv += ",k" + std::to_string(i);
  csv += '\n';

  for (double t : ts) {
    FrenetApparatus app = frenet(amb, t, args.order);
    if (app.rank() < args.order) {
      write_output(args.output, csv);
      std::cerr << "frenet: frame rank " << app.rank() << " < requested order "
                << args.order << " at t=" << format_double(t)
                << " (degenerate frame; partial output written)\n";
      return kExitDegenerate;
    }
    std::vector<double> row;
    row.push_back(t);
    for (int i = 1; i <= args.order; ++i) {
      const Vec& v = app.vec(i);
      for (int c = 0; c < v.size(); ++c) row.push_back(v[c]);
    }
    for (int i = 1; i < args.order; ++i) row.push_back(app.curvature(i));
    csv += csv_row(row);
  }
  write_output(args.output, csv);
  return 0;
}

struct HelixSpaceArgs {
  SurfaceOptions surface;
  int samples = 64;
  double tol = 1e-6;
  unsigned seed = 0;
  std::string output;
};

int run_helix_space(const HelixSpaceArgs& args) {
  ResolvedSurface surface = resolve_surface(args.surface);
  std::vector<Vec> us =
      surface.entry
          ? surface.entry->samples(args.samples, args.seed)
          : sample_grid(surface.patch->domain(), args.samples, args.seed);
  HelixSpace space = estimate_helix_space(*surface.patch, us, args.tol);
  std::vector<HelixAngle> angles;
  for (int c = 0; c < space.basis.dim(); ++c) {
    angles.push_back(helix_angle_of(space, *surface.patch, space.basis.basis.col(c)));
  }
  nlohmann::json echo;
  echo["surface"] = surface.echo;
  echo["samples"] = static_cast<int>(us.size());
  echo["tol"] = args.tol;
  echo["seed"] = args.seed;
  nlohmann::json report =
      wrap_report(kToolVersion, echo, helix_space_json(space, angles));
  write_output(args.output, dump_json(report));
  return 0;
}

struct VerifyArgs {
  std::string theorem;
  SurfaceOptions surface;
  CurveOptions curve;
  std::string direction;
  int samples = 33;
  unsigned seed = 0;
  std::string output;
  // tolerance overrides, NaN = keep default
  double tol_helix = -1, tol_loc = -1, tol_geodesic = -1, tol_kt = -1;
  double tol_const = -1, tol_slant = -1, tol_tangency = -1, tol_dependence = -1;
  double tol_separation = -1, tol_orthogonality = -1, tol_lambda = -1;
};

int run_verify(const VerifyArgs& args) {
  ToleranceProfile tols;
  auto maybe = [](double flag, double& slot) {
    if (flag >= 0) slot = flag;
  };
  maybe(args.tol_helix, tols.helix_spread);
  maybe(args.tol_loc, tols.loc_defect);
  maybe(args.tol_geodesic, tols.geodesic_defect);
  maybe(args.tol_kt, tols.normal_curv_zero);
  maybe(args.tol_const, tols.const_spread);
  maybe(args.tol_slant, tols.slant_spread);
  maybe(args.tol_tangency, tols.tangency);
  maybe(args.tol_dependence, tols.dependence);
  maybe(args.tol_separation, tols.separation_min);
  maybe(args.tol_orthogonality, tols.orthogonality);
  maybe(args.tol_lambda, tols.lambda_min);

  ResolvedSurface surface = resolve_surface(args.surface);
  nlohmann::json echo;
  echo["theorem"] = args.theorem;
  echo["surface"] = surface.echo;
  ParamCurve pc = resolve_curve(surface, args.curve, echo);
  bool drift = false;
  Vec d = parse_direction_spec(args.direction, surface.patch->ambient_dim(), &drift);
  if (drift) {
    std::cerr << "warning: direction was not unit length; normalized\n";
  }
  echo["direction"] = args.direction;
  echo["samples"] = args.samples;
  echo["seed"] = args.seed;
  std::vector<double> ts = sample_times(pc.t0, pc.t1, args.samples, args.seed);

  TheoremReport rep;
  if (args.theorem == "3.1") {
    NormalField nf;
    if (surface.entry && surface.entry->normal_field) {
      nf = surface.entry->normal_field;
    } else {
      // fall back to the frame normal; Thm 3.1 quantities are insensitive to
      // its sign
      auto patch = surface.patch;
      nf = [patch](const Vec& u) -> Vec {
        return point_frame(*patch, u).normal.basis.col(0);
      };
    }
    rep = verify_thm_3_1(*surface.patch, pc, d, nf, ts, tols);
  } else if (args.theorem == "3.2") {
    rep = verify_thm_3_2(*surface.patch, pc, d, ts, tols);
  } else if (args.theorem == "3.3") {
    rep = verify_thm_3_3(*surface.patch, pc, d, ts, tols);
  } else if (args.theorem == "3.5") {
    rep = verify_thm_3_5(*surface.patch, pc, d, ts, tols);
  } else if (args.theorem == "3.6") {
    rep = verify_thm_3_6(*surface.patch, pc, d, ts, tols);
  } else {
    throw BadParameter("theorem must be one of 3.1, 3.2, 3.3, 3.5, 3.6");
  }

  nlohmann::json report = wrap_report(kToolVersion, echo, theorem_report_json(rep));
  write_output(args.output, dump_json(report));
  switch (rep.verdict) {
    case Verdict::Verified:
      return 0;
    case Verdict::PremiseFailed:
      return kExitPremiseFailed;
    case Verdict::Falsified:
      return kExitFalsified;
  }
  return kExitFalsified;
}

struct TraceArgs {
  SurfaceOptions surface;
  std::string kind = "geodesic";
  std::string start;
  std::string velocity;
  int eig_index = 0;
  double length = 10.0;
  double step = 1e-3;
  int stride = 1;
  std::string output;
};

int run_trace(const TraceArgs& args) {
  ResolvedSurface surface = resolve_surface(args.surface);
  const int m = surface.patch->param_dim();
  const int n = surface.patch->ambient_dim();
  Vec u0 = parse_tuple(args.start, m, "--start");

  std::string header = "# helixlab trace kind=" + args.kind + "\n";
  header += "t";
  for (int i = 0; i < m; ++i) header += ",u" + std::to_string(i + 1);
  for (int c = 0; c < n; ++c) header += ",x" + std::to_string(c + 1);
  header += '\n';
  std::string csv = header;

  FlowResult result;
  try {
    if (args.kind == "geodesic") {
      if (args.velocity.empty()) {
        throw BadParameter("geodesic trace requires --velocity");
      }
      Vec v0 = parse_tuple(args.velocity, m, "--velocity");
      double speed = (surface.patch->jacobian_at(u0) * v0).norm();
      if (speed < 1e-12) throw BadParameter("--velocity is degenerate");
      v0 /= speed;  // unit ambient speed
      result = integrate_geodesic(surface.patch, u0, v0, args.length, args.step);
    } else if (args.kind == "curvline") {
      NormalField nf;
      if (surface.entry && surface.entry->normal_field) {
        nf = surface.entry->normal_field;
      } else {
        auto patch = surface.patch;
        nf = [patch](const Vec& u) -> Vec {
          return point_frame(*patch, u).normal.basis.col(0);
        };
      }
      result = integrate_curvature_line(surface.patch, u0, nf, args.eig_index,
                                        args.length, args.step);
    } else {
      throw BadParameter("trace kind must be geodesic or curvline");
    }
  } catch (const UmbilicEncountered& e) {
    csv += "# aborted: umbilic point near u = (";
    for (int i = 0; i < e.at.size(); ++i) {
      if (i) csv += ", ";
      csv += format_double(e.at[i]);
    }
    csv += ")\n";
    write_output(args.output, csv);
    std::cerr << "trace aborted: " << e.what() << "\n";
    return kExitGeometric;
  } catch (const LeftDomain& e) {
    csv += "# aborted: left the chart domain near u = (";
    for (int i = 0; i < e.exit_point.size(); ++i) {
      if (i) csv += ", ";
      csv += format_double(e.exit_point[i]);
    }
    csv += ")\n";
    write_output(args.output, csv);
    std::cerr << "trace aborted: " << e.what() << "\n";
    return kExitGeometric;
  }

  const int stride = std::max(1, args.stride);
  for (int k = 0; k <= result.steps; k += stride) {
    double t = args.length * static_cast<double>(k) / result.steps;
    Vec u = result.curve.u_at(t);
    Vec x = surface.patch->eval(u);
    std::vector<double> row;
    row.push_back(t);
    for (int i = 0; i < m; ++i) row.push_back(u[i]);
    for (int c = 0; c < n; ++c) row.push_back(x[c]);
    csv += csv_row(row);
  }
  csv += "# max_defect = " + format_double(result.max_defect) + "\n";
  write_output(args.output, csv);
  return 0;
}

int run_catalog_list() {
  std::string out = "name           parameters                 helix_dim  curves\n";
  for (const std::string& name : catalog_names()) {
    CatalogEntry e = catalog_get(name);
    std::string params;
    for (const auto& [k, v] : e.parameters) {
      if (!params.empty()) params += " ";
      params += k + "=" + format_double(v);
    }
    if (params.empty()) params = "-";
    std::string curves;
    std::vector<std::string> cnames;
    for (const CurveSpec& c : e.curves) cnames.push_back(c.name);
    std::sort(cnames.begin(), cnames.end());
    for (const std::string& c : cnames) {
      if (!curves.empty()) curves += ",";
      curves += c;
    }
    char line[256];
    std::snprintf(line, sizeof(line), "%-14s %-26s %-10d %s\n", name.c_str(),
                  params.c_str(),
                  e.known_helix_space ? e.known_helix_space->dim() : -1,
                  curves.c_str());
    out += line;
  }
  std::cout << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for constant-angle submanifold geometry"};
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "catalog operations");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("list", "list catalog entries");

  FrenetArgs frenet_args;
  auto* frenet_cmd =
      app.add_subcommand("frenet", "Frenet frame and curvatures along a curve (CSV)");
  frenet_args.surface.add_to(frenet_cmd);
  frenet_args.curve.add_to(frenet_cmd);
  frenet_cmd->add_option("--expr", frenet_args.expr,
                         "ambient curve x1(t),...,xn(t) (alternative to a surface curve)");
  frenet_cmd->add_option("--order", frenet_args.order, "frame order k")
      ->check(CLI::Range(1, 8));
  frenet_cmd->add_option("--samples", frenet_args.samples, "sample count")
      ->check(CLI::Range(2, 100000));
  frenet_cmd->add_option("--output", frenet_args.output, "output path (default stdout)");

  HelixSpaceArgs hs_args;
  auto* hs_cmd = app.add_subcommand("helix-space",
                                    "estimate the helix-direction space H(M) (JSON)");
  hs_args.surface.add_to(hs_cmd);
  hs_cmd->add_option("--samples", hs_args.samples, "target sample count")
      ->check(CLI::Range(16, 100000));
  hs_cmd->add_option("--tol", hs_args.tol, "angle-spread tolerance");
  hs_cmd->add_option("--seed", hs_args.seed,
                     "sample jitter seed (0 = fixed grid, fully deterministic)");
  hs_cmd->add_option("--output", hs_args.output, "output path (default stdout)");

  VerifyArgs verify_args;
  auto* verify_cmd =
      app.add_subcommand("verify", "verify a theorem instance (JSON report)");
  verify_cmd->add_option("--theorem", verify_args.theorem, "3.1|3.2|3.3|3.5|3.6")
      ->required();
  verify_args.surface.add_to(verify_cmd);
  verify_args.curve.add_to(verify_cmd);
  verify_cmd->add_option("--direction", verify_args.direction,
                         "direction spec: e3 or (x, y, z)")
      ->required();
  verify_cmd->add_option("--samples", verify_args.samples, "curve sample count")
      ->check(CLI::Range(3, 10000));
  verify_cmd->add_option("--seed", verify_args.seed,
                         "sample jitter seed (0 = uniform samples, deterministic)");
  verify_cmd->add_option("--output", verify_args.output, "output path");
  verify_cmd->add_option("--tol-helix", verify_args.tol_helix, "helix-direction spread");
  verify_cmd->add_option("--tol-loc", verify_args.tol_loc, "line-of-curvature defect");
  verify_cmd->add_option("--tol-geodesic", verify_args.tol_geodesic, "geodesic residual");
  verify_cmd->add_option("--tol-kt", verify_args.tol_kt, "normal-curvature bound");
  verify_cmd->add_option("--tol-const", verify_args.tol_const, "inner-product spread");
  verify_cmd->add_option("--tol-slant", verify_args.tol_slant, "slant conclusion spread");
  verify_cmd->add_option("--tol-tangency", verify_args.tol_tangency, "N' tangency bound");
  verify_cmd->add_option("--tol-dependence", verify_args.tol_dependence,
                         "Gram-determinant bound");
  verify_cmd->add_option("--tol-separation", verify_args.tol_separation,
                         "minimum span distance (3.1)");
  verify_cmd->add_option("--tol-orthogonality", verify_args.tol_orthogonality,
                         "|<T, d>| bound (3.5)");
  verify_cmd->add_option("--tol-lambda", verify_args.tol_lambda,
                         "vacuity guard on |lambda| (3.5)");

  TraceArgs trace_args;
  auto* trace_cmd = app.add_subcommand("trace", "trace a geodesic or curvature line (CSV)");
  trace_args.surface.add_to(trace_cmd);
  trace_cmd->add_option("--kind", trace_args.kind, "geodesic|curvline");
  trace_cmd->add_option("--start", trace_args.start, "start chart point (u1, ...)")
      ->required();
  trace_cmd->add_option("--velocity", trace_args.velocity,
                        "chart velocity for geodesics (scaled to unit speed)");
  trace_cmd->add_option("--eig-index", trace_args.eig_index,
                        "principal direction index (ascending eigenvalues)");
  trace_cmd->add_option("--length", trace_args.length, "trace length");
  trace_cmd->add_option("--step", trace_args.step, "integrator step");
  trace_cmd->add_option("--stride", trace_args.stride, "output row stride");
  trace_cmd->add_option("--output", trace_args.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (catalog_cmd->parsed()) return run_catalog_list();
    if (frenet_cmd->parsed()) return run_frenet(frenet_args);
    if (hs_cmd->parsed()) return run_helix_space(hs_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (trace_cmd->parsed()) return run_trace(trace_args);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownIdentifier& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ArityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ComponentCountMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownEntry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const BadParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DegenerateFrame& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const RankDeficient& e) {
    std::cerr << "error: " << e.what() << " at u = (";
    for (int i = 0; i < e.at.size(); ++i) {
      std::cerr << (i ? ", " : "") << format_double(e.at[i]);
    }
    std::cerr << ")\n";
    return kExitGeometric;
  } catch (const GeomError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometric;
  }
  return 0;
}
