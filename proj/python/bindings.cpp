// Python bindings for the main operations: catalog access, immersion parsing,
// frames, helix-space estimation, Frenet data, flows and theorem verification.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helixlab/catalog.hpp"
#include "helixlab/report_io.hpp"
#include "helixlab/theorems.hpp"

namespace py = pybind11;
using namespace helixlab;

namespace {

struct PatchHandle {
  std::shared_ptr<const ImmersedPatch> patch;
  std::vector<AstPtr> components;
};

struct CurveHandle {
  ParamCurve pc;
};

struct EntryHandle {
  CatalogEntry entry;
};

py::dict frame_dict(const PointFrame& f) {
  py::dict d;
  d["u"] = f.u;
  d["p"] = f.p;
  d["tangent"] = f.tangent.basis;
  d["normal"] = f.normal.basis;
  d["P_tan"] = f.P_tan;
  return d;
}

py::dict report_dict(const TheoremReport& rep) {
  py::dict d;
  d["theorem_id"] = to_string(rep.theorem_id);
  d["verdict"] = to_string(rep.verdict);
  d["samples"] = rep.samples;
  py::list premises;
  for (const PremiseCheck& p : rep.premises) {
    py::dict pd;
    pd["name"] = p.name;
    pd["holds"] = p.holds;
    pd["residual"] = p.residual;
    pd["tol"] = p.tol;
    premises.append(pd);
  }
  d["premises"] = premises;
  py::dict c;
  c["holds"] = rep.conclusion.holds;
  c["residual"] = rep.conclusion.residual;
  c["tol"] = rep.conclusion.tol;
  d["conclusion"] = c;
  if (!rep.note.empty()) d["note"] = rep.note;
  return d;
}

std::vector<double> curve_samples(const ParamCurve& pc, int count) {
  return sample_times(pc.t0, pc.t1, count);
}

TheoremReport dispatch_verify(const std::string& theorem, const PatchHandle& patch,
                              const CurveHandle& curve, const Vec& d,
                              const NormalField& normal_field, int samples) {
  std::vector<double> ts = curve_samples(curve.pc, samples);
  if (theorem == "3.1") {
    NormalField nf = normal_field;
    if (!nf) {
      auto p = patch.patch;
      nf = [p](const Vec& u) -> Vec {
        return point_frame(*p, u).normal.basis.col(0);
      };
    }
    return verify_thm_3_1(*patch.patch, curve.pc, d, nf, ts);
  }
  if (theorem == "3.2") return verify_thm_3_2(*patch.patch, curve.pc, d, ts);
  if (theorem == "3.3") return verify_thm_3_3(*patch.patch, curve.pc, d, ts);
  if (theorem == "3.5") return verify_thm_3_5(*patch.patch, curve.pc, d, ts);
  if (theorem == "3.6") return verify_thm_3_6(*patch.patch, curve.pc, d, ts);
  throw BadParameter("theorem must be one of 3.1, 3.2, 3.3, 3.5, 3.6");
}

}  // namespace

PYBIND11_MODULE(_helixlab, m) {
  m.doc() = "numerical toolkit for constant-angle submanifold geometry";
#ifdef HELIXLAB_VERSION
  m.attr("__version__") = HELIXLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif

  py::register_exception<GeomError>(m, "GeomError");

  py::class_<PatchHandle>(m, "Patch")
      .def_property_readonly("param_dim",
                             [](const PatchHandle& p) { return p.patch->param_dim(); })
      .def_property_readonly(
          "ambient_dim", [](const PatchHandle& p) { return p.patch->ambient_dim(); })
      .def("eval", [](const PatchHandle& p, const Vec& u) { return p.patch->eval(u); })
      .def("jacobian",
           [](const PatchHandle& p, const Vec& u) { return jacobian(*p.patch, u); })
      .def("point_frame",
           [](const PatchHandle& p, const Vec& u) {
             return frame_dict(point_frame(*p.patch, u));
           })
      .def("shape_operator",
           [](const PatchHandle& p, const Vec& u, const Vec& N) {
             ShapeOperatorData so = shape_operator(*p.patch, u, N);
             py::dict d;
             d["A"] = so.A;
             d["principal_curvatures"] = so.principal_curvatures;
             d["principal_vectors"] = so.principal_vectors;
             return d;
           })
      .def("sample_grid", [](const PatchHandle& p, int target) {
        return sample_grid(p.patch->domain(), target);
      });

  py::class_<CurveHandle>(m, "Curve")
      .def_property_readonly("t0", [](const CurveHandle& c) { return c.pc.t0; })
      .def_property_readonly("t1", [](const CurveHandle& c) { return c.pc.t1; })
      .def("u", [](const CurveHandle& c, double t) { return c.pc.u_at(t); })
      .def("point",
           [](const CurveHandle& c, double t) { return c.pc.patch->eval(c.pc.u_at(t)); })
      .def("frenet",
           [](const CurveHandle& c, double t, int order) {
             FrenetApparatus app = frenet(c.pc.ambient(), t, order);
             py::dict d;
             d["rank"] = app.rank();
             py::list frame;
             for (const Vec& v : app.frame) frame.append(v);
             d["frame"] = frame;
             d["curvatures"] = app.curvatures;
             return d;
           },
           py::arg("t"), py::arg("order") = 3)
      .def("normal_curvature",
           [](const CurveHandle& c, double t) { return normal_curvature(c.pc, t); })
      .def("geodesic_residual",
           [](const CurveHandle& c, double t) { return geodesic_residual(c.pc, t); });

  py::class_<EntryHandle>(m, "CatalogEntry")
      .def_property_readonly("name",
                             [](const EntryHandle& e) { return e.entry.name; })
      .def_property_readonly("parameters",
                             [](const EntryHandle& e) { return e.entry.parameters; })
      .def_property_readonly("helix_dim",
                             [](const EntryHandle& e) {
                               return e.entry.known_helix_space
                                          ? e.entry.known_helix_space->dim()
                                          : -1;
                             })
      .def_property_readonly("curve_names",
                             [](const EntryHandle& e) {
                               std::vector<std::string> names;
                               for (const CurveSpec& c : e.entry.curves) {
                                 names.push_back(c.name);
                               }
                               return names;
                             })
      .def_property_readonly(
          "patch",
          [](const EntryHandle& e) {
            return PatchHandle{e.entry.patch, e.entry.components};
          })
      .def("curve",
           [](const EntryHandle& e, const std::string& name, const ParamMap& params) {
             return CurveHandle{e.entry.curve(name, params)};
           },
           py::arg("name"), py::arg("params") = ParamMap{})
      .def("samples",
           [](const EntryHandle& e, int target) { return e.entry.samples(target); },
           py::arg("target") = 64)
      .def("normal",
           [](const EntryHandle& e, const Vec& u) { return e.entry.normal_field(u); });

  m.def("catalog_names", &catalog_names);
  m.def(
      "catalog_get",
      [](const std::string& name, const ParamMap& params) {
        return EntryHandle{catalog_get(name, params)};
      },
      py::arg("name"), py::arg("params") = ParamMap{});

  m.def(
      "parse_immersion",
      [](const std::string& text, int me, int n, const ParamMap& params) {
        ExprSurface s = parse_immersion_full(text, me, n, params);
        return PatchHandle{s.patch, s.components};
      },
      py::arg("text"), py::arg("m"), py::arg("n"), py::arg("params") = ParamMap{});

  m.def(
      "make_curve",
      [](const PatchHandle& patch, const std::string& u_exprs, const ParamMap& params,
         double t0, double t1) {
        return CurveHandle{
            make_expr_curve(patch.patch, patch.components, u_exprs, params, t0, t1)};
      },
      py::arg("patch"), py::arg("u_exprs"), py::arg("params") = ParamMap{},
      py::arg("t0") = 0.0, py::arg("t1") = 1.0);

  m.def(
      "is_helix_direction",
      [](const PatchHandle& patch, const Vec& d, const std::vector<Vec>& us,
         double tol) {
        HelixDirectionReport rep = is_helix_direction(*patch.patch, d, us, tol);
        py::dict out;
        out["is_helix"] = rep.is_helix;
        out["mean"] = rep.mean;
        out["stddev"] = rep.stddev;
        out["spread"] = rep.spread;
        out["angles"] = rep.angles;
        return out;
      },
      py::arg("patch"), py::arg("d"), py::arg("samples"), py::arg("tol") = 1e-6);

  m.def(
      "estimate_helix_space",
      [](const PatchHandle& patch, const std::vector<Vec>& us, double tol) {
        HelixSpace space = estimate_helix_space(*patch.patch, us, tol);
        py::dict out;
        out["dim"] = space.basis.dim();
        out["basis"] = space.basis.basis;
        out["residual"] = space.residual;
        out["sample_count"] = space.sample_count;
        return out;
      },
      py::arg("patch"), py::arg("samples"), py::arg("tol") = 1e-6);

  m.def(
      "integrate_geodesic",
      [](const PatchHandle& patch, const Vec& u0, const Vec& v0, double length,
         double step) {
        FlowResult r = integrate_geodesic(patch.patch, u0, v0, length, step);
        py::dict out;
        out["steps"] = r.steps;
        out["max_defect"] = r.max_defect;
        out["curve"] = CurveHandle{r.curve};
        return out;
      },
      py::arg("patch"), py::arg("u0"), py::arg("v0"), py::arg("length"),
      py::arg("step") = 1e-3);

  m.def(
      "verify",
      [](const std::string& theorem, const EntryHandle& entry,
         const std::string& curve_name, const Vec& d, int samples) {
        PatchHandle patch{entry.entry.patch, entry.entry.components};
        CurveHandle curve{entry.entry.curve(curve_name, {})};
        return report_dict(
            dispatch_verify(theorem, patch, curve, d, entry.entry.normal_field, samples));
      },
      py::arg("theorem"), py::arg("entry"), py::arg("curve"), py::arg("direction"),
      py::arg("samples") = 33);

  m.def(
      "verify_curve",
      [](const std::string& theorem, const PatchHandle& patch, const CurveHandle& curve,
         const Vec& d, int samples) {
        return report_dict(dispatch_verify(theorem, patch, curve, d, {}, samples));
      },
      py::arg("theorem"), py::arg("patch"), py::arg("curve"), py::arg("direction"),
      py::arg("samples") = 33);
}
