#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "helixlab/curves.hpp"
#include "helixlab/expr.hpp"
#include "helixlab/flows.hpp"
#include "helixlab/manifold.hpp"

namespace helixlab {

/// Build a patch from comma-separated component expressions over u1..um.
/// The returned patch carries exact Jacobian and Hessian evaluators derived
/// symbolically from the expression trees.
std::shared_ptr<ImmersedPatch> parse_immersion(const std::string& text, int m,
                                               int n, const ParamMap& params = {},
                                               std::optional<Box> domain = {});

/// parse_immersion plus the parameter-bound component trees, for callers that
/// compose curves symbolically on top of the patch.
struct ExprSurface {
  std::shared_ptr<ImmersedPatch> patch;
  std::vector<AstPtr> components;
};
ExprSurface parse_immersion_full(const std::string& text, int m, int n,
                                 const ParamMap& params = {},
                                 std::optional<Box> domain = {});

/// Ambient curve from component expressions over t, with exact derivatives.
AmbientCurve make_expr_ambient_curve(const std::string& text,
                                     const ParamMap& params, double t0,
                                     double t1);

struct CatalogEntry;

struct CurveSpec {
  std::string name;
  ParamMap defaults;
  std::string description;
  std::function<ParamCurve(const CatalogEntry&, const ParamMap&)> make;
};

/// A built-in example surface with known helix structure and curve fixtures.
struct CatalogEntry {
  std::string name;
  ParamMap parameters;  // resolved values used to build the patch
  std::shared_ptr<const ImmersedPatch> patch;
  std::vector<AstPtr> components;  // parameter-bound component expressions
  std::optional<Subspace> known_helix_space;
  Box sample_box;             // chart window avoiding degeneracies
  NormalField normal_field;   // canonical unit normal field (codim 1 only)
  std::vector<CurveSpec> curves;

  ParamCurve curve(const std::string& curve_name,
                   const ParamMap& overrides = {}) const;
  std::vector<Vec> samples(int target, unsigned seed = 0) const {
    return sample_grid(sample_box, target, seed);
  }
};

CatalogEntry catalog_get(const std::string& name, const ParamMap& params = {});
std::vector<std::string> catalog_names();

/// Unit-speed chart curve built from expressions over t; derivatives of every
/// order come from the expression trees, including the induced ambient curve.
ParamCurve make_expr_curve(std::shared_ptr<const ImmersedPatch> patch,
                           const std::vector<AstPtr>& patch_components,
                           const std::string& u_exprs, const ParamMap& params,
                           double t0, double t1);

/// Uniform (inclusive) sample parameters over [t0, t1]. A nonzero seed draws
/// the interior points uniformly at random instead (sorted, deterministic for
/// that seed); the endpoints stay pinned.
std::vector<double> sample_times(double t0, double t1, int count,
                                 unsigned seed = 0);

}  // namespace helixlab
