#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "helixlab/curves.hpp"
#include "helixlab/manifold.hpp"

namespace helixlab {

using NormalField = std::function<Vec(const Vec&)>;

/// Output of an ODE trace on a patch. `curve` interpolates the stored steps
/// with cubic Hermite segments; `max_defect` is the flow-specific residual
/// measured a posteriori on the stored points.
struct FlowResult {
  ParamCurve curve;
  int steps = 0;
  double max_defect = 0.0;
};

/// Classical RK4 on u'' = -Gamma(u)(u', u'). v0 must give unit ambient speed.
/// max_defect records the worst tangential acceleration of the trace.
FlowResult integrate_geodesic(std::shared_ptr<const ImmersedPatch> patch,
                              const Vec& u0, const Vec& v0, double length,
                              double step, const ToleranceProfile& tol = {});

/// Follows the unit principal vector of shape_operator(u, normal_field(u)) at
/// `eig_index` (eigenvalues ascending), with sign continuity against the
/// previous step. Aborts with UmbilicEncountered when the eigenvalue gap
/// closes below the profile tolerance. max_defect is the worst angle between
/// the trace tangent and the local principal vector.
FlowResult integrate_curvature_line(std::shared_ptr<const ImmersedPatch> patch,
                                    const Vec& u0, const NormalField& normal_field,
                                    int eig_index, double length, double step,
                                    const ToleranceProfile& tol = {});

struct LocReport {
  double max_angle_defect = 0.0;
  bool is_loc = false;
  std::vector<double> lambdas;  // <A T, T> per sample
};

/// Checks A_N(T) = lambda T along the curve: the defect at each sample is the
/// norm of the component of A T orthogonal to T, in the tangent basis.
LocReport line_of_curvature_test(const ParamCurve& pc,
                                 const NormalField& normal_field,
                                 const std::vector<double>& sample_ts, double tol,
                                 const ToleranceProfile& profile = {});

}  // namespace helixlab
