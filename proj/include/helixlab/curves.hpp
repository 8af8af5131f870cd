#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "helixlab/manifold.hpp"
#include "helixlab/numerics.hpp"

namespace helixlab {

/// A regular curve t -> R^n. `analytic` (when attached) evaluates exact
/// derivatives up to `analytic_max_order`; orders beyond that, or curves
/// without it, go through central differences with order-matched steps.
struct AmbientCurve {
  std::function<Vec(double)> map;
  double t0 = 0.0, t1 = 1.0;
  int dim = 0;
  double fd_step = 1e-5;
  std::function<Vec(double, int)> analytic;
  int analytic_max_order = 0;

  Vec eval(double t) const { return map(t); }
};

/// d^k gamma / dt^k. Finite differences handle orders up to 5; beyond that an
/// analytic evaluator is required.
Vec curve_derivative(const AmbientCurve& c, double t, int order);

/// A curve living in a patch chart, t -> u(t).
struct ParamCurve {
  std::shared_ptr<const ImmersedPatch> patch;
  std::function<Vec(double)> u_of_t;
  double t0 = 0.0, t1 = 1.0;
  double fd_step = 1e-5;
  std::function<Vec(double, int)> u_analytic;
  int u_analytic_max = 0;
  std::function<Vec(double, int)> ambient_analytic;  // optional closed form
  int ambient_analytic_max = 0;

  Vec u_at(double t) const { return u_of_t(t); }
  Vec u_velocity(double t) const;

  /// Induced ambient curve patch.map(u(t)). Exact derivatives cascade from
  /// whatever analytic information the patch and the chart curve carry.
  AmbientCurve ambient() const;
};

/// Generalized Frenet data at one parameter value.
struct FrenetApparatus {
  double t = 0.0;
  std::vector<Vec> frame;  // V1..Vk, orthonormal
  Vec curvatures;          // k1..k_{k-1}

  int rank() const { return static_cast<int>(frame.size()); }

  /// V_i, 1-based. Throws DegenerateFrame when the frame stops before i.
  const Vec& vec(int i) const {
    if (i < 1 || i > rank()) {
      throw DegenerateFrame("Frenet vector V" + std::to_string(i) +
                                " undefined: frame rank is " +
                                std::to_string(rank()),
                            t);
    }
    return frame[static_cast<std::size_t>(i - 1)];
  }

  double curvature(int i) const {  // k_i, 1-based
    if (i < 1 || i >= rank()) {
      throw DegenerateFrame("curvature k" + std::to_string(i) +
                                " undefined: frame rank is " +
                                std::to_string(rank()),
                            t);
    }
    return curvatures[i - 1];
  }
};

/// Arclength reparametrization via a cumulative-length table and monotone
/// cubic Hermite inversion. The result runs over [0, total_length].
AmbientCurve reparametrize_unit_speed(const AmbientCurve& c, int samples);

/// Gram-Schmidt frame on gamma', gamma'', ..., gamma^(max_order); stops at the
/// first dropped derivative. Curvatures come from finite differences of the
/// frame itself.
FrenetApparatus frenet(const AmbientCurve& c, double t, int max_order,
                       const ToleranceProfile& tol = {});

struct SlantHelixReport {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  double spread = 0.0;  // max - min
  bool is_slant = false;
  std::vector<double> values;  // <V2, d> per sample
};

SlantHelixReport slant_helix_test(const AmbientCurve& c, const Vec& d,
                                  const std::vector<double>& sample_ts,
                                  double tol,
                                  const ToleranceProfile& profile = {});

/// k_T = ||V(T, T)|| for the unit-speed curve through the chart.
double normal_curvature(const ParamCurve& pc, double t,
                        const ToleranceProfile& tol = {});

/// ||P_tan gamma''||; zero characterizes geodesics.
double geodesic_residual(const ParamCurve& pc, double t,
                         const ToleranceProfile& tol = {});

}  // namespace helixlab
