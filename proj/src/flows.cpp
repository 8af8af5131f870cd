#include "helixlab/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace helixlab {

namespace {

/// Stored RK4 steps with cubic Hermite dense output.
struct Trace {
  std::vector<double> ts;
  std::vector<Vec> us;
  std::vector<Vec> dus;

  int segment(double t) const {
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    return std::clamp(static_cast<int>(it - ts.begin()) - 1, 0,
                      static_cast<int>(ts.size()) - 2);
  }

  Vec eval(double t) const {
    int i = segment(t);
    double h = ts[i + 1] - ts[i];
    double x = (t - ts[i]) / h;
    double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    double h10 = x * (1 - x) * (1 - x);
    double h01 = x * x * (3 - 2 * x);
    double h11 = x * x * (x - 1);
    return h00 * us[i] + h10 * h * dus[i] + h01 * us[i + 1] + h11 * h * dus[i + 1];
  }

  Vec deriv(double t, int order) const {
    int i = segment(t);
    double h = ts[i + 1] - ts[i];
    double x = (t - ts[i]) / h;
    if (order == 1) {
      double d00 = 6 * x * (x - 1);
      double d10 = (1 - x) * (1 - 3 * x);
      double d11 = x * (3 * x - 2);
      return d00 * (us[i] - us[i + 1]) / h + d10 * dus[i] + d11 * dus[i + 1];
    }
    if (order == 2) {
      double s00 = 12 * x - 6;
      double s10 = 6 * x - 4;
      double s11 = 6 * x - 2;
      return (s00 * (us[i] - us[i + 1]) / h + s10 * dus[i] + s11 * dus[i + 1]) / h;
    }
    throw BadParameter("trace interpolation provides derivative orders 1 and 2");
  }
};

ParamCurve trace_to_curve(std::shared_ptr<const ImmersedPatch> patch,
                          std::shared_ptr<const Trace> trace) {
  ParamCurve pc;
  pc.patch = std::move(patch);
  pc.t0 = trace->ts.front();
  pc.t1 = trace->ts.back();
  pc.u_of_t = [trace](double t) { return trace->eval(t); };
  pc.u_analytic = [trace](double t, int order) { return trace->deriv(t, order); };
  pc.u_analytic_max = 2;
  return pc;
}

}  // namespace

FlowResult integrate_geodesic(std::shared_ptr<const ImmersedPatch> patch,
                              const Vec& u0, const Vec& v0, double length,
                              double step, const ToleranceProfile& tol) {
  patch->require_in_domain(u0);
  if (length <= 0.0 || step <= 0.0) {
    throw BadParameter("integrate_geodesic: length and step must be positive");
  }
  {
    double speed = (patch->jacobian_at(u0) * v0).norm();
    if (std::abs(speed - 1.0) > tol.unit_norm) {
      throw BadParameter("integrate_geodesic: v0 must give unit ambient speed, got " +
                         std::to_string(speed));
    }
  }
  const int m = patch->param_dim();
  auto accel = [&](const Vec& u, const Vec& w) -> Vec {
    std::vector<Mat> gamma = christoffel(*patch, u, tol);
    Vec a(m);
    for (int k = 0; k < m; ++k) a[k] = -w.dot(gamma[k] * w);
    return a;
  };

  const int nsteps = std::max(1, static_cast<int>(std::llround(length / step)));
  const double h = length / nsteps;

  auto trace = std::make_shared<Trace>();
  trace->ts.reserve(nsteps + 1);
  trace->us.reserve(nsteps + 1);
  trace->dus.reserve(nsteps + 1);

  Vec u = u0, w = v0;
  trace->ts.push_back(0.0);
  trace->us.push_back(u);
  trace->dus.push_back(w);
  for (int k = 0; k < nsteps; ++k) {
    try {
      Vec ku1 = w, kw1 = accel(u, w);
      Vec ku2 = w + 0.5 * h * kw1, kw2 = accel(u + 0.5 * h * ku1, ku2);
      Vec ku3 = w + 0.5 * h * kw2, kw3 = accel(u + 0.5 * h * ku2, ku3);
      Vec ku4 = w + h * kw3, kw4 = accel(u + h * ku3, ku4);
      u = u + h / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
      w = w + h / 6.0 * (kw1 + 2.0 * kw2 + 2.0 * kw3 + kw4);
    } catch (const OutOfDomain&) {
      throw LeftDomain("geodesic left the chart domain", u);
    }
    if (!patch->domain().contains(u)) {
      throw LeftDomain("geodesic left the chart domain", u);
    }
    trace->ts.push_back((k + 1) * h);
    trace->us.push_back(u);
    trace->dus.push_back(w);
  }

  FlowResult result;
  result.steps = nsteps;
  result.curve = trace_to_curve(patch, trace);

  // a-posteriori defect: tangential part of the trace acceleration, with u''
  // taken from differences of the stored velocities (independent of the ODE
  // right-hand side, which satisfies the geodesic equation by construction)
  double worst = 0.0;
  for (int k = 1; k + 1 < static_cast<int>(trace->us.size()); ++k) {
    const Vec& uk = trace->us[k];
    const Vec& wk = trace->dus[k];
    Vec ddu = (trace->dus[k + 1] - trace->dus[k - 1]) / (2.0 * h);
    Mat J = patch->jacobian_at(uk);
    Vec acc = J * ddu;
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double wgt = (i == j) ? wk[i] * wk[j] : 2.0 * wk[i] * wk[j];
        if (wgt != 0.0) acc += wgt * patch->hessian_at(uk, i, j);
      }
    }
    PointFrame f = point_frame(*patch, uk, tol);
    worst = std::max(worst, (f.P_tan * acc).norm());
  }
  result.max_defect = worst;
  return result;
}

FlowResult integrate_curvature_line(std::shared_ptr<const ImmersedPatch> patch,
                                    const Vec& u0, const NormalField& normal_field,
                                    int eig_index, double length, double step,
                                    const ToleranceProfile& tol) {
  patch->require_in_domain(u0);
  const int m = patch->param_dim();
  if (eig_index < 0 || eig_index >= m) {
    throw BadParameter("integrate_curvature_line: eig_index out of range");
  }
  if (length <= 0.0 || step <= 0.0) {
    throw BadParameter("integrate_curvature_line: length and step must be positive");
  }

  Vec ref_w;  // ambient direction of the previous evaluation
  auto field = [&](const Vec& u) -> std::pair<Vec, Vec> {
    ShapeOperatorData data = shape_operator(*patch, u, normal_field(u), tol);
    const Vec& lam = data.principal_curvatures;
    double gap = std::numeric_limits<double>::infinity();
    if (eig_index > 0) gap = std::min(gap, lam[eig_index] - lam[eig_index - 1]);
    if (eig_index + 1 < m) gap = std::min(gap, lam[eig_index + 1] - lam[eig_index]);
    if (gap < tol.eig_gap) {
      throw UmbilicEncountered("principal curvature gap " + std::to_string(gap) +
                                   " below tolerance",
                               u);
    }
    Vec w = data.principal_vectors.col(eig_index);
    if (ref_w.size() > 0 && w.dot(ref_w) < 0.0) w = -w;
    Vec c = tangent_coordinates(patch->jacobian_at(u), w);
    return {c, w};
  };

  const int nsteps = std::max(1, static_cast<int>(std::llround(length / step)));
  const double h = length / nsteps;

  auto trace = std::make_shared<Trace>();
  Vec u = u0;
  {
    auto [c, w] = field(u);
    ref_w = w;
    trace->ts.push_back(0.0);
    trace->us.push_back(u);
    trace->dus.push_back(c);
  }
  for (int k = 0; k < nsteps; ++k) {
    try {
      Vec k1 = field(u).first;
      Vec k2 = field(u + 0.5 * h * k1).first;
      Vec k3 = field(u + 0.5 * h * k2).first;
      Vec k4 = field(u + h * k3).first;
      u = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const OutOfDomain&) {
      throw LeftDomain("curvature line left the chart domain", u);
    }
    if (!patch->domain().contains(u)) {
      throw LeftDomain("curvature line left the chart domain", u);
    }
    auto [c, w] = field(u);
    ref_w = w;
    trace->ts.push_back((k + 1) * h);
    trace->us.push_back(u);
    trace->dus.push_back(c);
  }

  FlowResult result;
  result.steps = nsteps;
  result.curve = trace_to_curve(patch, trace);

  // worst angle between the finite-difference trace tangent and the local
  // principal direction
  double worst = 0.0;
  for (int k = 1; k + 1 < static_cast<int>(trace->us.size()); ++k) {
    Vec p_prev = patch->eval(trace->us[k - 1]);
    Vec p_next = patch->eval(trace->us[k + 1]);
    Vec tangent = (p_next - p_prev).normalized();
    ShapeOperatorData data =
        shape_operator(*patch, trace->us[k], normal_field(trace->us[k]), tol);
    double align = std::abs(tangent.dot(data.principal_vectors.col(eig_index)));
    worst = std::max(worst, std::acos(std::clamp(align, 0.0, 1.0)));
  }
  result.max_defect = worst;
  return result;
}

LocReport line_of_curvature_test(const ParamCurve& pc,
                                 const NormalField& normal_field,
                                 const std::vector<double>& sample_ts, double tol,
                                 const ToleranceProfile& profile) {
  if (sample_ts.empty()) throw BadParameter("line_of_curvature_test: no samples");
  AmbientCurve amb = pc.ambient();
  LocReport rep;
  rep.lambdas.reserve(sample_ts.size());
  for (double t : sample_ts) {
    Vec T = curve_derivative(amb, t, 1);
    if (std::abs(T.norm() - 1.0) > profile.unit_speed) {
      throw IrregularCurve("line_of_curvature_test: curve is not unit-speed at t=" +
                           std::to_string(t));
    }
    Vec u = pc.u_at(t);
    ShapeOperatorData data = shape_operator(*pc.patch, u, normal_field(u), profile);
    Vec t_hat = data.frame.tangent.basis.transpose() * T;
    Vec at = data.A * t_hat;
    double lambda = at.dot(t_hat) / t_hat.squaredNorm();
    rep.lambdas.push_back(lambda);
    double defect = (at - lambda * t_hat).norm();
    rep.max_angle_defect = std::max(rep.max_angle_defect, defect);
  }
  rep.is_loc = rep.max_angle_defect <= tol;
  return rep;
}

}  // namespace helixlab
