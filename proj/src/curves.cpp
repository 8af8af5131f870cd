#include "helixlab/curves.hpp"

#include <algorithm>
#include <cmath>

namespace helixlab {

namespace {

Vec checked(const Vec& v) {
  if (!v.allFinite()) throw NumericalDomain("curve produced a non-finite value");
  return v;
}

Vec stencil_derivative(const std::function<Vec(double)>& f, double t, int order,
                       double h) {
  switch (order) {
    case 1:
      return (checked(f(t + h)) - checked(f(t - h))) / (2.0 * h);
    case 2:
      return (checked(f(t + h)) - 2.0 * checked(f(t)) + checked(f(t - h))) /
             (h * h);
    case 3:
      return (checked(f(t + 2 * h)) - 2.0 * checked(f(t + h)) +
              2.0 * checked(f(t - h)) - checked(f(t - 2 * h))) /
             (2.0 * h * h * h);
    case 4:
      return (checked(f(t + 2 * h)) - 4.0 * checked(f(t + h)) +
              6.0 * checked(f(t)) - 4.0 * checked(f(t - h)) +
              checked(f(t - 2 * h))) /
             (h * h * h * h);
    case 5:
      return (checked(f(t + 3 * h)) - 4.0 * checked(f(t + 2 * h)) +
              5.0 * checked(f(t + h)) - 5.0 * checked(f(t - h)) +
              4.0 * checked(f(t - 2 * h)) - checked(f(t - 3 * h))) /
             (2.0 * std::pow(h, 5));
    default:
      throw BadParameter(
          "finite differences support derivative orders <= 5; attach analytic "
          "derivatives for higher orders");
  }
}

}  // namespace

Vec curve_derivative(const AmbientCurve& c, double t, int order) {
  if (order < 1) throw BadParameter("curve_derivative: order must be >= 1");
  if (c.analytic && order <= c.analytic_max_order) return c.analytic(t, order);
  if (c.analytic && c.analytic_max_order >= 1) {
    // differentiate the highest analytic order the rest of the way
    int extra = order - c.analytic_max_order;
    std::function<Vec(double)> g = [&c](double s) {
      return c.analytic(s, c.analytic_max_order);
    };
    if (extra > 5) throw BadParameter("derivative order too high");
    double h = fd_scale(kFdStepForOrder[extra], std::abs(t));
    return stencil_derivative(g, t, extra, h);
  }
  double h = order == 1 ? fd_scale(c.fd_step, std::abs(t))
                        : fd_scale(kFdStepForOrder[order], std::abs(t));
  return stencil_derivative(c.map, t, order, h);
}

Vec ParamCurve::u_velocity(double t) const {
  if (u_analytic && u_analytic_max >= 1) return u_analytic(t, 1);
  double h = fd_scale(fd_step, std::abs(t));
  return (u_of_t(t + h) - u_of_t(t - h)) / (2.0 * h);
}

AmbientCurve ParamCurve::ambient() const {
  AmbientCurve c;
  auto p = patch;
  auto u = u_of_t;
  c.map = [p, u](double t) { return p->eval(u(t)); };
  c.t0 = t0;
  c.t1 = t1;
  c.dim = p->ambient_dim();
  c.fd_step = fd_step;
  if (ambient_analytic) {
    c.analytic = ambient_analytic;
    c.analytic_max_order = ambient_analytic_max;
  } else if (u_analytic && u_analytic_max >= 2 && p->has_analytic_jacobian()) {
    auto ud = u_analytic;
    c.analytic = [p, u, ud](double t, int order) -> Vec {
      Vec ut = u(t);
      Vec du = ud(t, 1);
      Mat J = p->jacobian_at(ut);
      if (order == 1) return J * du;
      // gamma'' = sum_ij H_ij du_i du_j + J u''
      Vec ddu = ud(t, 2);
      Vec acc = J * ddu;
      const int m = p->param_dim();
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
          double w = (i == j) ? du[i] * du[j] : 2.0 * du[i] * du[j];
          if (w != 0.0) acc += w * p->hessian_at(ut, i, j);
        }
      }
      return acc;
    };
    c.analytic_max_order = 2;
  } else if (u_analytic && u_analytic_max >= 1 && p->has_analytic_jacobian()) {
    auto ud = u_analytic;
    c.analytic = [p, u, ud](double t, int) -> Vec {
      return p->jacobian_at(u(t)) * ud(t, 1);
    };
    c.analytic_max_order = 1;
  }
  return c;
}

namespace {

struct GsFrame {
  std::vector<Vec> frame;
};

/// Gram-Schmidt on the first `max_order` derivatives, stopping at the first
/// residual below `drop`.
GsFrame frenet_frame_at(const AmbientCurve& c, double t, int max_order,
                        double drop) {
  GsFrame out;
  for (int order = 1; order <= max_order; ++order) {
    Vec w = curve_derivative(c, t, order);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& q : out.frame) w -= q.dot(w) * q;
    }
    double norm = w.norm();
    if (norm < drop) break;
    out.frame.push_back(w / norm);
  }
  return out;
}

void align_signs(std::vector<Vec>& frame, const std::vector<Vec>& reference) {
  for (std::size_t i = 0; i < frame.size() && i < reference.size(); ++i) {
    if (frame[i].dot(reference[i]) < 0.0) frame[i] = -frame[i];
  }
}

}  // namespace

FrenetApparatus frenet(const AmbientCurve& c, double t, int max_order,
                       const ToleranceProfile& tol) {
  if (max_order < 1) throw BadParameter("frenet: max_order must be >= 1");
  Vec v1 = curve_derivative(c, t, 1);
  if (v1.norm() < 1e-10) throw IrregularCurve("curve is singular at t");
  if (std::abs(v1.norm() - 1.0) > tol.unit_speed) {
    throw IrregularCurve("curve is not unit-speed at t (speed " +
                         std::to_string(v1.norm()) + ")");
  }

  FrenetApparatus app;
  app.t = t;
  app.frame = frenet_frame_at(c, t, max_order, tol.frenet_drop).frame;
  const int k = app.rank();
  app.curvatures = Vec::Zero(std::max(0, k - 1));
  if (k < 2) return app;

  const double delta =
      fd_scale(c.analytic_max_order >= 1 ? 6e-6 : 1e-3, std::abs(t));
  GsFrame fp = frenet_frame_at(c, t + delta, k, tol.frenet_drop);
  GsFrame fm = frenet_frame_at(c, t - delta, k, tol.frenet_drop);
  if (static_cast<int>(fp.frame.size()) < k ||
      static_cast<int>(fm.frame.size()) < k) {
    throw DegenerateFrame("transient Frenet rank drop near t", t);
  }
  align_signs(fp.frame, app.frame);
  align_signs(fm.frame, app.frame);
  for (int i = 1; i < k; ++i) {
    Vec dvi = (fp.frame[i - 1] - fm.frame[i - 1]) / (2.0 * delta);
    app.curvatures[i - 1] = dvi.dot(app.frame[i]);
  }
  return app;
}

AmbientCurve reparametrize_unit_speed(const AmbientCurve& c, int samples) {
  if (samples < 2) throw BadParameter("reparametrize_unit_speed: need >= 2 samples");
  const int n = samples;
  std::vector<double> ts(n), speeds(n), s(n);
  const double dt = (c.t1 - c.t0) / (n - 1);
  auto speed_at = [&c](double t) {
    double v = curve_derivative(c, t, 1).norm();
    if (v < 1e-10) throw IrregularCurve("curve speed below 1e-10 during reparametrization");
    return v;
  };
  for (int i = 0; i < n; ++i) {
    ts[i] = c.t0 + i * dt;
    speeds[i] = speed_at(ts[i]);
  }
  s[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    // Simpson on each interval
    double vm = speed_at(0.5 * (ts[i - 1] + ts[i]));
    s[i] = s[i - 1] + dt / 6.0 * (speeds[i - 1] + 4.0 * vm + speeds[i]);
  }
  const double total = s.back();

  // invert s -> t with cubic Hermite; exact slopes dt/ds = 1/speed
  auto t_of_s = [ts, s, speeds, total](double arc) -> std::pair<double, double> {
    double a = std::clamp(arc, 0.0, total);
    auto it = std::upper_bound(s.begin(), s.end(), a);
    int i = std::clamp(static_cast<int>(it - s.begin()) - 1, 0,
                       static_cast<int>(s.size()) - 2);
    double span = s[i + 1] - s[i];
    double x = (a - s[i]) / span;
    double m0 = 1.0 / speeds[i];      // dt/ds at left node
    double m1 = 1.0 / speeds[i + 1];  // ... right node
    double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    double h10 = x * (1 - x) * (1 - x);
    double h01 = x * x * (3 - 2 * x);
    double h11 = x * x * (x - 1);
    double tval =
        h00 * ts[i] + h10 * span * m0 + h01 * ts[i + 1] + h11 * span * m1;
    double d00 = 6 * x * (x - 1);
    double d10 = (1 - x) * (1 - 3 * x);
    double d11 = x * (3 * x - 2);
    double dtds = d00 * (ts[i] - ts[i + 1]) / span + d10 * m0 + d11 * m1;
    return {tval, dtds};
  };

  AmbientCurve out;
  AmbientCurve base = c;  // copy; closures below share it
  out.map = [base, t_of_s](double arc) { return base.map(t_of_s(arc).first); };
  out.t0 = 0.0;
  out.t1 = total;
  out.dim = c.dim;
  out.fd_step = c.fd_step;
  out.analytic = [base, t_of_s](double arc, int) -> Vec {
    auto [t, dtds] = t_of_s(arc);
    return curve_derivative(base, t, 1) * dtds;
  };
  out.analytic_max_order = 1;
  return out;
}

SlantHelixReport slant_helix_test(const AmbientCurve& c, const Vec& d,
                                  const std::vector<double>& sample_ts,
                                  double tol, const ToleranceProfile& profile) {
  if (std::abs(d.norm() - 1.0) > profile.unit_norm) {
    throw BadParameter("slant_helix_test: direction must be a unit vector");
  }
  if (sample_ts.empty()) throw BadParameter("slant_helix_test: no samples");
  SlantHelixReport rep;
  rep.values.reserve(sample_ts.size());
  for (double t : sample_ts) {
    try {
      FrenetApparatus app = frenet(c, t, 2, profile);
      rep.values.push_back(app.vec(2).dot(d));
    } catch (const DegenerateFrame& e) {
      throw DegenerateFrame(std::string(e.what()) + " (slant test sample t=" +
                                std::to_string(t) + ")",
                            t);
    }
  }
  rep.min = *std::min_element(rep.values.begin(), rep.values.end());
  rep.max = *std::max_element(rep.values.begin(), rep.values.end());
  double sum = 0.0;
  for (double v : rep.values) sum += v;
  rep.mean = sum / rep.values.size();
  double var = 0.0;
  for (double v : rep.values) var += (v - rep.mean) * (v - rep.mean);
  rep.stddev = std::sqrt(var / rep.values.size());
  rep.spread = rep.max - rep.min;
  rep.is_slant = rep.spread <= tol;
  return rep;
}

namespace {

void check_induced_unit_speed(const AmbientCurve& amb, double t,
                              const ToleranceProfile& tol) {
  double speed = curve_derivative(amb, t, 1).norm();
  if (std::abs(speed - 1.0) > tol.unit_speed) {
    throw IrregularCurve("induced curve is not unit-speed at t=" +
                         std::to_string(t) + " (speed " +
                         std::to_string(speed) + ")");
  }
}

}  // namespace

double normal_curvature(const ParamCurve& pc, double t,
                        const ToleranceProfile& tol) {
  AmbientCurve amb = pc.ambient();
  check_induced_unit_speed(amb, t, tol);
  Vec u = pc.u_at(t);
  Vec xdot = pc.u_velocity(t);
  return second_fundamental_form(*pc.patch, u, xdot, xdot, tol).norm();
}

double geodesic_residual(const ParamCurve& pc, double t,
                         const ToleranceProfile& tol) {
  AmbientCurve amb = pc.ambient();
  check_induced_unit_speed(amb, t, tol);
  PointFrame f = point_frame(*pc.patch, pc.u_at(t), tol);
  Vec acc = curve_derivative(amb, t, 2);
  return (f.P_tan * acc).norm();
}

}  // namespace helixlab
