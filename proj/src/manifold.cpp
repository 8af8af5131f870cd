#include "helixlab/manifold.hpp"

#include <cmath>
#include <random>

namespace helixlab {

Mat ImmersedPatch::jacobian_at(const Vec& u) const {
  if (jac_) return jac_(u);
  Mat J(n_, m_);
  const double h = fd_scale(fd_step_, u.norm());
  for (int j = 0; j < m_; ++j) J.col(j) = central_diff(map_, u, j, h);
  return J;
}

Vec ImmersedPatch::hessian_at(const Vec& u, int i, int j) const {
  if (hess_) return hess_(u, i, j);
  if (jac_) {
    auto column = [this, j](const Vec& v) -> Vec { return jac_(v).col(j); };
    return central_diff(column, u, i, fd_scale(fd_step_, u.norm()));
  }
  return second_diff(map_, u, i, j, fd_scale(fd_step2_, u.norm()));
}

Mat jacobian(const ImmersedPatch& patch, const Vec& u) {
  patch.require_in_domain(u);
  return patch.jacobian_at(u);
}

PointFrame point_frame(const ImmersedPatch& patch, const Vec& u,
                       const ToleranceProfile& tol) {
  patch.require_in_domain(u);
  const int m = patch.param_dim();
  const int n = patch.ambient_dim();
  Mat J = patch.jacobian_at(u);
  Subspace tangent = orthonormalize(J, tol.rank_drop);
  if (tangent.dim() < m) {
    throw RankDeficient("immersion violated: Jacobian rank " +
                            std::to_string(tangent.dim()) + " < " +
                            std::to_string(m),
                        u);
  }
  PointFrame f;
  f.u = u;
  f.p = patch.eval(u);
  f.tangent = std::move(tangent);
  f.normal = orthogonal_complement(f.tangent, n);
  f.P_tan = f.tangent.projector();
  return f;
}

namespace {

/// sum_ij x_i y_j d^2 f / du_i du_j
Vec contracted_hessian(const ImmersedPatch& patch, const Vec& u, const Vec& x,
                       const Vec& y) {
  const int m = patch.param_dim();
  Vec acc = Vec::Zero(patch.ambient_dim());
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double w = (i == j) ? x[i] * y[j] : x[i] * y[j] + x[j] * y[i];
      if (w == 0.0) continue;
      acc += w * patch.hessian_at(u, i, j);
    }
  }
  return acc;
}

}  // namespace

Vec second_fundamental_form(const ImmersedPatch& patch, const Vec& u,
                            const Vec& x, const Vec& y,
                            const ToleranceProfile& tol) {
  PointFrame f = point_frame(patch, u, tol);
  Vec s = contracted_hessian(patch, u, x, y);
  return s - f.P_tan * s;
}

std::pair<Vec, Vec> gauss_split(const ImmersedPatch& patch, const Vec& u,
                                const Vec& x, const Vec& y,
                                const ToleranceProfile& tol) {
  PointFrame f = point_frame(patch, u, tol);
  Vec s = contracted_hessian(patch, u, x, y);
  Vec tang = f.P_tan * s;
  return {tang, s - tang};
}

ShapeOperatorData shape_operator(const ImmersedPatch& patch, const Vec& u,
                                 const Vec& N, const ToleranceProfile& tol) {
  PointFrame f = point_frame(patch, u, tol);
  if (std::abs(N.norm() - 1.0) > tol.unit_norm) {
    throw NotNormal("shape_operator: N is not a unit vector");
  }
  if ((f.P_tan * N).norm() > tol.normal_membership) {
    throw NotNormal("shape_operator: N is not in the normal space");
  }
  const int m = patch.param_dim();
  Mat J = patch.jacobian_at(u);

  // coordinates of the orthonormal tangent basis vectors
  std::vector<Vec> coords(m);
  for (int a = 0; a < m; ++a) {
    coords[a] = tangent_coordinates(J, f.tangent.basis.col(a));
  }

  // Hessian tensor once, then all pairs
  std::vector<std::vector<Vec>> hess(m, std::vector<Vec>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      hess[i][j] = patch.hessian_at(u, i, j);
      if (j != i) hess[j][i] = hess[i][j];
    }
  }
  auto second_form = [&](const Vec& x, const Vec& y) -> Vec {
    Vec acc = Vec::Zero(patch.ambient_dim());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) acc += x[i] * y[j] * hess[i][j];
    }
    return acc - f.P_tan * acc;
  };

  Mat A(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      double v = second_form(coords[a], coords[b]).dot(N);
      A(a, b) = v;
      A(b, a) = v;
    }
  }

  SymEigResult eig = sym_eig(A);
  ShapeOperatorData data;
  data.N = N;
  data.A = std::move(A);
  data.principal_curvatures = eig.values;
  data.principal_vectors = f.tangent.basis * eig.vectors;
  data.frame = std::move(f);
  return data;
}

std::vector<Mat> christoffel(const ImmersedPatch& patch, const Vec& u,
                             const ToleranceProfile& tol) {
  patch.require_in_domain(u);
  const int m = patch.param_dim();
  auto metric = [&patch](const Vec& v) -> Mat {
    Mat J = patch.jacobian_at(v);
    return J.transpose() * J;
  };
  Mat g = metric(u);
  if (std::abs(g.determinant()) < tol.metric_det_min) {
    throw SingularMetric("metric determinant below threshold");
  }
  Mat ginv = g.inverse();

  const double h = fd_scale(patch.fd_step(), u.norm());
  std::vector<Mat> dg(m);
  for (int l = 0; l < m; ++l) {
    Vec up = u, um = u;
    up[l] += h;
    um[l] -= h;
    dg[l] = (metric(up) - metric(um)) / (2.0 * h);
  }

  std::vector<Mat> gamma(m, Mat::Zero(m, m));
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double acc = 0.0;
        for (int l = 0; l < m; ++l) {
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        gamma[k](i, j) = 0.5 * acc;
        gamma[k](j, i) = gamma[k](i, j);
      }
    }
  }
  return gamma;
}

Vec tangent_coordinates(const Mat& jacobian, const Vec& w) {
  Mat gram = jacobian.transpose() * jacobian;
  return gram.ldlt().solve(jacobian.transpose() * w);
}

std::vector<Vec> sample_grid(const Box& box, int target, unsigned seed) {
  const int m = static_cast<int>(box.lo.size());
  auto total = [m](int per_dim) {
    long long t = 1;
    for (int i = 0; i < m; ++i) t *= per_dim;
    return t;
  };
  // At least 3 cells per axis: two samples along a 2*pi-periodic coordinate
  // land half a period apart and give identical tangent projectors.
  int per_dim = std::max(3, static_cast<int>(std::floor(
                                std::pow(static_cast<double>(target),
                                         1.0 / static_cast<double>(m)) +
                                1e-9)));
  if (m == 1) per_dim = std::max(target, 3);
  while (per_dim > 3 && total(per_dim) > 512) --per_dim;

  // An irrational in-cell offset instead of exact midpoints: midpoint grids
  // on periodic charts can alias symmetric angle values and hide projector
  // variation from downstream estimators.
  constexpr double kOffset = 0.38196601125010515;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(0.05, 0.95);
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(total(per_dim)));
  std::vector<int> idx(m, 0);
  while (true) {
    Vec u(m);
    for (int i = 0; i < m; ++i) {
      double w = (box.hi[i] - box.lo[i]) / per_dim;
      double offset = seed == 0 ? kOffset : jitter(rng);
      u[i] = box.lo[i] + (idx[i] + offset) * w;
    }
    points.push_back(u);
    int carry = m - 1;
    while (carry >= 0 && ++idx[carry] == per_dim) idx[carry--] = 0;
    if (carry < 0) break;
  }
  return points;
}

std::vector<Vec> default_patch_grid(const ImmersedPatch& patch) {
  long long target = 1;
  for (int i = 0; i < patch.param_dim(); ++i) target *= 8;
  return sample_grid(patch.domain(), static_cast<int>(std::min<long long>(target, 512)));
}

}  // namespace helixlab
