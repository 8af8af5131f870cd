#include "helixlab/numerics.hpp"

#include <cmath>

namespace helixlab {

namespace {

Vec checked_eval(const VectorField& f, const Vec& x) {
  Vec y = f(x);
  if (!y.allFinite()) {
    throw NumericalDomain("map produced a non-finite value during differentiation");
  }
  return y;
}

Vec shifted(const Vec& x, int dir, double delta) {
  Vec y = x;
  y[dir] += delta;
  return y;
}

}  // namespace

Vec central_diff(const VectorField& f, const Vec& x, int dir, double h) {
  if (h <= 0.0) throw BadParameter("central_diff: step must be positive");
  Vec fp = checked_eval(f, shifted(x, dir, h));
  Vec fm = checked_eval(f, shifted(x, dir, -h));
  return (fp - fm) / (2.0 * h);
}

Vec second_diff(const VectorField& f, const Vec& x, int dir_i, int dir_j,
                double h) {
  if (h <= 0.0) throw BadParameter("second_diff: step must be positive");
  if (dir_i == dir_j) {
    Vec fp = checked_eval(f, shifted(x, dir_i, h));
    Vec f0 = checked_eval(f, x);
    Vec fm = checked_eval(f, shifted(x, dir_i, -h));
    return (fp - 2.0 * f0 + fm) / (h * h);
  }
  Vec fpp = checked_eval(f, shifted(shifted(x, dir_i, h), dir_j, h));
  Vec fpm = checked_eval(f, shifted(shifted(x, dir_i, h), dir_j, -h));
  Vec fmp = checked_eval(f, shifted(shifted(x, dir_i, -h), dir_j, h));
  Vec fmm = checked_eval(f, shifted(shifted(x, dir_i, -h), dir_j, -h));
  return (fpp - fpm - fmp + fmm) / (4.0 * h * h);
}

Subspace orthonormalize(const std::vector<Vec>& vectors, double tol) {
  std::vector<Vec> kept;
  for (const Vec& v : vectors) {
    Vec w = v;
    // two projection passes: the second cleans up what cancellation left behind
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& q : kept) w -= q.dot(w) * q;
    }
    double norm = w.norm();
    if (norm < tol) continue;
    kept.push_back(w / norm);
  }
  Subspace s;
  const int n = vectors.empty() ? 0 : static_cast<int>(vectors.front().size());
  s.basis.resize(n, static_cast<int>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) s.basis.col(i) = kept[i];
  return s;
}

Subspace orthonormalize(const Mat& columns, double tol) {
  std::vector<Vec> vs;
  vs.reserve(columns.cols());
  for (int j = 0; j < columns.cols(); ++j) vs.push_back(columns.col(j));
  Subspace s = orthonormalize(vs, tol);
  if (s.basis.rows() == 0) s.basis.resize(columns.rows(), 0);
  return s;
}

Subspace orthogonal_complement(const Subspace& s, int ambient_dim) {
  const int r = s.dim();
  if (r > ambient_dim) {
    throw BadParameter("orthogonal_complement: subspace dim exceeds ambient dim");
  }
  Subspace out;
  if (r == ambient_dim) {
    out.basis.resize(ambient_dim, 0);
    return out;
  }
  if (r == 0) {
    out.basis = Mat::Identity(ambient_dim, ambient_dim);
    return out;
  }
  // Householder QR of the basis: the trailing columns of Q span the complement.
  Eigen::HouseholderQR<Mat> qr(s.basis);
  Mat q = qr.householderQ();
  out.basis = q.rightCols(ambient_dim - r);
  return out;
}

SymEigResult sym_eig(const Mat& m) {
  if (m.rows() != m.cols()) throw BadParameter("sym_eig: matrix must be square");
  Mat sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  SymEigResult r;
  r.values = solver.eigenvalues();
  r.vectors = solver.eigenvectors();
  for (int j = 0; j < r.vectors.cols(); ++j) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < r.vectors.rows(); ++i) {
      double a = std::abs(r.vectors(i, j));
      if (a > best + 1e-14) {
        best = a;
        imax = i;
      }
    }
    if (r.vectors(imax, j) < 0.0) r.vectors.col(j) *= -1.0;
  }
  return r;
}

}  // namespace helixlab
