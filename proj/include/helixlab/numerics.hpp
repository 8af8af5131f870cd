#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "helixlab/errors.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using VectorField = std::function<Vec(const Vec&)>;

/// A linear subspace of R^n held as an orthonormal column basis (n x r).
struct Subspace {
  Mat basis;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient_dim() const { return static_cast<int>(basis.rows()); }

  /// Orthogonal projector basis * basis^T (n x n).
  Mat projector() const { return basis * basis.transpose(); }

  /// Norm of the component of v outside the subspace.
  double distance(const Vec& v) const {
    return (v - basis * (basis.transpose() * v)).norm();
  }
};

/// Default step for first-order central differences: coeff * max(1, |x|).
inline double fd_scale(double coeff, double x_norm) {
  return coeff * std::max(1.0, x_norm);
}

// Optimal central-difference steps for double precision at unit scale,
// eps^(1/(order+2)). Index by derivative order (1-based, [0] unused).
inline constexpr double kFdStepForOrder[7] = {0.0,    6.0e-6, 1.2e-4, 7.4e-4,
                                              2.4e-3, 5.8e-3, 1.1e-2};

/// (f(x + h e_dir) - f(x - h e_dir)) / (2h). O(h^2) accurate.
Vec central_diff(const VectorField& f, const Vec& x, int dir, double h);

/// d^2 f / du_i du_j at x via the mixed central stencil; symmetric in (i, j).
Vec second_diff(const VectorField& f, const Vec& x, int dir_i, int dir_j,
                double h);

/// Modified Gram-Schmidt with a second re-orthogonalization pass. Vectors
/// whose residual norm falls below `tol` after projection are dropped; the
/// returned subspace dimension is the retained count.
Subspace orthonormalize(const std::vector<Vec>& vectors, double tol);
Subspace orthonormalize(const Mat& columns, double tol);

/// Orthonormal basis of the orthogonal complement of s in R^ambient_dim.
Subspace orthogonal_complement(const Subspace& s, int ambient_dim);

struct SymEigResult {
  Vec values;   // ascending
  Mat vectors;  // orthonormal columns, sign-normalized
};

/// Eigendecomposition of a (nearly) symmetric matrix. The input is
/// symmetrized first; eigenvalues come out ascending and each eigenvector is
/// flipped so its largest-magnitude entry (first such entry on ties) is
/// positive.
SymEigResult sym_eig(const Mat& m);

}  // namespace helixlab
