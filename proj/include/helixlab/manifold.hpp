#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "helixlab/numerics.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

/// Axis-aligned box in parameter space.
struct Box {
  Vec lo, hi;

  bool contains(const Vec& u) const {
    for (int i = 0; i < u.size(); ++i) {
      if (u[i] < lo[i] || u[i] > hi[i]) return false;
    }
    return true;
  }

  static Box cube(int m, double a, double b) {
    Box box;
    box.lo = Vec::Constant(m, a);
    box.hi = Vec::Constant(m, b);
    return box;
  }
};

/// An immersion f: U subset R^m -> R^n. Differentiation falls back to central
/// differences; analytic Jacobian/Hessian evaluators take precedence when
/// attached (the catalog attaches exact ones built from expression trees).
/// Immutable after construction; evaluators must be re-entrant.
class ImmersedPatch {
public:
  using MapFn = std::function<Vec(const Vec&)>;
  using JacobianFn = std::function<Mat(const Vec&)>;
  using HessianFn = std::function<Vec(const Vec&, int, int)>;

  ImmersedPatch(MapFn map, int param_dim, int ambient_dim, Box domain)
      : map_(std::move(map)),
        m_(param_dim),
        n_(ambient_dim),
        domain_(std::move(domain)) {
    if (m_ < 1 || m_ >= n_) {
      throw BadParameter("ImmersedPatch: need 1 <= param_dim < ambient_dim");
    }
  }

  int param_dim() const { return m_; }
  int ambient_dim() const { return n_; }
  const Box& domain() const { return domain_; }
  double fd_step() const { return fd_step_; }
  double fd_step2() const { return fd_step2_; }

  void set_fd_step(double h) { fd_step_ = h; }
  void set_fd_step2(double h) { fd_step2_ = h; }
  void set_analytic_jacobian(JacobianFn j) { jac_ = std::move(j); }
  void set_analytic_hessian(HessianFn h) { hess_ = std::move(h); }
  bool has_analytic_jacobian() const { return static_cast<bool>(jac_); }

  Vec eval(const Vec& u) const { return map_(u); }
  const MapFn& map() const { return map_; }

  void require_in_domain(const Vec& u) const {
    if (u.size() != m_) throw BadParameter("parameter point has wrong dimension");
    if (!domain_.contains(u)) throw OutOfDomain("parameter point outside patch domain");
  }

  /// d f / du_j columns; analytic when attached, otherwise central differences
  /// with step fd_step * max(1, |u|).
  Mat jacobian_at(const Vec& u) const;

  /// d^2 f / du_i du_j. Preference order: analytic Hessian, central difference
  /// of the analytic Jacobian, mixed second difference of the map.
  Vec hessian_at(const Vec& u, int i, int j) const;

private:
  MapFn map_;
  int m_, n_;
  Box domain_;
  double fd_step_ = 1e-5;   // first-order step coefficient
  double fd_step2_ = 2.5e-4;  // second-order step coefficient (map-only fallback)
  JacobianFn jac_;
  HessianFn hess_;
};

/// Orthonormal tangent/normal frame at a point.
struct PointFrame {
  Vec u;             // parameter point
  Vec p;             // ambient point f(u)
  Subspace tangent;  // dim m
  Subspace normal;   // dim n - m
  Mat P_tan;         // n x n tangent projector
};

struct ShapeOperatorData {
  PointFrame frame;
  Vec N;                     // unit normal the operator is taken against
  Mat A;                     // m x m, in the orthonormal tangent basis
  Vec principal_curvatures;  // ascending
  Mat principal_vectors;     // n x m ambient unit vectors (columns)
};

Mat jacobian(const ImmersedPatch& patch, const Vec& u);

PointFrame point_frame(const ImmersedPatch& patch, const Vec& u,
                       const ToleranceProfile& tol = {});

/// Normal component V(X, Y) of the ambient second derivative, for coordinate
/// representations x, y of tangent vectors.
Vec second_fundamental_form(const ImmersedPatch& patch, const Vec& u,
                            const Vec& x, const Vec& y,
                            const ToleranceProfile& tol = {});

/// Shape operator A_N with A_N(X) = tang(-d_X N); built from
/// <V(t_i, t_j), N> on the orthonormal tangent basis.
ShapeOperatorData shape_operator(const ImmersedPatch& patch, const Vec& u,
                                 const Vec& N, const ToleranceProfile& tol = {});

/// Christoffel symbols of the induced metric g = J^T J; result[k](i, j).
std::vector<Mat> christoffel(const ImmersedPatch& patch, const Vec& u,
                             const ToleranceProfile& tol = {});

/// Tangential/normal split of the ambient second-derivative expression for
/// constant coordinate fields x, y.
std::pair<Vec, Vec> gauss_split(const ImmersedPatch& patch, const Vec& u,
                                const Vec& x, const Vec& y,
                                const ToleranceProfile& tol = {});

/// Solve J c = w for the coordinates of an ambient tangent vector.
Vec tangent_coordinates(const Mat& jacobian, const Vec& w);

/// Uniform grid over a box, per-dimension count chosen so the total stays
/// near `target` and never exceeds 512. seed = 0 places points at a fixed
/// in-cell offset; a nonzero seed jitters each point inside its cell
/// (deterministically for that seed).
std::vector<Vec> sample_grid(const Box& box, int target, unsigned seed = 0);

/// Default sampling grid for a patch: 8^m points capped at 512, over the
/// patch domain.
std::vector<Vec> default_patch_grid(const ImmersedPatch& patch);

}  // namespace helixlab
