#include "helixlab/helix.hpp"

#include <algorithm>
#include <cmath>

namespace helixlab {

double tangent_angle(const PointFrame& frame, const Vec& d,
                     const ToleranceProfile& tol) {
  if (std::abs(d.norm() - 1.0) > tol.unit_norm) {
    throw BadParameter("tangent_angle: d must be a unit vector");
  }
  double normal_part = (d - frame.P_tan * d).norm();
  return std::asin(std::clamp(normal_part, 0.0, 1.0));
}

DirectionDecomposition decompose_direction(const PointFrame& frame, const Vec& d,
                                           const ToleranceProfile& tol) {
  if (std::abs(d.norm() - 1.0) > tol.unit_norm) {
    throw BadParameter("decompose_direction: d must be a unit vector");
  }
  Vec p_t = frame.P_tan * d;
  Vec p_n = d - p_t;
  DirectionDecomposition dec;
  dec.d = d;
  double nn = p_n.norm();
  double nt = p_t.norm();
  // theta in [0, pi/2]; cos(theta) = ||normal part||, sin(theta) = ||tangent part||
  dec.theta = std::atan2(nt, nn);
  dec.normal_degenerate = nn < tol.decomposition_degenerate;
  dec.tangent_degenerate = nt < tol.decomposition_degenerate;
  dec.xi = dec.normal_degenerate ? Vec::Zero(d.size()).eval() : Vec(p_n / nn);
  dec.t_dir = dec.tangent_degenerate ? Vec::Zero(d.size()).eval() : Vec(p_t / nt);
  return dec;
}

HelixDirectionReport is_helix_direction(const ImmersedPatch& patch, const Vec& d,
                                        const std::vector<Vec>& sample_us,
                                        double tol,
                                        const ToleranceProfile& profile) {
  if (sample_us.size() < 8) {
    throw BadParameter("is_helix_direction: need at least 8 sample points");
  }
  HelixDirectionReport rep;
  rep.d = d;
  rep.angles.reserve(sample_us.size());
  for (const Vec& u : sample_us) {
    rep.angles.push_back(tangent_angle(point_frame(patch, u, profile), d, profile));
  }
  rep.min = *std::min_element(rep.angles.begin(), rep.angles.end());
  rep.max = *std::max_element(rep.angles.begin(), rep.angles.end());
  double sum = 0.0;
  for (double a : rep.angles) sum += a;
  rep.mean = sum / rep.angles.size();
  double var = 0.0;
  for (double a : rep.angles) var += (a - rep.mean) * (a - rep.mean);
  rep.stddev = std::sqrt(var / rep.angles.size());
  rep.spread = rep.max - rep.min;
  rep.is_helix = rep.spread <= tol;
  return rep;
}

HelixSpace estimate_helix_space(const ImmersedPatch& patch,
                                const std::vector<Vec>& sample_us, double tol,
                                const ToleranceProfile& profile) {
  if (sample_us.size() < 16) {
    throw BadParameter("estimate_helix_space: need at least 16 sample points");
  }
  const int n = patch.ambient_dim();

  std::vector<Mat> deviations;  // M_i = P_i - mean(P)
  deviations.reserve(sample_us.size());
  Mat mean = Mat::Zero(n, n);
  for (const Vec& u : sample_us) {
    Mat p = point_frame(patch, u, profile).P_tan;
    deviations.push_back(p);
    mean += p;
  }
  mean /= static_cast<double>(deviations.size());
  for (Mat& m : deviations) m -= mean;

  // Candidate directions ordered by how strongly the projectors move them:
  // ascending eigenvectors of the summed squared deviations.
  Mat accum = Mat::Zero(n, n);
  for (const Mat& m : deviations) accum += m * m;
  SymEigResult eig = sym_eig(accum);

  // Grow the space greedily. A candidate joins only if every deviation,
  // restricted to the enlarged space, stays below the tolerance in spectral
  // norm; that restriction is exactly what bounds the tangent-angle variation
  // of every unit vector of the result. (Candidates can pass in low dimension
  // even when the deviations move them: on a cone the axis direction has a
  // constant quadratic form while M_i d itself rotates.)
  Mat basis(n, 0);
  double worst = 0.0;
  for (int c = 0; c < n; ++c) {
    Mat trial(n, basis.cols() + 1);
    trial.leftCols(basis.cols()) = basis;
    trial.col(basis.cols()) = eig.vectors.col(c);
    double trial_worst = 0.0;
    for (const Mat& m : deviations) {
      Mat r = trial.transpose() * m * trial;
      trial_worst = std::max(trial_worst, sym_eig(r).values.cwiseAbs().maxCoeff());
      if (trial_worst > tol) break;
    }
    if (trial_worst <= tol) {
      basis = std::move(trial);
      worst = trial_worst;
    }
  }

  HelixSpace space;
  space.basis.basis = basis;
  space.residual = worst;
  space.sample_count = static_cast<int>(sample_us.size());
  space.samples = sample_us;
  return space;
}

HelixAngle helix_angle_of(const HelixSpace& space, const ImmersedPatch& patch,
                          const Vec& d_in_space, const ToleranceProfile& tol) {
  if (std::abs(d_in_space.norm() - 1.0) > tol.unit_norm) {
    throw BadParameter("helix_angle_of: d must be a unit vector");
  }
  if (space.basis.distance(d_in_space) > tol.in_space) {
    throw NotInSpace("direction is not inside the estimated helix space");
  }
  double sum = 0.0;
  std::vector<double> angles;
  angles.reserve(space.samples.size());
  for (const Vec& u : space.samples) {
    angles.push_back(tangent_angle(point_frame(patch, u, tol), d_in_space, tol));
    sum += angles.back();
  }
  HelixAngle out;
  out.mean = sum / angles.size();
  double var = 0.0;
  for (double a : angles) var += (a - out.mean) * (a - out.mean);
  out.stddev = std::sqrt(var / angles.size());
  return out;
}

}  // namespace helixlab
