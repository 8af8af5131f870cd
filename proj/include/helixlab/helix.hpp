#pragma once

#include <vector>

#include "helixlab/manifold.hpp"

namespace helixlab {

/// A fixed unit direction split into normal and tangent parts at a point:
/// d = cos(theta) * xi + sin(theta) * t_dir, theta in [0, pi/2]. A part whose
/// norm falls below the degeneracy tolerance is flagged and zeroed; inner
/// products against a flagged part are exactly 0 by convention.
struct DirectionDecomposition {
  Vec d;
  double theta = 0.0;
  Vec xi;     // unit normal component direction (zero when flagged)
  Vec t_dir;  // unit tangent component direction (zero when flagged)
  bool normal_degenerate = false;
  bool tangent_degenerate = false;
};

struct HelixDirectionReport {
  Vec d;
  std::vector<double> angles;  // radians, angle between d and T_pM per sample
  double mean = 0.0, stddev = 0.0;
  double min = 0.0, max = 0.0;
  double spread = 0.0;  // max - min
  bool is_helix = false;
};

/// Estimated basis of H(M) with the worst restricted projector-variation norm
/// left in the returned space. Keeps the sample points so helix_angle_of can
/// reuse them.
struct HelixSpace {
  Subspace basis;
  double residual = 0.0;
  int sample_count = 0;
  std::vector<Vec> samples;
};

struct HelixAngle {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Angle between d and the tangent space: arcsin(||(I - P_tan) d||), in
/// [0, pi/2]. Zero means d is tangent, pi/2 means d is normal.
double tangent_angle(const PointFrame& frame, const Vec& d,
                     const ToleranceProfile& tol = {});

DirectionDecomposition decompose_direction(const PointFrame& frame, const Vec& d,
                                           const ToleranceProfile& tol = {});

/// Evaluates tangent_angle at every sample; is_helix iff the spread of the
/// angle stays within `tol`. Needs at least 8 samples.
HelixDirectionReport is_helix_direction(const ImmersedPatch& patch, const Vec& d,
                                        const std::vector<Vec>& sample_us,
                                        double tol,
                                        const ToleranceProfile& profile = {});

/// Deflation estimate of the helix-direction space: starting from all of R^n,
/// repeatedly remove the direction along which the tangent projectors vary
/// the most, until the restricted variation drops below `tol`. Every unit
/// vector of the returned space then has tangent-angle variation <= 2 tol
/// over the samples. Needs at least 16 samples; dimension 0 is a valid result.
HelixSpace estimate_helix_space(const ImmersedPatch& patch,
                                const std::vector<Vec>& sample_us, double tol,
                                const ToleranceProfile& profile = {});

/// Mean (and stddev) tangent angle of a direction lying in the estimated
/// space, over the stored samples. Throws NotInSpace when d is not within the
/// span tolerance.
HelixAngle helix_angle_of(const HelixSpace& space, const ImmersedPatch& patch,
                          const Vec& d_in_space,
                          const ToleranceProfile& tol = {});

}  // namespace helixlab
