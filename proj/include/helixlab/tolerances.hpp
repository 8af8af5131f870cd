#pragma once

namespace helixlab {

/// Central record of every tolerance the library consults. All geometric
/// operations take one of these (defaulted) so tests can tighten or relax
/// individual knobs without touching call sites.
struct ToleranceProfile {
  // rank / degeneracy decisions
  double rank_drop = 1e-8;    // Gram-Schmidt residual below which a vector is dropped
  double frenet_drop = 1e-6;  // same decision for Frenet frames, where finite
                              // differences of high-order derivatives set the noise floor
  double metric_det_min = 1e-12;
  double decomposition_degenerate = 1e-8;  // component norm below which xi / T_j is flagged
  double eig_gap = 1e-6;                   // principal-curvature gap for umbilic detection

  // unit checks
  double unit_norm = 1e-8;          // ||d|| and ||N|| must be 1 within this
  double unit_speed = 1e-4;         // curve speed must be 1 within this
  double normal_membership = 1e-6;  // ||P_tan N|| for a claimed normal

  // helix machinery
  double helix_spread = 1e-6;  // tangent-angle spread for a helix direction
  double in_space = 1e-6;      // distance of d from span(basis) in helix_angle_of

  // flows / curve diagnostics
  double loc_defect = 1e-4;        // line-of-curvature angle defect
  double geodesic_defect = 1e-4;   // tangential-acceleration norm
  double normal_curv_zero = 1e-4;  // k_T = 0 premise

  // theorem harness
  double const_spread = 1e-4;    // "constant along the curve" inner-product spreads
  double slant_spread = 1e-4;    // slant-helix conclusion spread
  double tangency = 1e-4;        // ||(I - P_tan) N'|| premise
  double dependence = 1e-4;      // normalized Gram determinant of {T_j', T}
  double separation_min = 1e-3;  // Thm 3.1: min distance of d from span{N, T}
  double orthogonality = 1e-6;   // Thm 3.5: max |<T, d>|
  double lambda_min = 1e-6;      // Thm 3.5: |lambda| below this is vacuous
};

}  // namespace helixlab
