#pragma once

#include <string>
#include <vector>

#include "helixlab/curves.hpp"
#include "helixlab/flows.hpp"
#include "helixlab/helix.hpp"

namespace helixlab {

enum class TheoremId { T31, T32, T33, T35, T36 };
enum class Verdict { Verified, PremiseFailed, Falsified };

std::string to_string(TheoremId id);
std::string to_string(Verdict v);

struct PremiseCheck {
  std::string name;
  bool holds = false;
  double residual = 0.0;
  double tol = 0.0;
};

struct ConclusionCheck {
  bool holds = false;
  double residual = 0.0;
  double tol = 0.0;
};

/// Premise-checked implication report. Verified = every premise and the
/// conclusion hold; PremiseFailed = some premise fails (conclusion still
/// reported when computable); Falsified = premises hold but the conclusion
/// fails, which must never happen on valid inputs.
struct TheoremReport {
  TheoremId theorem_id = TheoremId::T31;
  std::vector<PremiseCheck> premises;
  ConclusionCheck conclusion;
  Verdict verdict = Verdict::PremiseFailed;
  int samples = 0;
  std::string note;
};

/// Thm 3.1 (hypersurfaces): if alpha is a unit-speed line of curvature (not a
/// line) and d is a helix direction, then d stays away from span{N, T}.
/// Conclusion residual: minimum distance of d to span{N, T} over the samples.
TheoremReport verify_thm_3_1(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const NormalField& N_field,
                             const std::vector<double>& sample_ts,
                             const ToleranceProfile& tols = {});

/// Thm 3.2: helix direction + geodesic + <V2, xi_j> constant => slant helix.
TheoremReport verify_thm_3_2(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& sample_ts,
                             const ToleranceProfile& tols = {});

/// Thm 3.3: helix direction + k_T = 0 + <V2, T_j> constant => slant helix.
TheoremReport verify_thm_3_3(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& sample_ts,
                             const ToleranceProfile& tols = {});

/// Thm 3.5: line of curvature w.r.t. the normal component N_j of d, with N_j'
/// tangent along the curve, forces <T, d> = 0. Samples where lambda_j is
/// numerically zero make Eq.-style pinning vacuous and fail the
/// non-vacuity premise instead.
TheoremReport verify_thm_3_5(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& sample_ts,
                             const ToleranceProfile& tols = {});

/// Thm 3.6: {T_j', T} linearly dependent along the curve => alpha is a line
/// of curvature w.r.t. N_j.
TheoremReport verify_thm_3_6(const ImmersedPatch& patch, const ParamCurve& pc,
                             const Vec& d, const std::vector<double>& sample_ts,
                             const ToleranceProfile& tols = {});

}  // namespace helixlab
