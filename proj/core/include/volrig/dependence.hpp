#pragma once

#include <vector>

#include <Eigen/Dense>

#include "volrig/geometry.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

/// Sign classes X_1 = {i : alpha_i > 0} and X_2 = {i : alpha_i < 0} of a
/// dependence (0-based point indices).
struct RadonPartition {
  std::vector<int> positive;
  std::vector<int> negative;
};

/// Coefficients of the defining dependence of a degenerate simplex:
/// sum alpha_i A_i = 0 (plus sum alpha_i = 0 in flat space), scaled so the
/// first coefficient is +1 whenever the dependence is unique.
struct AffineDependence {
  Eigen::VectorXd alpha;
  RadonPartition partition;
  /// Relative residual of the defining linear system at `alpha`.
  double residual = 0.0;
  /// True when m = n+2 and general position makes the dependence unique.
  bool canonical = true;
  /// Curved configurations can have an empty sign class (the origin lies
  /// inside the convex hull of the points); flat ones never do.
  bool all_same_sign = false;

  int count() const { return static_cast<int>(alpha.size()); }
  int s() const { return static_cast<int>(partition.positive.size()); }
};

/// Splits coefficients by sign; a coefficient within tol.zero_coefficient
/// (relative to the largest magnitude) of zero is rejected.
RadonPartition radon_partition(const Eigen::VectorXd& alpha, const Tolerances& tol = {});

/// Computes the dependence of a degenerate simplex (m = n+2 points).  The
/// configuration must be in general position: every (n+1)-subset spans,
/// gated by the singular-value ratio tol.general_position.  With m > n+2
/// points a representative null vector is returned and flagged
/// non-canonical.
AffineDependence affine_dependence(const PointConfiguration& config,
                                   const Tolerances& tol = {});

/// Wraps user-supplied coefficients after validating the defining system
/// residual against `residual_gate` (relative to coordinate and
/// coefficient scale).
AffineDependence dependence_from_alpha(const PointConfiguration& config,
                                       Eigen::VectorXd alpha,
                                       const Tolerances& tol = {},
                                       double residual_gate = 1e-8);

/// Proportionality scale h between |alpha_i| and the opposite-face wedge
/// volume |A_1 ... hat A_i ... A_m| (origin-prefixed in curved space),
/// together with the largest relative deviation from constancy across i.
struct DependenceScale {
  double h = 0.0;
  double max_deviation = 0.0;
};
DependenceScale dependence_scale(const AffineDependence& dep,
                                 const PointConfiguration& config);

enum class FaceLabel { Cable, Strut, Bar };
enum class FrameworkFlavor { G, F, AllStrut, AllCable, Custom };

std::string face_label_name(FaceLabel l);
FaceLabel face_label_from_name(const std::string& name);
std::string flavor_name(FrameworkFlavor f);
FrameworkFlavor flavor_from_name(const std::string& name);

struct LabeledFace {
  std::vector<int> vertices;  ///< k+1 point indices, strictly increasing
  FaceLabel label = FaceLabel::Bar;
};

/// All k-faces of a point set, each carrying exactly one label.
struct TensegrityFramework {
  int k = 1;
  FrameworkFlavor flavor = FrameworkFlavor::Custom;
  std::vector<LabeledFace> faces;
};

/// Labels every k-face by sign parity: flavor G makes a face a cable when
/// it contains an odd number of X_2 vertices and a strut otherwise; F
/// swaps the two; AllStrut/AllCable label uniformly.
TensegrityFramework build_framework(const AffineDependence& dep, int k,
                                    FrameworkFlavor flavor);

/// Framework with explicit labels; validates that the faces are exactly
/// the k-faces of {0, ..., point_count-1}, each labeled once.
TensegrityFramework custom_framework(int k, int point_count,
                                     std::vector<LabeledFace> faces);

}  // namespace volrig
