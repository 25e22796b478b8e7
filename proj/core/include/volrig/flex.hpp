#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "volrig/dependence.hpp"
#include "volrig/geometry.hpp"
#include "volrig/search_report.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

/// Polynomial motion of a point configuration.  Each vertex follows
/// t -> sum_r coeffs[i].row(r) * t^r with degree at most four; the row for
/// t^0 is the start position.  In curved space the polynomial curve is
/// radially re-projected onto the quadric at every time, so the evaluated
/// configuration always satisfies the surface constraint.
class MotionPath {
 public:
  MotionPath(Metric metric, std::vector<Eigen::MatrixXd> coeffs,
             const Tolerances& tol = Tolerances{});

  static constexpr int kMaxDegree = 4;

  const Metric& metric() const { return metric_; }
  int count() const { return static_cast<int>(coeffs_.size()); }
  int degree() const { return degree_; }

  /// Polynomial position before any surface projection.
  Eigen::VectorXd raw_position(int vertex, double t) const;
  /// Time derivative of the raw polynomial.
  Eigen::VectorXd raw_velocity(int vertex, double t) const;

  /// Configuration at time t (projected onto the quadric when curved).
  PointConfiguration at(double t, const Tolerances& tol = Tolerances{}) const;
  /// Velocities of the projected curve at time t, one row per vertex.
  /// In curved space these are tangent to the surface by construction.
  Eigen::MatrixXd velocities(double t) const;

  /// Straight-line path that lifts one vertex orthogonally out of the
  /// original space: the configuration is widened by one coordinate and the
  /// chosen vertex moves with unit speed along the new axis.
  static MotionPath single_vertex_lift(const PointConfiguration& base,
                                       int vertex,
                                       const Tolerances& tol = Tolerances{});

  /// Straight-line path with constant velocities inside the configuration's
  /// own ambient space (no widening).  `velocities` has one row per vertex.
  static MotionPath linear(const PointConfiguration& base,
                           const Eigen::MatrixXd& velocities,
                           const Tolerances& tol = Tolerances{});

 private:
  Metric metric_;
  std::vector<Eigen::MatrixXd> coeffs_;
  int degree_ = 0;
};

/// Derivative of the squared simplex volume of `face` when the vertices move
/// with the given velocities (one row per configuration point).  Valid in all
/// three geometries via the chord-squared chain rule; curved velocities must
/// be tangent to the surface.
double face_volume_derivative(const std::vector<int>& face,
                              const Eigen::MatrixXd& velocities,
                              const PointConfiguration& config,
                              const Tolerances& tol = Tolerances{});

/// Derivative of the Riemannian face volume (geodesic length for k = 1,
/// intrinsic area for k = 2) in a curved configuration.  Faces with three or
/// more edges per side sum are unsupported beyond k = 2.
double riemannian_volume_rate(const std::vector<int>& face,
                              const Eigen::MatrixXd& velocities,
                              const PointConfiguration& config,
                              const Tolerances& tol = Tolerances{});

/// Partial derivatives of the intrinsic triangle area with respect to its
/// three geodesic side lengths, for a curved triangle with sides (a, b, c).
Eigen::Vector3d triangle_area_side_partials(double a, double b, double c,
                                            const Metric& metric);

/// Value and natural scale of the weighted first-derivative sum over all
/// faces of one dimension.  The conserved quantity vanishes identically for
/// a degenerate configuration, so |value| is compared against `scale`.
struct EqualityResidual {
  double value = 0.0;
  double scale = 0.0;
};

/// Weighted sum over all (k+1)-point faces of the face volume derivative,
/// with weights prod of alpha over the face.  Flat configurations use the
/// squared-volume rate; curved configurations use the Riemannian rate times
/// the face's origin-prefixed volume factor.
EqualityResidual equality_residual(const AffineDependence& dep,
                                   const PointConfiguration& config,
                                   const Eigen::MatrixXd& velocities, int k,
                                   const Tolerances& tol = Tolerances{});

/// Reflection of the vertex `apex` across the hyperplane spanned by the
/// remaining points (through the origin as well in curved space, so the
/// result stays on the quadric).
Eigen::VectorXd mirror_point(const PointConfiguration& config, int apex,
                             const Tolerances& tol = Tolerances{});

/// One probe of the second-order sign check at a single path time.
struct SignProbe {
  double t = 0.0;
  double weighted_sum = 0.0;   // mirror-extended equality sum at time t
  double prediction = 0.0;     // leading-order model of the same sum
  double ratio = 0.0;          // weighted_sum / prediction (0 when prediction ~ 0)
  bool above_noise = false;
};

/// Result of probing the mirror-extended weighted sum along a path.
struct SignCheckReport {
  std::vector<SignProbe> probes;
  double reference_coefficient = 0.0;  // c_{k-1} of the starting configuration
  bool sign_consistent = false;        // every resolvable probe matches the model's sign
  double ratio_at_smallest = 0.0;      // ratio at the smallest probed time
  bool equality_regime = false;        // all probes vanished: path preserves the hyperplane
};

/// Evaluates the mirror-extended weighted face-volume sum at times
/// t in {1e-2, 1e-3, 1e-4} along `path` and compares it against the
/// closed-form leading-order prediction.  `config` is the starting
/// degenerate configuration in its own space; `path` must live in the
/// once-widened space and start at the widened configuration.
/// Throws SignalTooSmall when the driving chord is genuinely moving yet
/// every probe sits below the noise floor.
SignCheckReport inequality_sign_check(const AffineDependence& dep,
                                      const PointConfiguration& config,
                                      const MotionPath& path, int k,
                                      const Tolerances& tol = Tolerances{});

/// Outcome of the first-order flex linear program.
enum class FlexVerdict { FirstOrderUnyielding, FlexFound };

const char* flex_verdict_name(FlexVerdict verdict);

/// Report of the first-order flex test.
struct FlexReport {
  FlexVerdict verdict = FlexVerdict::FirstOrderUnyielding;
  double lp_optimum = 0.0;
  int ambient_dim = 0;
  Eigen::MatrixXd witness;            // velocities, one row per vertex (zero when unyielding)
  Eigen::VectorXd face_derivatives;   // volume derivative per framework face at the witness
  double max_violation = 0.0;         // worst label-constraint violation of the witness
};

/// Linear-programming test for first-order volume-respecting motions of a
/// framework.  `ambient_dim` is either the configuration's own dimension or
/// one more (vertices allowed to leave the original space).  Cable faces may
/// not grow, strut faces may not shrink, bars are pinned, and curved
/// velocities are constrained to the tangent spaces; the LP maximises total
/// slack under a unit box, so a zero optimum certifies that every admissible
/// velocity holds all face volumes stationary.
FlexReport first_order_flex(const TensegrityFramework& framework,
                            const PointConfiguration& config, int ambient_dim,
                            const Tolerances& tol = Tolerances{});

/// Randomised search for a non-congruent configuration satisfying all label
/// constraints of an edge framework inside the once-widened space.  Each
/// trial perturbs the vertices, descends onto the feasible set, and measures
/// how far the accepted sample's chords drift from the original; samples
/// whose distortion exceeds the congruence gate are recorded as violations.
SearchReport global_rigidity_falsifier(const TensegrityFramework& framework,
                                       const PointConfiguration& config,
                                       long long trials, std::uint64_t seed,
                                       const Tolerances& tol = Tolerances{});

}  // namespace volrig
