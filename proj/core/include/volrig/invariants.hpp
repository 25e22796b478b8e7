#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "volrig/dependence.hpp"
#include "volrig/geometry.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

/// Position of the configuration's points relative to a common sphere,
/// decided by the sign of c_1 (negative: first point inside the sphere
/// through the others; zero: all cospherical; positive: outside).
enum class SphereSide { Inside, On, Outside };

std::string sphere_side_name(SphereSide s);

/// Matrix model of a flat degenerate simplex: displacement rows from the
/// pivot point scaled by the dependence coefficients.
struct MatrixRealization {
  int pivot = 0;
  Eigen::MatrixXd b;          ///< (m-1) x n displacement rows A_i - A_pivot
  Eigen::VectorXd alpha;      ///< matching coefficients (pivot's dropped)
  Eigen::MatrixXd product;    ///< B Bᵀ D — its principal minors sum to c_k
  Eigen::MatrixXd symmetric;  ///< Bᵀ D B — real-spectrum carrier of the roots
};

/// The invariant coefficients c_0..c_n, their characteristic polynomial
/// and its (always real) roots, with the derived verdicts.
struct InvariantProfile {
  Eigen::VectorXd c;
  /// Monic coefficients f(x) = x^n - c_1 x^{n-1} + ... + (-1)^n c_n in
  /// descending powers.
  Eigen::VectorXd charpoly;
  Eigen::VectorXd roots;  ///< ascending
  int positive_roots = 0;
  int negative_roots = 0;
  /// Whether (positive, negative) equals (s-1, n+1-s) for s = |X_1|.
  bool sign_counts_match = false;
  /// All roots coincide within the repeated-root gate.
  bool repeated_root = false;
  /// The polynomial-coefficient route produced real roots matching the
  /// symmetric-matrix route.
  bool polynomial_roots_real = false;
  SphereSide cosphericity = SphereSide::On;
};

/// Direct summation form of c_k: sum over k-subsets of the coefficient
/// products times the bilinear product of the wedges rooted at the probe
/// points P and Q.  Independent of P and Q; they may live in a larger
/// embedding R^d (points are zero-padded).  Flat metric only.
double c_direct(int k, const AffineDependence& dep, const PointConfiguration& config,
                const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// Builds the matrix realization about the given pivot (default: the last
/// point).  Flat metric, m = n+2.
MatrixRealization matrix_realization(const AffineDependence& dep,
                                     const PointConfiguration& config, int pivot = -1);

/// c_0..c_n as sums of principal k-minors of realization.product.
Eigen::VectorXd c_from_matrix(const MatrixRealization& realization);

/// Full invariant profile of a flat degenerate simplex via the matrix
/// realization (canonical route).
InvariantProfile invariant_profile(const AffineDependence& dep,
                                   const PointConfiguration& config,
                                   const Tolerances& tol = {});

/// Profile of a generalized configuration (m >= n+2 points with a supplied
/// or computed dependence) via the raw-coordinate realization.
InvariantProfile generalized_profile(const AffineDependence& dep,
                                     const PointConfiguration& config,
                                     const Tolerances& tol = {});

/// Root multiset with its sign counts; throws RootNearZero when any root
/// falls inside the zero gate, making the counts unstable.
struct RootSignCount {
  Eigen::VectorXd roots;
  int positive = 0;
  int negative = 0;
  int s = 0;
  bool matches_prediction = false;
};
RootSignCount roots_and_signs(const InvariantProfile& profile, const AffineDependence& dep,
                              const Tolerances& tol = {});

SphereSide cosphericity_class(const InvariantProfile& profile, const Tolerances& tol = {});

/// Center and radius of the sphere through n+1 flat points in R^n.
struct Circumsphere {
  Eigen::VectorXd center;
  double radius = 0.0;
};
Circumsphere circumsphere(const PointConfiguration& config, const std::vector<int>& indices);

/// Checks every disjoint pair of point pairs for perpendicular connecting
/// segments (the orthocentric property).
struct PerpendicularityReport {
  bool orthocentric = false;
  double max_abs_cosine = 0.0;
};
PerpendicularityReport perpendicular_pairs(const PointConfiguration& config,
                                           const Tolerances& tol = {});

/// Roots of a real polynomial (descending coefficients) via the companion
/// matrix of its monic normalization.
std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXd& coeffs);

}  // namespace volrig
