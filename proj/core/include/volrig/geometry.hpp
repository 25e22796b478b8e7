#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "volrig/errors.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

enum class Space { Euclidean, Spherical, Hyperbolic };

std::string space_name(Space s);
Space space_from_name(const std::string& name);

/// Model space: flat R^n, the unit sphere S^n in R^{n+1}, or the
/// hyperboloid model H^n in Minkowski R^{n,1} whose bilinear form puts the
/// minus sign on the first coordinate.
struct Metric {
  Space space = Space::Euclidean;
  int dim = 0;  ///< intrinsic dimension n of the model space

  static Metric euclidean(int n) { return {Space::Euclidean, n}; }
  static Metric spherical(int n) { return {Space::Spherical, n}; }
  static Metric hyperbolic(int n) { return {Space::Hyperbolic, n}; }

  bool curved() const { return space != Space::Euclidean; }
  /// Number of coordinates carried by a point of this space.
  int ambient() const { return curved() ? dim + 1 : dim; }
  double curvature() const {
    if (space == Space::Spherical) return 1.0;
    if (space == Space::Hyperbolic) return -1.0;
    return 0.0;
  }
  bool operator==(const Metric&) const = default;
};

/// Bilinear form of the ambient space: standard dot product, except that a
/// hyperbolic first coordinate contributes with a minus sign.  Vectors may
/// be longer than the metric's ambient dimension (isometric embedding into
/// a larger model space of the same kind); extra coordinates are spacelike.
double bilinear_dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Metric& m);

/// Determinant of the k x k matrix of pairwise bilinear products between
/// two lists of k ambient vectors (rows of `a` against rows of `b`).
/// k = 0 returns 1.
double wedge_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Metric& m);

/// A list of points of a common model space, one per matrix row.
struct PointConfiguration {
  Metric metric;
  Eigen::MatrixXd points;  ///< count x ambient

  int count() const { return static_cast<int>(points.rows()); }
  int ambient() const { return static_cast<int>(points.cols()); }
  Eigen::VectorXd point(int i) const { return points.row(i).transpose(); }

  /// Validates coordinates (finite, correct width, on-surface for curved
  /// metrics within tol.surface_rel) and re-projects curved points onto the
  /// surface by rescaling along their ray.
  static PointConfiguration make(const Metric& metric, Eigen::MatrixXd pts,
                                 const Tolerances& tol = {});

  /// The same points inside the next-larger model space of the same kind
  /// (a zero coordinate is appended; curved points stay on the surface).
  PointConfiguration lifted() const;
};

/// Symmetric matrix of squared chords with zero diagonal.  The squared
/// chord between two points is the bilinear square of their coordinate
/// difference: squared Euclidean distance, 2 - 2cos(d) on the sphere,
/// 2cosh(d) - 2 on the hyperboloid.
struct DistanceMatrix {
  Eigen::MatrixXd entries;
};

double squared_chord(const PointConfiguration& config, int i, int j);
DistanceMatrix distance_matrix(const PointConfiguration& config);

/// Squared-volume determinant of the simplex spanned by the indexed
/// points: det((l²_{1,i} + l²_{1,j} - l²_{i,j}) / 2) over i, j ≥ 2, which
/// equals (k!)² V_k² for Euclidean points and the corresponding
/// displacement-wedge square in the curved models.
double squared_simplex_volume(const std::vector<int>& indices,
                              const PointConfiguration& config);

/// Same determinant evaluated on an explicit squared-chord matrix (rows and
/// columns in simplex-vertex order).
double squared_volume_from_chords(const Eigen::MatrixXd& chord2);

/// Squared-volume determinant with the origin prepended: the Gram
/// determinant of the position vectors themselves.  Spherical two-point
/// value is sin²(d); hyperbolic Grams of independent on-surface points are
/// negative.  Curved metrics only.
double o_prefixed_square(const std::vector<int>& indices, const PointConfiguration& config);
/// |o_prefixed_square|^{1/2}.
double o_prefixed_abs(const std::vector<int>& indices, const PointConfiguration& config);

/// Partial derivative of squared_simplex_volume with respect to the (i, j)
/// squared-chord entry: the bilinear product of the two hatted wedges
/// rooted at P_i and P_j.
double volume_gradient_edge(const std::vector<int>& indices, int i, int j,
                            const PointConfiguration& config);

/// Chord-squared value at geodesic distance d (d², 2 - 2cos d, 2cosh d - 2).
double chord_from_geodesic(double d, const Metric& m);
/// Inverse of chord_from_geodesic; spherical arguments must lie in [0, 4).
double geodesic_from_chord(double chord2, const Metric& m);
/// d(chord²)/d(geodesic) = 2·|two-point origin-prefixed wedge| (2 sin d on
/// the sphere, 2 sinh d on the hyperboloid, 2d in flat space).
double chord_geodesic_derivative(double d, const Metric& m);

/// Component of w orthogonal (under the ambient bilinear form) to the
/// position vector of base, i.e. tangent to the surface at base.
Eigen::VectorXd tangent_projection(const Eigen::VectorXd& base, const Eigen::VectorXd& w,
                                   const Metric& m);

/// Geodesic exponential map at an on-surface base point applied to a
/// tangent vector (must satisfy the tangency identity).
Eigen::VectorXd exponential_map(const Eigen::VectorXd& base, const Eigen::VectorXd& tangent,
                                const Metric& m);

/// Angle at vertex `at` of the geodesic triangle (at, b, c), measured
/// between the tangent projections of the two displacement vectors.
double vertex_angle(const PointConfiguration& config, int at, int b, int c);

}  // namespace volrig
