#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "volrig/dependence.hpp"
#include "volrig/geometry.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

/// Volume of a geodesic simplex of intrinsic dimension k: 1 for k = 0,
/// geodesic length for k = 1, angle excess (spherical) or defect
/// (hyperbolic) for k = 2.  k = 3 is reachable only through the Monte
/// Carlo estimator and is flagged approximate.
struct CurvedSimplexVolume {
  int k = 0;
  double value = 0.0;
  bool approximate = false;
  double std_error = 0.0;
};

CurvedSimplexVolume curved_volume(const std::vector<int>& indices,
                                  const PointConfiguration& config);

CurvedSimplexVolume curved_volume_mc(const std::vector<int>& indices,
                                     const PointConfiguration& config,
                                     long long samples, std::uint64_t seed);

/// The coefficient of `q` on the slot point in the expansion of q over a
/// simplex's position vectors: a signed ratio of origin-prefixed wedge
/// products.  `slot` indexes into `simplex` (0-based).
double bracket(const Eigen::VectorXd& q, int slot,
               const std::vector<Eigen::VectorXd>& simplex, const Metric& m,
               const Tolerances& tol = {});

/// The scaled volume derivative d(P, Q; B_1..B_k): 1 for empty B, the
/// two-displacement closed form for one B, and the face-sum expansion for
/// two.  Exact evaluation stops at |B| = 2 (it needs V_{|B|-1}).
double d_pair(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
              const std::vector<Eigen::VectorXd>& b, const Metric& m,
              const Tolerances& tol = {});

/// The face-sum expansion route for |B| in {1, 2}; used internally for
/// |B| = 2 and kept callable as a cross-check against the closed form.
double d_pair_expansion(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                        const std::vector<Eigen::VectorXd>& b, const Metric& m,
                        const Tolerances& tol = {});

/// Curved invariant coefficient c_k = kappa^k (k+1) (k-1)! multiplied by
/// the coefficient-weighted sum of |O-wedge| * V_{k-1} over k-subsets.
/// Exact for k <= 3.
double curved_c(int k, const AffineDependence& dep, const PointConfiguration& config,
                const Tolerances& tol = {});

/// Characteristic-polynomial data of a curved degenerate simplex.  Only
/// c_0..c_3 are exactly computable, so the polynomial (and roots) exist
/// only for n <= 3; realness of the roots is reported, never assumed.
struct CurvedProfile {
  Eigen::VectorXd c;            ///< values for k = 0..min(n, 3)
  std::vector<bool> available;  ///< per k = 0..n
  bool complete = false;
  Eigen::VectorXd charpoly;     ///< monic descending coefficients (when complete)
  std::vector<std::complex<double>> roots;
  bool all_real = false;
  /// Realness margin: the discriminant for n = 2, otherwise minus the
  /// largest imaginary part of any root.
  double realness_margin = 0.0;
};

CurvedProfile curved_charpoly(const AffineDependence& dep, const PointConfiguration& config,
                              const Tolerances& tol = {});

/// Kernel of pairwise d(P_i, P_j; A) values for points of H^1 given by
/// signed geodesic coordinates.
struct KernelMatrix {
  double base = 0.0;
  Eigen::VectorXd r;
  Eigen::MatrixXd entries;
};

KernelMatrix h1_kernel(double base_r, const std::vector<double>& rs);

/// Kernel of d(P_i, P_j; base) for on-surface points of any curved space.
Eigen::MatrixXd curved_kernel(const Eigen::VectorXd& base,
                              const std::vector<Eigen::VectorXd>& pts, const Metric& m);

/// det(1 / (x_i + y_j)) via the product identity.
double cauchy_determinant(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace volrig
