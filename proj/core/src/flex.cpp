#include "volrig/flex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "volrig/combinatorics.hpp"
#include "volrig/curved.hpp"
#include "volrig/errors.hpp"
#include "volrig/invariants.hpp"
#include "volrig/lp.hpp"
#include "volrig/rng.hpp"

namespace volrig {
namespace {

constexpr double kTangencyGate = 1e-8;

void validate_face(const std::vector<int>& face, int count) {
  if (face.empty()) throw InvalidIndices("face must contain at least one vertex");
  std::vector<int> sorted = face;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= count)
      throw InvalidIndices("face vertex out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw InvalidIndices("face vertices must be distinct");
  }
}

/// Vector j with j . w equal to the ambient bilinear product of v and w.
Eigen::VectorXd bilinear_adjoint(const Eigen::VectorXd& v, const Metric& m) {
  Eigen::VectorXd j = v;
  if (m.space == Space::Hyperbolic) j[0] = -j[0];
  return j;
}

/// Validates shape, finiteness, and (curved) tangency of a velocity matrix,
/// returning the rows projected exactly onto the tangent spaces.
Eigen::MatrixXd checked_velocities(const PointConfiguration& config,
                                   const Eigen::MatrixXd& velocities) {
  if (velocities.rows() != config.count() || velocities.cols() != config.ambient())
    throw DimensionMismatch("velocity matrix must match the configuration shape");
  if (!velocities.allFinite())
    throw ValidationError("velocities must be finite");
  if (!config.metric.curved()) return velocities;
  Eigen::MatrixXd out(velocities.rows(), velocities.cols());
  for (int i = 0; i < config.count(); ++i) {
    const Eigen::VectorXd p = config.point(i);
    const Eigen::VectorXd v = velocities.row(i).transpose();
    const double ip = bilinear_dot(v, p, config.metric);
    const double scale = std::max(1.0, v.norm() * p.norm());
    if (std::abs(ip) > kTangencyGate * scale)
      throw TangencyViolation("velocity is not tangent to the model surface");
    out.row(i) = tangent_projection(p, v, config.metric).transpose();
  }
  return out;
}

double pair_chord_rate(const PointConfiguration& config, const Eigen::MatrixXd& vel,
                       int i, int j) {
  const Eigen::VectorXd diff = config.point(i) - config.point(j);
  const Eigen::VectorXd vdiff = (vel.row(i) - vel.row(j)).transpose();
  return 2.0 * bilinear_dot(diff, vdiff, config.metric);
}

/// Squared-volume rate via the chord chain rule; velocities pre-validated.
double squared_rate_unchecked(const std::vector<int>& face, const Eigen::MatrixXd& vel,
                              const PointConfiguration& config) {
  const int size = static_cast<int>(face.size());
  double total = 0.0;
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) {
      const double grad = volume_gradient_edge(face, face[a], face[b], config);
      total += grad * pair_chord_rate(config, vel, face[a], face[b]);
    }
  }
  return total;
}

double geodesic_side(const PointConfiguration& config, int i, int j) {
  return geodesic_from_chord(squared_chord(config, i, j), config.metric);
}

double geodesic_rate(const PointConfiguration& config, const Eigen::MatrixXd& vel,
                     int i, int j) {
  const double s = geodesic_side(config, i, j);
  const double deriv = chord_geodesic_derivative(s, config.metric);
  if (std::abs(deriv) < 1e-14)
    throw DegenerateSimplex("coincident vertices have no length derivative");
  return pair_chord_rate(config, vel, i, j) / deriv;
}

/// Riemannian rate (geodesic length / intrinsic area); curved metrics,
/// velocities pre-validated.
double riemannian_rate_unchecked(const std::vector<int>& face, const Eigen::MatrixXd& vel,
                                 const PointConfiguration& config) {
  const int k = static_cast<int>(face.size()) - 1;
  if (k == 0) return 0.0;
  if (k == 1) return geodesic_rate(config, vel, face[0], face[1]);
  if (k == 2) {
    const double a = geodesic_side(config, face[1], face[2]);
    const double b = geodesic_side(config, face[0], face[2]);
    const double c = geodesic_side(config, face[0], face[1]);
    const Eigen::Vector3d partial = triangle_area_side_partials(a, b, c, config.metric);
    return partial[0] * geodesic_rate(config, vel, face[1], face[2]) +
           partial[1] * geodesic_rate(config, vel, face[0], face[2]) +
           partial[2] * geodesic_rate(config, vel, face[0], face[1]);
  }
  throw UnsupportedDimension("intrinsic volume rates are available up to dimension two");
}

/// Weighted sum of face rates over all (k+1)-subsets.  Flat weights multiply
/// the squared-volume rate; curved weights additionally carry the
/// origin-prefixed volume factor of the face.
EqualityResidual weighted_rate_sum(const Eigen::VectorXd& weights,
                                   const PointConfiguration& config,
                                   const Eigen::MatrixXd& vel, int k) {
  EqualityResidual out;
  const bool curved = config.metric.curved();
  for_each_subset(config.count(), k + 1, [&](const std::vector<int>& face) {
    double w = 1.0;
    for (int idx : face) w *= weights[idx];
    double term;
    if (curved) {
      term = w * o_prefixed_abs(face, config) * riemannian_rate_unchecked(face, vel, config);
    } else {
      term = w * squared_rate_unchecked(face, vel, config);
    }
    out.value += term;
    out.scale += std::abs(term);
  });
  return out;
}

/// Weight vector w with sum_i w_i P_i = 0 (plus sum_i w_i = 0 for flat
/// metrics), for a raw point list that may include off-surface points.
Eigen::VectorXd null_weight_vector(const Eigen::MatrixXd& pts, const Metric& metric) {
  const int m = static_cast<int>(pts.rows());
  const int cols = static_cast<int>(pts.cols());
  const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
  Eigen::MatrixXd sys;
  if (metric.curved()) {
    sys = pts.transpose() / scale;
  } else {
    sys.resize(cols + 1, m);
    sys.row(0).setOnes();
    sys.bottomRows(cols) = pts.transpose() / scale;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  Eigen::VectorXd w = svd.matrixV().col(m - 1);
  const double residual = (sys * w).cwiseAbs().maxCoeff() / w.cwiseAbs().maxCoeff();
  if (residual > 1e-7)
    throw SolverFailure("point list admits no dependence within tolerance");
  return w;
}

int factorial(int k) {
  int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

MotionPath::MotionPath(Metric metric, std::vector<Eigen::MatrixXd> coeffs,
                       const Tolerances& tol)
    : metric_(metric), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ValidationError("motion path needs at least one vertex");
  Eigen::MatrixXd base(static_cast<int>(coeffs_.size()), metric_.ambient());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Eigen::MatrixXd& rows = coeffs_[i];
    if (rows.rows() < 1 || rows.rows() > kMaxDegree + 1)
      throw ValidationError("vertex path degree must lie between 0 and 4");
    if (rows.cols() != metric_.ambient())
      throw DimensionMismatch("path coefficients must match the ambient width");
    if (!rows.allFinite()) throw ValidationError("path coefficients must be finite");
    degree_ = std::max(degree_, static_cast<int>(rows.rows()) - 1);
    base.row(static_cast<int>(i)) = rows.row(0);
  }
  // Validates that the start configuration lies on the model surface.
  PointConfiguration::make(metric_, base, tol);
}

Eigen::VectorXd MotionPath::raw_position(int vertex, double t) const {
  const Eigen::MatrixXd& rows = coeffs_.at(static_cast<std::size_t>(vertex));
  Eigen::VectorXd value = rows.row(rows.rows() - 1).transpose();
  for (int r = static_cast<int>(rows.rows()) - 2; r >= 0; --r)
    value = value * t + rows.row(r).transpose();
  return value;
}

Eigen::VectorXd MotionPath::raw_velocity(int vertex, double t) const {
  const Eigen::MatrixXd& rows = coeffs_.at(static_cast<std::size_t>(vertex));
  Eigen::VectorXd value = Eigen::VectorXd::Zero(rows.cols());
  for (int r = static_cast<int>(rows.rows()) - 1; r >= 1; --r)
    value = value * t + r * rows.row(r).transpose();
  return value;
}

PointConfiguration MotionPath::at(double t, const Tolerances& tol) const {
  Eigen::MatrixXd pts(count(), metric_.ambient());
  for (int i = 0; i < count(); ++i) {
    Eigen::VectorXd x = raw_position(i, t);
    if (metric_.curved()) {
      double q = bilinear_dot(x, x, metric_);
      if (metric_.space == Space::Hyperbolic) q = -q;
      if (q < 1e-14)
        throw DegenerateSimplex("path point cannot be projected onto the surface");
      x /= std::sqrt(q);
      if (metric_.space == Space::Hyperbolic && x[0] < 0.0) x = -x;
    }
    pts.row(i) = x.transpose();
  }
  return PointConfiguration::make(metric_, pts, tol);
}

Eigen::MatrixXd MotionPath::velocities(double t) const {
  Eigen::MatrixXd vel(count(), metric_.ambient());
  for (int i = 0; i < count(); ++i) {
    const Eigen::VectorXd x = raw_position(i, t);
    const Eigen::VectorXd xdot = raw_velocity(i, t);
    if (!metric_.curved()) {
      vel.row(i) = xdot.transpose();
      continue;
    }
    double q = bilinear_dot(x, x, metric_);
    const double sign = metric_.space == Space::Hyperbolic ? -1.0 : 1.0;
    const double s = std::sqrt(std::abs(q));
    if (s < 1e-9)
      throw DegenerateSimplex("path point cannot be projected onto the surface");
    // Velocity of the radially projected curve x / |x|.
    const double sdot = sign * bilinear_dot(x, xdot, metric_) / s;
    vel.row(i) = (xdot / s - x * (sdot / (s * s))).transpose();
  }
  return vel;
}

MotionPath MotionPath::single_vertex_lift(const PointConfiguration& base, int vertex,
                                          const Tolerances& tol) {
  if (vertex < 0 || vertex >= base.count())
    throw InvalidIndices("lift vertex out of range");
  const PointConfiguration lifted = base.lifted();
  const int wide = lifted.ambient();
  std::vector<Eigen::MatrixXd> coeffs;
  coeffs.reserve(static_cast<std::size_t>(base.count()));
  for (int i = 0; i < base.count(); ++i) {
    const int rows = i == vertex ? 2 : 1;
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(rows, wide);
    block.row(0) = lifted.points.row(i);
    if (i == vertex) block(1, wide - 1) = 1.0;
    coeffs.push_back(std::move(block));
  }
  return MotionPath(lifted.metric, std::move(coeffs), tol);
}

MotionPath MotionPath::linear(const PointConfiguration& base,
                              const Eigen::MatrixXd& velocities, const Tolerances& tol) {
  const Eigen::MatrixXd vel = checked_velocities(base, velocities);
  std::vector<Eigen::MatrixXd> coeffs;
  coeffs.reserve(static_cast<std::size_t>(base.count()));
  for (int i = 0; i < base.count(); ++i) {
    Eigen::MatrixXd block(2, base.ambient());
    block.row(0) = base.points.row(i);
    block.row(1) = vel.row(i);
    coeffs.push_back(std::move(block));
  }
  return MotionPath(base.metric, std::move(coeffs), tol);
}

double face_volume_derivative(const std::vector<int>& face,
                              const Eigen::MatrixXd& velocities,
                              const PointConfiguration& config, const Tolerances&) {
  validate_face(face, config.count());
  const Eigen::MatrixXd vel = checked_velocities(config, velocities);
  if (face.size() == 1) return 0.0;
  return squared_rate_unchecked(face, vel, config);
}

double riemannian_volume_rate(const std::vector<int>& face,
                              const Eigen::MatrixXd& velocities,
                              const PointConfiguration& config, const Tolerances&) {
  if (!config.metric.curved())
    throw UnsupportedMetric("intrinsic volume rates apply to curved metrics");
  validate_face(face, config.count());
  const Eigen::MatrixXd vel = checked_velocities(config, velocities);
  return riemannian_rate_unchecked(face, vel, config);
}

Eigen::Vector3d triangle_area_side_partials(double a, double b, double c,
                                            const Metric& metric) {
  if (!metric.curved())
    throw UnsupportedMetric("intrinsic area partials apply to curved metrics");
  const bool spherical = metric.space == Space::Spherical;
  // Partials of the vertex angle opposite side `o` with adjacent sides p, q.
  auto angle_partials = [&](double o, double p, double q) -> Eigen::Vector3d {
    const double sp = spherical ? std::sin(p) : std::sinh(p);
    const double sq = spherical ? std::sin(q) : std::sinh(q);
    const double so = spherical ? std::sin(o) : std::sinh(o);
    const double cp = spherical ? std::cos(p) : std::cosh(p);
    const double cq = spherical ? std::cos(q) : std::cosh(q);
    const double co = spherical ? std::cos(o) : std::cosh(o);
    if (std::abs(sp) < 1e-14 || std::abs(sq) < 1e-14)
      throw DegenerateSimplex("triangle has a vanishing side");
    const double u = spherical ? (co - cp * cq) / (sp * sq) : (cp * cq - co) / (sp * sq);
    const double s2 = 1.0 - u * u;
    if (s2 < 1e-20) throw DegenerateSimplex("triangle is degenerate (collinear vertices)");
    const double s = std::sqrt(s2);
    double du_do, du_dp, du_dq;
    if (spherical) {
      du_do = -so / (sp * sq);
      du_dp = (cq - co * cp) / (sp * sp * sq);
      du_dq = (cp - co * cq) / (sp * sq * sq);
    } else {
      du_do = -so / (sp * sq);
      du_dp = (co * cp - cq) / (sp * sp * sq);
      du_dq = (co * cq - cp) / (sp * sq * sq);
    }
    return Eigen::Vector3d(-du_do / s, -du_dp / s, -du_dq / s);
  };
  const Eigen::Vector3d at_a = angle_partials(a, b, c);
  const Eigen::Vector3d at_b = angle_partials(b, c, a);
  const Eigen::Vector3d at_c = angle_partials(c, a, b);
  const double kappa = metric.curvature();
  // Area = curvature * (angle sum - pi); collect the angle-sum partials.
  return kappa * Eigen::Vector3d(at_a[0] + at_b[2] + at_c[1],
                                 at_a[1] + at_b[0] + at_c[2],
                                 at_a[2] + at_b[1] + at_c[0]);
}

EqualityResidual equality_residual(const AffineDependence& dep,
                                   const PointConfiguration& config,
                                   const Eigen::MatrixXd& velocities, int k,
                                   const Tolerances&) {
  if (dep.count() != config.count())
    throw DimensionMismatch("dependence length must match the point count");
  if (k < 1 || k + 1 > config.count())
    throw ValidationError("face dimension out of range for this configuration");
  if (config.metric.curved() && k > 2)
    throw UnsupportedDimension("curved residuals are available for k <= 2");
  const Eigen::MatrixXd vel = checked_velocities(config, velocities);
  return weighted_rate_sum(dep.alpha, config, vel, k);
}

Eigen::VectorXd mirror_point(const PointConfiguration& config, int apex,
                             const Tolerances& tol) {
  const int m = config.count();
  const int d = config.ambient();
  if (apex < 0 || apex >= m) throw InvalidIndices("apex index out of range");
  if (m < 2) throw DegenerateHyperplane("no points left to span a hyperplane");
  const Eigen::VectorXd top = config.point(apex);
  std::vector<int> rest;
  for (int i = 0; i < m; ++i)
    if (i != apex) rest.push_back(i);

  if (!config.metric.curved()) {
    const Eigen::VectorXd origin = config.point(rest[0]);
    if (d == 1) {
      for (int i : rest)
        if (std::abs(config.points(i, 0) - origin[0]) > tol.general_position)
          throw DegenerateHyperplane("one-dimensional reflection needs a single mirror point");
      return 2.0 * origin - top;
    }
    const int rows = m - 2;
    if (rows < d - 1)
      throw DegenerateHyperplane("too few points to span a reflecting hyperplane");
    Eigen::MatrixXd span(rows, d);
    for (int r = 1; r <= rows; ++r)
      span.row(r - 1) = (config.point(rest[static_cast<std::size_t>(r)]) - origin).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv[0] <= 0.0 || sv[d - 2] <= tol.general_position * sv[0])
      throw DegenerateHyperplane("mirror points do not span a full hyperplane");
    const Eigen::VectorXd normal = svd.matrixV().col(d - 1);
    const double offset = (top - origin).dot(normal);
    return top - 2.0 * offset * normal;
  }

  // Curved: reflect across the linear hyperplane through the origin and the
  // remaining points, orthogonally for the ambient bilinear form.
  const int rows = m - 1;
  if (rows < d - 1)
    throw DegenerateHyperplane("too few points to span a reflecting hyperplane");
  Eigen::MatrixXd span(rows, d);
  for (int r = 0; r < rows; ++r)
    span.row(r) = bilinear_adjoint(config.point(rest[static_cast<std::size_t>(r)]),
                                   config.metric)
                      .transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv[0] <= 0.0 || sv[d - 2] <= tol.general_position * sv[0])
    throw DegenerateHyperplane("mirror points do not span a full hyperplane");
  const Eigen::VectorXd u = svd.matrixV().col(d - 1);
  const double q = bilinear_dot(u, u, config.metric);
  if (std::abs(q) <= 1e-10 * u.squaredNorm())
    throw DegenerateHyperplane("reflecting hyperplane has a null normal");
  const double coeff = 2.0 * bilinear_dot(top, u, config.metric) / q;
  return top - coeff * u;
}

SignCheckReport inequality_sign_check(const AffineDependence& dep,
                                      const PointConfiguration& config,
                                      const MotionPath& path, int k,
                                      const Tolerances& tol) {
  const int m = config.count();
  if (dep.count() != m)
    throw DimensionMismatch("dependence length must match the point count");
  if (path.count() != m)
    throw DimensionMismatch("path vertex count must match the configuration");
  const Metric lifted{config.metric.space, config.metric.dim + 1};
  if (!(path.metric() == lifted))
    throw ValidationError("path must live in the once-widened model space");
  if (k < 1 || k + 1 > m)
    throw ValidationError("face dimension out of range for this configuration");
  if (config.metric.curved() && k > 2)
    throw UnsupportedDimension("curved sign checks are available for k <= 2");

  const PointConfiguration start = config.lifted();
  const PointConfiguration path_start = path.at(0.0, tol);
  const double start_scale = std::max(1.0, start.points.cwiseAbs().maxCoeff());
  if ((path_start.points - start.points).cwiseAbs().maxCoeff() > 1e-9 * start_scale)
    throw ValidationError("path must start at the given configuration");

  // Reference coefficient of the unmoved configuration.
  double c_ref;
  if (config.metric.curved()) {
    c_ref = k == 1 ? 1.0 : curved_c(k - 1, dep, config, tol);
  } else {
    c_ref = invariant_profile(dep, config, tol).c[k - 1];
  }
  if (std::abs(c_ref) <= tol.zero_coefficient * start_scale)
    throw ValidationError("reference coefficient vanishes; the sign check is undefined");

  const bool curved = config.metric.curved();
  const double model_factor = curved ? 1.0 / (2.0 * factorial(k)) : 1.0;

  // Squared chord between the first vertex and its mirror image across the
  // hyperplane of the remaining vertices, at time t.
  auto mirror_chord = [&](double t) -> double {
    const PointConfiguration cfg_t = path.at(t, tol);
    const Eigen::VectorXd mirrored = mirror_point(cfg_t, 0, tol);
    const Eigen::VectorXd diff = mirrored - cfg_t.point(0);
    return bilinear_dot(diff, diff, path.metric());
  };

  SignCheckReport report;
  report.reference_coefficient = c_ref;
  const std::vector<double> grid = {1e-2, 1e-3, 1e-4};
  bool any_resolved = false;
  bool all_sums_quiet = true;
  bool all_predictions_quiet = true;
  bool signs_ok = true;

  for (double t : grid) {
    const double h = t * 1e-3;
    const PointConfiguration cfg_t = path.at(t, tol);

    // Weights re-solved at time t: the first vertex is replaced by the
    // midpoint of itself and its mirror image (the foot of the hyperplane
    // of the others), which keeps the list dependent at every t.  The
    // leading weight plays the role of the first coefficient and is
    // normalized to +1, matching the canonical normalization at t = 0.
    const Eigen::VectorXd mirrored = mirror_point(cfg_t, 0, tol);
    Eigen::MatrixXd midpoint_system(m, cfg_t.ambient());
    midpoint_system.row(0) = 0.5 * (mirrored.transpose() + cfg_t.points.row(0));
    midpoint_system.bottomRows(m - 1) = cfg_t.points.bottomRows(m - 1);
    Eigen::VectorXd weights = null_weight_vector(midpoint_system, path.metric());
    if (std::abs(weights[0]) < 1e-10 * weights.cwiseAbs().maxCoeff())
      throw SolverFailure("midpoint dependence has a vanishing leading weight");
    weights /= weights[0];

    const Eigen::MatrixXd tangential = checked_velocities(cfg_t, path.velocities(t));
    const EqualityResidual sum = weighted_rate_sum(weights, cfg_t, tangential, k);

    const double chord_rate = (mirror_chord(t + h) - mirror_chord(t - h)) / (2.0 * h);
    const double prediction = -0.25 * model_factor * chord_rate * c_ref;

    SignProbe probe;
    probe.t = t;
    probe.weighted_sum = sum.value;
    probe.prediction = prediction;
    const double noise = 1e-11 * std::max(sum.scale, 1e-30);
    probe.above_noise = std::abs(sum.value) > noise;
    const bool prediction_resolved = std::abs(prediction) > noise;
    probe.ratio = prediction_resolved ? sum.value / prediction : 0.0;
    if (probe.above_noise) all_sums_quiet = false;
    if (prediction_resolved) all_predictions_quiet = false;
    if (probe.above_noise && prediction_resolved) {
      any_resolved = true;
      if ((sum.value > 0.0) != (prediction > 0.0)) signs_ok = false;
    }
    report.probes.push_back(probe);
  }

  if (all_sums_quiet && all_predictions_quiet) {
    // The path never leaves the hyperplane: the equality identity applies.
    report.equality_regime = true;
    report.sign_consistent = true;
    report.ratio_at_smallest = 0.0;
    return report;
  }
  if (!any_resolved)
    throw SignalTooSmall("weighted sum is below the noise floor at every probe");
  report.sign_consistent = signs_ok;
  report.ratio_at_smallest = report.probes.back().ratio;
  return report;
}

const char* flex_verdict_name(FlexVerdict verdict) {
  switch (verdict) {
    case FlexVerdict::FirstOrderUnyielding:
      return "first-order-unyielding";
    case FlexVerdict::FlexFound:
      return "flex-found";
  }
  return "unknown";
}

FlexReport first_order_flex(const TensegrityFramework& framework,
                            const PointConfiguration& config, int ambient_dim,
                            const Tolerances& tol) {
  const int n = config.metric.dim;
  const int m = config.count();
  if (ambient_dim != n && ambient_dim != n + 1)
    throw ValidationError("ambient dimension must be n or n+1");
  if (framework.faces.empty()) throw ValidationError("framework has no faces");
  const int per_face = framework.k + 1;
  if (framework.faces.size() != static_cast<std::size_t>(binomial(m, per_face)))
    throw ValidationError("framework must enumerate every face of its dimension");
  const PointConfiguration working = ambient_dim == n ? config : config.lifted();
  const Metric& metric = working.metric;
  if (metric.curved() && framework.k > 2)
    throw UnsupportedDimension("curved flex tests are available for k <= 2");

  const int d = working.ambient();
  const int nv = m * d;
  const int nfaces = static_cast<int>(framework.faces.size());

  // Gradient of the face-volume functional with respect to the stacked
  // vertex velocities; rows are later normalized so the slack gate is
  // scale-free.
  auto face_gradient = [&](const LabeledFace& face) -> Eigen::VectorXd {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(nv);
    const std::vector<int>& vs = face.vertices;
    validate_face(vs, m);
    auto add_edge = [&](int i, int j, double coeff) {
      const Eigen::VectorXd adj =
          bilinear_adjoint(working.point(i) - working.point(j), metric);
      g.segment(i * d, d) += 2.0 * coeff * adj;
      g.segment(j * d, d) -= 2.0 * coeff * adj;
    };
    if (!metric.curved()) {
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
          add_edge(vs[a], vs[b], volume_gradient_edge(vs, vs[a], vs[b], working));
      return g;
    }
    if (framework.k == 1) {
      const double s = geodesic_side(working, vs[0], vs[1]);
      add_edge(vs[0], vs[1], 1.0 / chord_geodesic_derivative(s, metric));
      return g;
    }
    const double a = geodesic_side(working, vs[1], vs[2]);
    const double b = geodesic_side(working, vs[0], vs[2]);
    const double c = geodesic_side(working, vs[0], vs[1]);
    const Eigen::Vector3d partial = triangle_area_side_partials(a, b, c, metric);
    add_edge(vs[1], vs[2], partial[0] / chord_geodesic_derivative(a, metric));
    add_edge(vs[0], vs[2], partial[1] / chord_geodesic_derivative(b, metric));
    add_edge(vs[0], vs[1], partial[2] / chord_geodesic_derivative(c, metric));
    return g;
  };

  std::vector<Eigen::VectorXd> rows;
  std::vector<RowSense> senses;
  Eigen::VectorXd objective_v = Eigen::VectorXd::Zero(nv);
  rows.reserve(static_cast<std::size_t>(nfaces));
  for (const LabeledFace& face : framework.faces) {
    Eigen::VectorXd g = face_gradient(face);
    const double norm = g.norm();
    if (norm > 1e-12) g /= norm;
    rows.push_back(g);
    switch (face.label) {
      case FaceLabel::Cable:
        senses.push_back(RowSense::LessEqual);
        objective_v -= g;
        break;
      case FaceLabel::Strut:
        senses.push_back(RowSense::GreaterEqual);
        objective_v += g;
        break;
      case FaceLabel::Bar:
        senses.push_back(RowSense::Equal);
        break;
    }
  }
  if (metric.curved()) {
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(nv);
      Eigen::VectorXd adj = bilinear_adjoint(working.point(i), metric);
      adj /= adj.norm();
      g.segment(i * d, d) = adj;
      rows.push_back(g);
      senses.push_back(RowSense::Equal);
    }
  }

  const int nrows = static_cast<int>(rows.size());
  LpProblem lp;
  lp.objective.resize(2 * nv);
  lp.objective.head(nv) = objective_v;
  lp.objective.tail(nv) = -objective_v;
  lp.lhs = Eigen::MatrixXd::Zero(nrows + 2 * nv, 2 * nv);
  lp.rhs = Eigen::VectorXd::Zero(nrows + 2 * nv);
  lp.sense = senses;
  for (int r = 0; r < nrows; ++r) {
    lp.lhs.row(r).head(nv) = rows[static_cast<std::size_t>(r)].transpose();
    lp.lhs.row(r).tail(nv) = -rows[static_cast<std::size_t>(r)].transpose();
  }
  for (int j = 0; j < 2 * nv; ++j) {
    lp.lhs(nrows + j, j) = 1.0;
    lp.rhs(nrows + j) = 1.0;
    lp.sense.push_back(RowSense::LessEqual);
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw SolverFailure("flex linear program did not reach an optimum");

  FlexReport report;
  report.lp_optimum = sol.objective;
  report.ambient_dim = ambient_dim;
  report.witness = Eigen::MatrixXd::Zero(m, d);
  report.face_derivatives = Eigen::VectorXd::Zero(nfaces);
  if (sol.objective <= tol.lp_gate) {
    report.verdict = FlexVerdict::FirstOrderUnyielding;
    return report;
  }
  report.verdict = FlexVerdict::FlexFound;
  Eigen::VectorXd v = sol.x.head(nv) - sol.x.segment(nv, nv);
  for (int i = 0; i < m; ++i) report.witness.row(i) = v.segment(i * d, d).transpose();
  double worst = 0.0;
  for (int r = 0; r < nrows; ++r) {
    const double value = rows[static_cast<std::size_t>(r)].dot(v);
    if (r < nfaces) {
      switch (framework.faces[static_cast<std::size_t>(r)].label) {
        case FaceLabel::Cable:
          worst = std::max(worst, value);
          break;
        case FaceLabel::Strut:
          worst = std::max(worst, -value);
          break;
        case FaceLabel::Bar:
          worst = std::max(worst, std::abs(value));
          break;
      }
    } else {
      worst = std::max(worst, std::abs(value));
    }
  }
  report.max_violation = std::max(worst, 0.0);
  const Eigen::MatrixXd tangential = checked_velocities(working, report.witness);
  for (int f = 0; f < nfaces; ++f) {
    const std::vector<int>& vs = framework.faces[static_cast<std::size_t>(f)].vertices;
    report.face_derivatives[f] =
        metric.curved() ? riemannian_rate_unchecked(vs, tangential, working)
                        : squared_rate_unchecked(vs, tangential, working);
  }
  return report;
}

SearchReport global_rigidity_falsifier(const TensegrityFramework& framework,
                                       const PointConfiguration& config,
                                       long long trials, std::uint64_t seed,
                                       const Tolerances& tol) {
  if (trials < 1) throw ValidationError("falsifier needs at least one trial");
  if (framework.k != 1)
    throw ValidationError("the global-rigidity search applies to edge frameworks");
  const int m = config.count();
  if (framework.faces.size() != static_cast<std::size_t>(binomial(m, 2)))
    throw ValidationError("framework must enumerate every edge");
  const PointConfiguration original = config.lifted();
  const Metric& metric = original.metric;
  const int d = original.ambient();

  const Eigen::MatrixXd target = distance_matrix(original).entries;
  const double chord_scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  const double coord_scale = std::max(1.0, original.points.cwiseAbs().maxCoeff());
  const double accept_gate = 1e-12 * chord_scale;
  const double congruence_gate = 1e-6;

  auto retract = [&](Eigen::MatrixXd& pts) -> bool {
    if (!metric.curved()) return true;
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd x = pts.row(i).transpose();
      double q = bilinear_dot(x, x, metric);
      if (metric.space == Space::Hyperbolic) q = -q;
      if (q < 1e-12) return false;
      x /= std::sqrt(q);
      if (metric.space == Space::Hyperbolic && x[0] < 0.0) x = -x;
      pts.row(i) = x.transpose();
    }
    return true;
  };

  auto chord_of = [&](const Eigen::MatrixXd& pts, int i, int j) {
    const Eigen::VectorXd diff = (pts.row(i) - pts.row(j)).transpose();
    return bilinear_dot(diff, diff, metric);
  };

  struct Active {
    int i = 0, j = 0;
    double residual = 0.0;  // positive when the constraint is violated
    double sign = 1.0;      // direction that increases the violation
  };
  // Rows for the descent step.  `band > 0` additionally pulls in constraints
  // within `band` of tightness as equality rows; near an all-tight solution
  // this keeps the working set stable instead of ping-ponging between the
  // two halves of the constraint pairs.
  auto violations = [&](const Eigen::MatrixXd& pts, double band) {
    std::vector<Active> act;
    for (const LabeledFace& face : framework.faces) {
      const int i = face.vertices[0];
      const int j = face.vertices[1];
      const double delta = chord_of(pts, i, j) - target(i, j);
      if (face.label != FaceLabel::Strut &&
          (delta > accept_gate || std::abs(delta) <= band))
        act.push_back({i, j, delta, 1.0});
      if (face.label != FaceLabel::Cable &&
          (-delta > accept_gate || std::abs(delta) <= band))
        act.push_back({i, j, -delta, -1.0});
    }
    return act;
  };
  auto violation_norm = [&](const Eigen::MatrixXd& pts) {
    double sum = 0.0;
    for (const Active& a : violations(pts, 0.0)) sum += a.residual * a.residual;
    return std::sqrt(sum);
  };

  SearchReport report;
  report.kind = "global-rigidity";
  report.metric = metric;
  report.trials = trials;
  report.seed = seed;
  report.min_margin = std::numeric_limits<double>::infinity();

  // One perturb-and-descend round; returns true when pts reaches feasibility.
  auto descend_round = [&](Rng& rng, Eigen::MatrixXd& pts) -> bool {
    pts = original.points;
    const double sigma = (0.05 + 0.45 * rng.uniform()) * coord_scale;
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd noise(d);
      for (int j = 0; j < d; ++j) noise[j] = sigma * rng.gaussian();
      if (metric.curved()) {
        const Eigen::VectorXd x = pts.row(i).transpose();
        pts.row(i) = exponential_map(x, tangent_projection(x, noise, metric), metric).transpose();
      } else {
        pts.row(i) += noise.transpose();
      }
    }

    double lambda = 1e-8;
    for (int iter = 0; iter < 400; ++iter) {
      const double base_norm = violation_norm(pts);
      if (base_norm == 0.0) return true;
      const double band = std::min(10.0 * base_norm, 100.0 * accept_gate);
      const std::vector<Active> act = violations(pts, band);
      const int rows = static_cast<int>(act.size());
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, m * d);
      Eigen::VectorXd res(rows);
      for (int r = 0; r < rows; ++r) {
        const Active& a = act[static_cast<std::size_t>(r)];
        res[r] = a.residual;
        const Eigen::VectorXd diff = (pts.row(a.i) - pts.row(a.j)).transpose();
        // Row entries are derivatives through the retraction, which projects
        // the displacement onto the tangent space in the bilinear geometry
        // before pairing: project first, then convert to coordinates.
        auto row_block = [&](int vertex) -> Eigen::VectorXd {
          Eigen::VectorXd v = diff;
          if (metric.curved())
            v = tangent_projection(pts.row(vertex).transpose(), v, metric);
          return 2.0 * a.sign * bilinear_adjoint(v, metric);
        };
        jac.row(r).segment(a.i * d, d) += row_block(a.i).transpose();
        jac.row(r).segment(a.j * d, d) -= row_block(a.j).transpose();
      }
      bool improved = false;
      for (int attempt = 0; attempt < 24 && lambda < 1e30; ++attempt) {
        Eigen::MatrixXd gram = jac * jac.transpose();
        gram.diagonal().array() += lambda * std::max(1.0, gram.diagonal().maxCoeff());
        const Eigen::VectorXd mult = gram.ldlt().solve(res);
        const Eigen::VectorXd step = -jac.transpose() * mult;
        Eigen::MatrixXd candidate = pts;
        for (int i = 0; i < m; ++i)
          candidate.row(i) += step.segment(i * d, d).transpose();
        if (!retract(candidate)) {
          lambda *= 10.0;
          continue;
        }
        const double cand_norm = violation_norm(candidate);
        if (cand_norm < base_norm) {
          pts = candidate;
          lambda = std::max(lambda / 3.0, 1e-12);
          improved = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
    }
    return violation_norm(pts) == 0.0;
  };

  for (long long trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = Rng::derive(seed, static_cast<std::uint64_t>(trial));
    Rng rng(trial_seed);
    Eigen::MatrixXd pts = original.points;
    // A start occasionally lands in a basin where the descent stalls; retry
    // the trial from a fresh draw of the same stream a few times.
    bool accepted = false;
    for (int round = 0; round < 4 && !accepted; ++round)
      accepted = descend_round(rng, pts);
    if (!accepted) continue;

    double distortion = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        distortion = std::max(distortion, std::abs(chord_of(pts, i, j) - target(i, j)) /
                                              std::max(1.0, std::abs(target(i, j))));
    const double margin = congruence_gate - distortion;
    ++report.samples_accepted;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.extreme_trial = trial;
      report.extreme_seed = trial_seed;
      report.extreme_coordinates = pts;
    }
    if (distortion > congruence_gate)
      report.violations.push_back({trial, trial_seed, margin, pts});
  }
  if (report.samples_accepted == 0) report.min_margin = 0.0;
  return report;
}

}  // namespace volrig
