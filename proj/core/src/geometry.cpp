#include "volrig/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace volrig {

namespace {

void check_indices(const std::vector<int>& indices, int count) {
  std::set<int> seen;
  for (int ix : indices) {
    if (ix < 0 || ix >= count) throw InvalidIndices("point index out of range");
    if (!seen.insert(ix).second) throw InvalidIndices("duplicate point index");
  }
}

}  // namespace

std::string space_name(Space s) {
  switch (s) {
    case Space::Euclidean: return "euclidean";
    case Space::Spherical: return "spherical";
    case Space::Hyperbolic: return "hyperbolic";
  }
  return "euclidean";
}

Space space_from_name(const std::string& name) {
  if (name == "euclidean") return Space::Euclidean;
  if (name == "spherical") return Space::Spherical;
  if (name == "hyperbolic") return Space::Hyperbolic;
  throw ValidationError("unknown space name: " + name);
}

double bilinear_dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Metric& m) {
  if (u.size() != v.size()) throw DimensionMismatch("bilinear_dot: size mismatch");
  double d = u.dot(v);
  if (m.space == Space::Hyperbolic) d -= 2.0 * u[0] * v[0];
  return d;
}

double wedge_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Metric& m) {
  if (a.rows() != b.rows()) throw DimensionMismatch("wedge_inner: row count mismatch");
  if (a.rows() > 0 && a.cols() != b.cols())
    throw DimensionMismatch("wedge_inner: ambient dimension mismatch");
  const int k = static_cast<int>(a.rows());
  if (k == 0) return 1.0;
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      g(i, j) = bilinear_dot(a.row(i).transpose(), b.row(j).transpose(), m);
  return g.determinant();
}

PointConfiguration PointConfiguration::make(const Metric& metric, Eigen::MatrixXd pts,
                                            const Tolerances& tol) {
  if (pts.cols() != metric.ambient())
    throw DimensionMismatch("point width does not match the metric's ambient dimension");
  if (!pts.allFinite()) throw ValidationError("non-finite point coordinate");
  if (metric.curved()) {
    for (int i = 0; i < pts.rows(); ++i) {
      Eigen::VectorXd x = pts.row(i).transpose();
      const double q = bilinear_dot(x, x, metric);
      const double target = metric.space == Space::Spherical ? 1.0 : -1.0;
      const double gate = tol.surface_rel * std::max(1.0, std::abs(q));
      if (std::abs(q - target) > gate)
        throw ValidationError("point " + std::to_string(i) + " is off the model surface");
      if (metric.space == Space::Hyperbolic && x[0] <= 0.0)
        throw ValidationError("hyperboloid point with non-positive first coordinate");
      pts.row(i) = (x / std::sqrt(std::abs(q))).transpose();
    }
  }
  return PointConfiguration{metric, std::move(pts)};
}

PointConfiguration PointConfiguration::lifted() const {
  Eigen::MatrixXd wide(points.rows(), points.cols() + 1);
  wide.leftCols(points.cols()) = points;
  wide.col(points.cols()).setZero();
  return PointConfiguration{Metric{metric.space, metric.dim + 1}, std::move(wide)};
}

double squared_chord(const PointConfiguration& config, int i, int j) {
  check_indices({i, j}, config.count());
  const Eigen::VectorXd d = config.point(i) - config.point(j);
  return bilinear_dot(d, d, config.metric);
}

DistanceMatrix distance_matrix(const PointConfiguration& config) {
  const int m = config.count();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) e(i, j) = e(j, i) = squared_chord(config, i, j);
  return DistanceMatrix{std::move(e)};
}

double squared_volume_from_chords(const Eigen::MatrixXd& chord2) {
  if (chord2.rows() != chord2.cols()) throw DimensionMismatch("chord matrix must be square");
  const int k = static_cast<int>(chord2.rows()) - 1;
  if (k <= 0) return 1.0;
  if (k > 64) throw DimensionMismatch("chord matrix is unreasonably large");
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m(i, j) = 0.5 * (chord2(0, i + 1) + chord2(0, j + 1) - chord2(i + 1, j + 1));
  return m.determinant();
}

double squared_simplex_volume(const std::vector<int>& indices,
                              const PointConfiguration& config) {
  check_indices(indices, config.count());
  const int kp1 = static_cast<int>(indices.size());
  Eigen::MatrixXd c(kp1, kp1);
  for (int i = 0; i < kp1; ++i) {
    c(i, i) = 0.0;
    for (int j = i + 1; j < kp1; ++j)
      c(i, j) = c(j, i) = squared_chord(config, indices[i], indices[j]);
  }
  return squared_volume_from_chords(c);
}

double o_prefixed_square(const std::vector<int>& indices, const PointConfiguration& config) {
  if (!config.metric.curved())
    throw UnsupportedMetric("origin-prefixed square requires a curved metric");
  check_indices(indices, config.count());
  const int kp1 = static_cast<int>(indices.size());
  Eigen::MatrixXd rows(kp1, config.ambient());
  for (int i = 0; i < kp1; ++i) rows.row(i) = config.points.row(indices[i]);
  return wedge_inner(rows, rows, config.metric);
}

double o_prefixed_abs(const std::vector<int>& indices, const PointConfiguration& config) {
  return std::sqrt(std::abs(o_prefixed_square(indices, config)));
}

double volume_gradient_edge(const std::vector<int>& indices, int i, int j,
                            const PointConfiguration& config) {
  check_indices(indices, config.count());
  if (i == j) throw InvalidIndices("edge endpoints must be distinct");
  const bool has_i = std::find(indices.begin(), indices.end(), i) != indices.end();
  const bool has_j = std::find(indices.begin(), indices.end(), j) != indices.end();
  if (!has_i || !has_j) throw InvalidIndices("edge endpoint not part of the simplex");
  std::vector<int> rest;
  for (int ix : indices)
    if (ix != i && ix != j) rest.push_back(ix);
  const int km1 = static_cast<int>(rest.size());
  Eigen::MatrixXd from_i(km1, config.ambient());
  Eigen::MatrixXd from_j(km1, config.ambient());
  for (int r = 0; r < km1; ++r) {
    from_i.row(r) = config.points.row(rest[r]) - config.points.row(i);
    from_j.row(r) = config.points.row(rest[r]) - config.points.row(j);
  }
  return wedge_inner(from_i, from_j, config.metric);
}

double chord_from_geodesic(double d, const Metric& m) {
  if (d < 0.0) throw ValidationError("geodesic distance must be non-negative");
  switch (m.space) {
    case Space::Euclidean: return d * d;
    case Space::Spherical:
      if (d >= M_PI) throw ValidationError("spherical geodesic distance must lie in [0, pi)");
      return 2.0 - 2.0 * std::cos(d);
    case Space::Hyperbolic: return 2.0 * std::cosh(d) - 2.0;
  }
  return d * d;
}

double geodesic_from_chord(double chord2, const Metric& m) {
  if (chord2 < 0.0) throw ValidationError("squared chord must be non-negative");
  switch (m.space) {
    case Space::Euclidean: return std::sqrt(chord2);
    case Space::Spherical:
      if (chord2 >= 4.0) throw ValidationError("spherical squared chord must lie in [0, 4)");
      return std::acos(std::clamp(1.0 - 0.5 * chord2, -1.0, 1.0));
    case Space::Hyperbolic: return std::acosh(1.0 + 0.5 * chord2);
  }
  return std::sqrt(chord2);
}

double chord_geodesic_derivative(double d, const Metric& m) {
  switch (m.space) {
    case Space::Euclidean: return 2.0 * d;
    case Space::Spherical: return 2.0 * std::sin(d);
    case Space::Hyperbolic: return 2.0 * std::sinh(d);
  }
  return 2.0 * d;
}

Eigen::VectorXd tangent_projection(const Eigen::VectorXd& base, const Eigen::VectorXd& w,
                                   const Metric& m) {
  if (!m.curved()) return w;
  const double bb = bilinear_dot(base, base, m);
  return w - (bilinear_dot(w, base, m) / bb) * base;
}

Eigen::VectorXd exponential_map(const Eigen::VectorXd& base, const Eigen::VectorXd& tangent,
                                const Metric& m) {
  if (!m.curved()) return base + tangent;
  const double scale = base.norm() * tangent.norm();
  if (std::abs(bilinear_dot(tangent, base, m)) > 1e-8 * std::max(1.0, scale))
    throw TangencyViolation("exponential map argument is not tangent to the surface");
  const Eigen::VectorXd t = tangent_projection(base, tangent, m);
  const double tt = bilinear_dot(t, t, m);
  const double r = std::sqrt(std::max(0.0, tt));
  if (r < 1e-300) return base;
  if (m.space == Space::Spherical) return std::cos(r) * base + (std::sin(r) / r) * t;
  return std::cosh(r) * base + (std::sinh(r) / r) * t;
}

double vertex_angle(const PointConfiguration& config, int at, int b, int c) {
  check_indices({at, b, c}, config.count());
  const Metric& m = config.metric;
  const Eigen::VectorXd a = config.point(at);
  const Eigen::VectorXd u = tangent_projection(a, config.point(b) - a, m);
  const Eigen::VectorXd v = tangent_projection(a, config.point(c) - a, m);
  const double uu = bilinear_dot(u, u, m);
  const double vv = bilinear_dot(v, v, m);
  if (uu <= 0.0 || vv <= 0.0)
    throw DegenerateSimplex("vertex angle at a degenerate corner");
  const double cosine = bilinear_dot(u, v, m) / std::sqrt(uu * vv);
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

}  // namespace volrig
