#include "test_oracles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "volrig/errors.hpp"

namespace volrig::testsupport {

namespace {

double space_dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v, Space space) {
  double d = u.dot(v);
  if (space == Space::Hyperbolic) d -= 2.0 * u[0] * v[0];
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Paths and files
// ---------------------------------------------------------------------------

std::string data_path(const std::string& name) {
#ifdef VOLRIG_TEST_DATA_DIR
  return std::string(VOLRIG_TEST_DATA_DIR) + "/" + name;
#else
  return "tests/data/" + name;
#endif
}

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// Fixture configurations
// ---------------------------------------------------------------------------

PointConfiguration square() {
  Eigen::MatrixXd pts(4, 2);
  pts << 1, 0, 0, 1, -1, 0, 0, -1;
  return PointConfiguration::make(Metric::euclidean(2), pts);
}

PointConfiguration square_inside() {
  Eigen::MatrixXd pts(4, 2);
  pts << 0.5, 0, 0, 1, -1, 0, 0, -1;
  return PointConfiguration::make(Metric::euclidean(2), pts);
}

PointConfiguration square_outside() {
  Eigen::MatrixXd pts(4, 2);
  pts << 1.5, 0, 0, 1, -1, 0, 0, -1;
  return PointConfiguration::make(Metric::euclidean(2), pts);
}

PointConfiguration orthocentric_fixture() {
  Eigen::MatrixXd pts(4, 2);
  pts << -1, 0, 1, 0, 0, 2, 0, 0.5;
  return PointConfiguration::make(Metric::euclidean(2), pts);
}

PointConfiguration octant_plus() {
  const double s = 1.0 / std::sqrt(3.0);
  Eigen::MatrixXd pts(4, 3);
  pts << 1, 0, 0, 0, 1, 0, 0, 0, 1, s, s, s;
  return PointConfiguration::make(Metric::spherical(2), pts);
}

PointConfiguration curved_builtin(Space space) {
  const double r = 0.8;
  const double radial = space == Space::Spherical ? std::sin(r) : std::sinh(r);
  const double axial = space == Space::Spherical ? std::cos(r) : std::cosh(r);
  Eigen::MatrixXd pts(4, 3);
  const double angles[4] = {0.0, M_PI_2, M_PI, 3.0 * M_PI_2};
  for (int i = 0; i < 4; ++i) {
    pts(i, 0) = axial;
    pts(i, 1) = radial * std::cos(angles[i]);
    pts(i, 2) = radial * std::sin(angles[i]);
  }
  return PointConfiguration::make(Metric{space, 2}, pts);
}

PointConfiguration hyperbolic_skew() {
  Eigen::MatrixXd pts(4, 3);
  pts << 1, 0, 0, std::sqrt(2.0), 1, 0, std::sqrt(2.0), 0, 1, std::sqrt(3.0), 1, 1;
  return PointConfiguration::make(Metric::hyperbolic(2), pts);
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

PointConfiguration random_flat_degenerate(int n, Rng& rng, double scale) {
  const int m = n + 2;
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::MatrixXd pts(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) pts(i, j) = scale * rng.gaussian();
    // Every (n+1)-subset must be affinely well conditioned.
    bool good = true;
    for (int skip = 0; skip < m && good; ++skip) {
      Eigen::MatrixXd rows(n, n);
      int base = skip == 0 ? 1 : 0;
      int r = 0;
      for (int i = 0; i < m; ++i) {
        if (i == skip || i == base) continue;
        rows.row(r++) = pts.row(i) - pts.row(base);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
      const double smin = svd.singularValues().minCoeff();
      const double smax = svd.singularValues().maxCoeff();
      if (!(smin > 1e-4 * smax)) good = false;
    }
    if (good) return PointConfiguration::make(Metric::euclidean(n), pts);
  }
  throw std::runtime_error("random_flat_degenerate: no well-conditioned sample");
}

Eigen::VectorXd random_vector(int n, Rng& rng, double scale) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.gaussian();
  return v;
}

PointConfiguration random_cospherical(int n, Rng& rng) {
  const int m = n + 2;
  for (int attempt = 0; attempt < 256; ++attempt) {
    const Eigen::VectorXd center = random_vector(n, rng);
    const double radius = 0.5 + rng.uniform();
    Eigen::MatrixXd pts(m, n);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd dir = random_vector(n, rng);
      if (dir.norm() < 1e-3) {
        dir.setZero();
        dir[0] = 1.0;
      }
      pts.row(i) = (center + radius * dir / dir.norm()).transpose();
    }
    bool good = true;
    for (int skip = 0; skip < m && good; ++skip) {
      Eigen::MatrixXd rows(n, n);
      int base = skip == 0 ? 1 : 0;
      int r = 0;
      for (int i = 0; i < m; ++i) {
        if (i == skip || i == base) continue;
        rows.row(r++) = pts.row(i) - pts.row(base);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
      const double smin = svd.singularValues().minCoeff();
      const double smax = svd.singularValues().maxCoeff();
      if (!(smin > 1e-3 * smax)) good = false;
    }
    if (good) return PointConfiguration::make(Metric::euclidean(n), pts);
  }
  throw std::runtime_error("random_cospherical: no well-conditioned sample");
}

Eigen::MatrixXd random_velocities(const PointConfiguration& config, Rng& rng) {
  Eigen::MatrixXd v(config.count(), config.ambient());
  for (int i = 0; i < v.rows(); ++i) {
    Eigen::VectorXd row = rng.gaussian_vector(static_cast<int>(v.cols()));
    if (config.metric.curved())
      row = tangent_projection(config.point(i), row, config.metric);
    v.row(i) = row.transpose();
  }
  return v;
}

Eigen::VectorXd model_base(const Metric& metric) {
  Eigen::VectorXd base = Eigen::VectorXd::Zero(metric.ambient());
  if (metric.space == Space::Spherical) {
    base[metric.ambient() - 1] = 1.0;
  } else {
    base[0] = 1.0;
  }
  return base;
}

Eigen::VectorXd random_curved_point(const Eigen::VectorXd& base, double radius,
                                    const Metric& metric, Rng& rng) {
  Eigen::VectorXd dir =
      tangent_projection(base, rng.gaussian_vector(static_cast<int>(base.size())), metric);
  const double norm = std::sqrt(std::max(space_dot(dir, dir, metric.space), 1e-300));
  const double dist = radius * (0.2 + 0.8 * rng.uniform());
  return exponential_map(base, (dist / norm) * dir, metric);
}

Eigen::MatrixXd random_curved_points(int m, const Metric& metric, double radius,
                                     Rng& rng) {
  Eigen::VectorXd base = Eigen::VectorXd::Zero(metric.ambient());
  base[0] = 1.0;
  if (metric.space == Space::Spherical) {
    base.setZero();
    base[metric.ambient() - 1] = 1.0;
  }
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::MatrixXd pts(m, metric.ambient());
    for (int i = 0; i < m; ++i)
      pts.row(i) = random_curved_point(base, radius, metric, rng).transpose();
    bool good = true;
    for (int i = 0; i < m && good; ++i)
      for (int j = i + 1; j < m && good; ++j)
        if (geodesic_oracle(pts.row(i).transpose(), pts.row(j).transpose(),
                            metric.space) < 0.15)
          good = false;
    // Linear general position: the full point matrix must be well
    // conditioned when m <= ambient.
    if (good && m <= metric.ambient()) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(pts);
      if (svd.singularValues().minCoeff() < 1e-3 * svd.singularValues().maxCoeff())
        good = false;
    }
    if (good) return pts;
  }
  throw std::runtime_error("random_curved_points: no well-separated sample");
}

PointConfiguration random_orthocentric(Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Eigen::Vector2d a(rng.gaussian(), rng.gaussian());
    Eigen::Vector2d b(rng.gaussian(), rng.gaussian());
    Eigen::Vector2d c(rng.gaussian(), rng.gaussian());
    const double twice_area = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
    const double scale = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
    if (twice_area < 0.3 * scale * scale) continue;
    const Eigen::Vector2d h = orthocenter(a, b, c);
    Eigen::MatrixXd pts(4, 2);
    pts.row(0) = a;
    pts.row(1) = b;
    pts.row(2) = c;
    pts.row(3) = h;
    // The orthocenter may coincide with a vertex (right triangles); keep a
    // healthy separation so the configuration is in general position.
    bool good = true;
    for (int i = 0; i < 3; ++i)
      if ((h - pts.row(i).transpose().head<2>()).norm() < 0.2 * scale) good = false;
    if (!good) continue;
    try {
      return PointConfiguration::make(Metric::euclidean(2), pts);
    } catch (const Error&) {
      continue;
    }
  }
  throw std::runtime_error("random_orthocentric: no well-conditioned sample");
}

// ---------------------------------------------------------------------------
// Flat-geometry oracles
// ---------------------------------------------------------------------------

double gram_squared_volume(const std::vector<int>& indices,
                           const PointConfiguration& config) {
  const int k = static_cast<int>(indices.size()) - 1;
  if (k == 0) return 1.0;
  Eigen::MatrixXd d(k, config.ambient());
  for (int i = 0; i < k; ++i)
    d.row(i) = config.points.row(indices[static_cast<std::size_t>(i + 1)]) -
               config.points.row(indices[0]);
  const Eigen::MatrixXd gram = d * d.transpose();
  return gram.determinant();
}

Eigen::VectorXd null_alpha(const PointConfiguration& config) {
  const int m = config.count();
  const bool flat = !config.metric.curved();
  const int rows = config.ambient() + (flat ? 1 : 0);
  Eigen::MatrixXd system(rows, m);
  for (int i = 0; i < m; ++i) {
    system.block(0, i, config.ambient(), 1) = config.point(i);
    if (flat) system(config.ambient(), i) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  Eigen::VectorXd alpha = svd.matrixV().col(m - 1);
  int lead = 0;
  while (lead < m && std::abs(alpha[lead]) < 1e-12) ++lead;
  if (lead < m && alpha[lead] < 0) alpha = -alpha;
  return alpha;
}

SphereFit circumsphere_fit(const PointConfiguration& config,
                           const std::vector<int>& indices) {
  const int n = config.ambient();
  if (static_cast<int>(indices.size()) != n + 1)
    throw std::runtime_error("circumsphere_fit needs n+1 points");
  const Eigen::VectorXd a0 = config.point(indices[0]);
  Eigen::MatrixXd lhs(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ai = config.point(indices[static_cast<std::size_t>(i + 1)]);
    lhs.row(i) = (ai - a0).transpose();
    rhs[i] = 0.5 * (ai.squaredNorm() - a0.squaredNorm());
  }
  SphereFit fit;
  fit.center = lhs.fullPivLu().solve(rhs);
  fit.radius = (a0 - fit.center).norm();
  return fit;
}

double flat_c_oracle(int k, const Eigen::VectorXd& alpha,
                     const PointConfiguration& config, const Eigen::VectorXd& p,
                     const Eigen::VectorXd& q) {
  const int m = config.count();
  if (k == 0) return 1.0;
  double total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(k));
  // Iterative subset enumeration.
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    double coeff = 1.0;
    for (int i : idx) coeff *= alpha[i];
    Eigen::MatrixXd gram(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        gram(r, c) = (config.point(idx[static_cast<std::size_t>(r)]) - p)
                         .dot(config.point(idx[static_cast<std::size_t>(c)]) - q);
    total += coeff * gram.determinant();
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return total;
}

Eigen::Vector2d orthocenter(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                            const Eigen::Vector2d& c) {
  Eigen::Matrix2d lhs;
  lhs.row(0) = (b - c).transpose();
  lhs.row(1) = (c - a).transpose();
  Eigen::Vector2d rhs(a.dot(b - c), b.dot(c - a));
  return lhs.fullPivLu().solve(rhs);
}

// ---------------------------------------------------------------------------
// Curved-geometry oracles
// ---------------------------------------------------------------------------

double geodesic_oracle(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Space space) {
  const double dot = space_dot(a, b, space);
  if (space == Space::Spherical) return std::acos(std::min(1.0, std::max(-1.0, dot)));
  return std::acosh(std::max(1.0, -dot));
}

double angle_from_sides(double a, double b, double c, Space space) {
  double cosine;
  if (space == Space::Spherical)
    cosine = (std::cos(a) - std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c));
  else
    cosine = (std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c));
  return std::acos(std::min(1.0, std::max(-1.0, cosine)));
}

double triangle_area_oracle(const Eigen::MatrixXd& verts, Space space) {
  const double a = geodesic_oracle(verts.row(1).transpose(), verts.row(2).transpose(), space);
  const double b = geodesic_oracle(verts.row(0).transpose(), verts.row(2).transpose(), space);
  const double c = geodesic_oracle(verts.row(0).transpose(), verts.row(1).transpose(), space);
  const double excess = angle_from_sides(a, b, c, space) +
                        angle_from_sides(b, c, a, space) +
                        angle_from_sides(c, a, b, space) - M_PI;
  return space == Space::Spherical ? excess : -excess;
}

double curved_c2_oracle(const Eigen::VectorXd& alpha, const PointConfiguration& config) {
  const Space space = config.metric.space;
  double total = 0.0;
  for (int i = 0; i < config.count(); ++i) {
    for (int j = i + 1; j < config.count(); ++j) {
      const double d = geodesic_oracle(config.point(i), config.point(j), space);
      const double wedge = space == Space::Spherical ? std::sin(d) : std::sinh(d);
      total += alpha[i] * alpha[j] * wedge * d;
    }
  }
  // The prefactor is odd in the curvature (the flat limit of both model
  // spaces must agree with the flat invariant, which pins the sign).
  return 3.0 * config.metric.curvature() * total;
}

namespace {

// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], reversed
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Metric volume density of the radial-projection chart at barycentric
// weights lambda (size k+1) over the rows of `verts`.
double chart_density(const Eigen::MatrixXd& verts, const Eigen::VectorXd& lambda,
                     Space space) {
  const int k = static_cast<int>(verts.rows()) - 1;
  Eigen::VectorXd c = verts.transpose() * lambda;
  const double cc = space_dot(c, c, space);
  const double eps = cc >= 0 ? 1.0 : -1.0;
  const double rho = std::sqrt(std::abs(cc));
  Eigen::MatrixXd partials(k, verts.cols());
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXd w = (verts.row(j + 1) - verts.row(0)).transpose();
    const double cw = space_dot(c, w, space);
    partials.row(j) = (w / rho - eps * cw * c / (rho * rho * rho)).transpose();
  }
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      g(i, j) = space_dot(partials.row(i).transpose(), partials.row(j).transpose(), space);
      g(j, i) = g(i, j);
    }
  const double det = g.determinant();
  return det > 0 ? std::sqrt(det) : 0.0;
}

}  // namespace

double quadrature_simplex_volume(const Eigen::MatrixXd& verts, Space space, int order) {
  const int k = static_cast<int>(verts.rows()) - 1;
  if (k < 1 || k > 3) throw std::runtime_error("quadrature supports k in {1,2,3}");
  std::vector<double> nodes, weights;
  gauss_legendre(order, nodes, weights);

  double total = 0.0;
  Eigen::VectorXd lambda(k + 1);
  if (k == 1) {
    for (int i = 0; i < order; ++i) {
      const double u = nodes[static_cast<std::size_t>(i)];
      lambda[0] = 1.0 - u;
      lambda[1] = u;
      total += weights[static_cast<std::size_t>(i)] * chart_density(verts, lambda, space);
    }
    return total;
  }
  if (k == 2) {
    // Duffy map: l1 = u, l2 = v(1-u), Jacobian (1-u).
    for (int i = 0; i < order; ++i) {
      const double u = nodes[static_cast<std::size_t>(i)];
      for (int j = 0; j < order; ++j) {
        const double v = nodes[static_cast<std::size_t>(j)];
        lambda[1] = u;
        lambda[2] = v * (1.0 - u);
        lambda[0] = 1.0 - lambda[1] - lambda[2];
        total += weights[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(j)] *
                 (1.0 - u) * chart_density(verts, lambda, space);
      }
    }
    return total;
  }
  // k == 3: l1 = u, l2 = v(1-u), l3 = w(1-u)(1-v), Jacobian (1-u)^2 (1-v).
  for (int i = 0; i < order; ++i) {
    const double u = nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < order; ++j) {
      const double v = nodes[static_cast<std::size_t>(j)];
      for (int l = 0; l < order; ++l) {
        const double w = nodes[static_cast<std::size_t>(l)];
        lambda[1] = u;
        lambda[2] = v * (1.0 - u);
        lambda[3] = w * (1.0 - u) * (1.0 - v);
        lambda[0] = 1.0 - lambda[1] - lambda[2] - lambda[3];
        total += weights[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(j)] *
                 weights[static_cast<std::size_t>(l)] * (1.0 - u) * (1.0 - u) * (1.0 - v) *
                 chart_density(verts, lambda, space);
      }
    }
  }
  return total;
}

Eigen::MatrixXd embed_from_chords(const Eigen::MatrixXd& chord2, Space space) {
  const int m = static_cast<int>(chord2.rows());
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) = space == Space::Spherical ? 1.0 - 0.5 * chord2(i, j)
                                             : -1.0 - 0.5 * chord2(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd mu = eig.eigenvalues();  // ascending
  const Eigen::MatrixXd u = eig.eigenvectors();
  Eigen::MatrixXd x(m, m);
  if (space == Space::Spherical) {
    for (int j = 0; j < m; ++j)
      x.col(j) = std::sqrt(std::max(0.0, mu[j])) * u.col(j);
    return x;
  }
  // Hyperbolic: exactly one negative eigenvalue carries the timelike axis.
  if (mu[0] >= 0.0) throw std::runtime_error("hyperbolic Gram lost its negative direction");
  x.col(0) = std::sqrt(-mu[0]) * u.col(0);
  for (int j = 1; j < m; ++j)
    x.col(j) = std::sqrt(std::max(0.0, mu[j])) * u.col(j);
  if (x(0, 0) < 0) x.col(0) = -x.col(0);
  for (int i = 0; i < m; ++i)
    if (!(x(i, 0) > 0))
      throw std::runtime_error("hyperbolic embedding left the upper sheet");
  return x;
}

double d_pair_fd_oracle(const Eigen::MatrixXd& verts, Space space, int order) {
  const int m = static_cast<int>(verts.rows());
  const int k = m - 2;
  Eigen::MatrixXd chord2(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Eigen::VectorXd diff = (verts.row(i) - verts.row(j)).transpose();
      chord2(i, j) = space_dot(diff, diff, space);
    }
  const auto volume_at = [&](double pq) {
    Eigen::MatrixXd c = chord2;
    c(0, 1) = pq;
    c(1, 0) = pq;
    const Eigen::MatrixXd x = embed_from_chords(c, space);
    return quadrature_simplex_volume(x, space, order);
  };
  const double base = chord2(0, 1);
  // The quadrature volume is smooth and machine-accurate, so a small step is
  // safe; larger steps lose accuracy when the vertex Gram is near-singular.
  const double h = 2e-3 * std::max(0.25, base);
  const double dv = fd_derivative(volume_at, base, h);

  // |O-wedge| of the full vertex list from the raw Gram determinant.
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) = space_dot(verts.row(i).transpose(), verts.row(j).transpose(), space);
  const double owedge = std::sqrt(std::abs(gram.determinant()));

  double factorial = 1.0;
  for (int i = 2; i <= k + 1; ++i) factorial *= i;
  return 2.0 * factorial * owedge * dv;
}

double h1_entry_oracle(double ri, double rj) {
  return 4.0 * std::sinh(0.5 * ri) * std::sinh(0.5 * rj) / std::cosh(0.5 * (ri - rj));
}

double h1_det_oracle(const std::vector<double>& rs) {
  const std::size_t k = rs.size();
  std::vector<double> e(k);
  double front = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    e[i] = std::exp(rs[i]);
    front *= (e[i] - 1.0);
  }
  double det = cauchy_product_oracle(e, e);
  double pow2 = 1.0;
  for (std::size_t i = 0; i < k; ++i) pow2 *= 2.0;
  return pow2 * front * front * det;
}

double cauchy_product_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  if (y.size() != k) throw std::runtime_error("cauchy oracle needs equal lengths");
  double numerator = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      numerator *= (x[j] - x[i]) * (y[j] - y[i]);
  double denominator = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) denominator *= (x[i] + y[j]);
  return numerator / denominator;
}

// ---------------------------------------------------------------------------
// Numerics helpers
// ---------------------------------------------------------------------------

double fd_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

double rel_diff(double a, double b, double floor) {
  return std::abs(a - b) / std::max({floor, std::abs(a), std::abs(b)});
}

}  // namespace volrig::testsupport
