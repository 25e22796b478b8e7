#include "volrig/curved.hpp"

#include <algorithm>
#include <cmath>

#include "volrig/combinatorics.hpp"
#include "volrig/errors.hpp"
#include "volrig/invariants.hpp"
#include "volrig/rng.hpp"

namespace volrig {

namespace {

void require_curved(const Metric& m, const char* what) {
  if (!m.curved())
    throw UnsupportedMetric(std::string(what) + " requires a curved metric");
}

Eigen::MatrixXd stack_rows(const std::vector<Eigen::VectorXd>& vs) {
  Eigen::MatrixXd m(vs.size(), vs.empty() ? 0 : vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != m.cols()) throw DimensionMismatch("mixed vector widths");
    m.row(i) = vs[i].transpose();
  }
  return m;
}

/// Gram-scale used to gate near-zero wedge denominators.
double gram_scale(const Eigen::MatrixXd& rows, const Metric& m) {
  double s = 0.0;
  for (int i = 0; i < rows.rows(); ++i)
    for (int j = 0; j < rows.rows(); ++j)
      s = std::max(s, std::abs(bilinear_dot(rows.row(i).transpose(),
                                            rows.row(j).transpose(), m)));
  return std::max(s, 1.0);
}

PointConfiguration config_of(const std::vector<Eigen::VectorXd>& pts, const Metric& m) {
  return PointConfiguration{m, stack_rows(pts)};
}

std::vector<int> iota_indices(int n) {
  std::vector<int> ix(n);
  for (int i = 0; i < n; ++i) ix[i] = i;
  return ix;
}

/// Geodesic distance between two raw on-surface points.
double geodesic_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Metric& m) {
  const Eigen::VectorXd d = a - b;
  return geodesic_from_chord(bilinear_dot(d, d, m), m);
}

double kappa_power(const Metric& m, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= m.curvature();
  return f;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

CurvedSimplexVolume curved_volume(const std::vector<int>& indices,
                                  const PointConfiguration& config) {
  require_curved(config.metric, "curved simplex volume");
  const int k = static_cast<int>(indices.size()) - 1;
  CurvedSimplexVolume vol;
  vol.k = k;
  if (k < 0) throw InvalidIndices("empty vertex list");
  if (k == 0) {
    vol.value = 1.0;
  } else if (k == 1) {
    vol.value = geodesic_from_chord(squared_chord(config, indices[0], indices[1]),
                                    config.metric);
  } else if (k == 2) {
    const double sum = vertex_angle(config, indices[0], indices[1], indices[2]) +
                       vertex_angle(config, indices[1], indices[0], indices[2]) +
                       vertex_angle(config, indices[2], indices[0], indices[1]);
    vol.value = config.metric.curvature() * (sum - M_PI);
  } else {
    throw UnsupportedDimension("exact curved volume stops at intrinsic dimension 2");
  }
  return vol;
}

CurvedSimplexVolume curved_volume_mc(const std::vector<int>& indices,
                                     const PointConfiguration& config,
                                     long long samples, std::uint64_t seed) {
  require_curved(config.metric, "curved simplex volume");
  const int k = static_cast<int>(indices.size()) - 1;
  if (k != 3)
    throw UnsupportedDimension("the Monte Carlo estimator covers intrinsic dimension 3 only");
  if (samples < 2) throw ValidationError("need at least two Monte Carlo samples");
  const Metric& m = config.metric;
  const bool spherical = m.space == Space::Spherical;

  // Projective parametrization: x(u) = normalize(A_last + sum u_a e_a) with
  // e_a the displacements toward the other vertices.  Central projection
  // maps the flat simplex onto the geodesic one, and the pulled-back volume
  // element is sqrt(det G) for the bilinear Gram G of the partials.
  const Eigen::VectorXd base = config.point(indices[3]);
  std::vector<Eigen::VectorXd> edges;
  for (int a = 0; a < 3; ++a) edges.push_back(config.point(indices[a]) - base);

  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (long long s = 0; s < samples; ++s) {
    // Uniform barycentric sample of the open 3-simplex.
    double u[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
    std::sort(u, u + 3);
    const double w[3] = {u[0], u[1] - u[0], u[2] - u[1]};
    Eigen::VectorXd y = base;
    for (int a = 0; a < 3; ++a) y += w[a] * edges[a];
    const double yy = bilinear_dot(y, y, m);
    const double norm2 = spherical ? yy : -yy;
    if (!(norm2 > 0.0)) throw DegenerateSimplex("projective sample off the surface cone");
    const double norm = std::sqrt(norm2);
    Eigen::MatrixXd partials(3, config.ambient());
    for (int a = 0; a < 3; ++a) {
      const double ds = (spherical ? 1.0 : -1.0) * bilinear_dot(y, edges[a], m) / norm;
      partials.row(a) = (edges[a] / norm - (ds / norm2) * y).transpose();
    }
    const double g = wedge_inner(partials, partials, m);
    const double density = std::sqrt(std::max(0.0, g));
    sum += density;
    sum2 += density * density;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  const double simplex_measure = 1.0 / 6.0;  // volume of the unit 3-simplex

  CurvedSimplexVolume vol;
  vol.k = 3;
  vol.approximate = true;
  vol.value = mean * simplex_measure;
  vol.std_error = std::sqrt(var / samples) * simplex_measure;
  return vol;
}

double bracket(const Eigen::VectorXd& q, int slot,
               const std::vector<Eigen::VectorXd>& simplex, const Metric& m,
               const Tolerances& tol) {
  require_curved(m, "the bracket functional");
  const int kp1 = static_cast<int>(simplex.size());
  if (slot < 0 || slot >= kp1) throw InvalidIndices("bracket slot out of range");
  const Eigen::MatrixXd rows = stack_rows(simplex);
  const double denom = wedge_inner(rows, rows, m);
  const double scale = gram_scale(rows, m);
  if (std::abs(denom) < tol.degeneracy_rel * std::pow(scale, kp1))
    throw DegenerateSimplex("bracket denominator is numerically zero");
  std::vector<Eigen::VectorXd> hatted;
  hatted.push_back(q);
  for (int i = 0; i < kp1; ++i)
    if (i != slot) hatted.push_back(simplex[i]);
  const double numer = wedge_inner(stack_rows(hatted), rows, m);
  const double sign = (slot % 2 == 0) ? 1.0 : -1.0;
  return sign * numer / denom;
}

namespace {

/// Closed two-displacement form of d(P, Q; {B}).
double d_single_closed(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                       const Eigen::VectorXd& b, const Metric& m) {
  const Eigen::VectorXd pq = p - q;
  const double chord_pq = bilinear_dot(pq, pq, m);
  // 1 + cos = 2 - chord/2 (spherical), 1 + cosh = 2 + chord/2 (hyperbolic).
  const double denom =
      m.space == Space::Spherical ? 2.0 - 0.5 * chord_pq : 2.0 + 0.5 * chord_pq;
  if (std::abs(denom) < 1e-12)
    throw DegenerateSimplex("closed form undefined for antipodal arguments");
  return (2.0 / denom) *
         bilinear_dot(b - p, b - q, m);
}

}  // namespace

double d_pair_expansion(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                        const std::vector<Eigen::VectorXd>& b, const Metric& m,
                        const Tolerances& tol) {
  require_curved(m, "the scaled volume derivative");
  const int k = static_cast<int>(b.size());
  if (k < 1 || k > 2)
    throw UnsupportedDimension("the face-sum expansion covers one or two base points");
  // The curvature prefactor is odd in kappa for every k: the face sum has to
  // reproduce the derivative 2(k+1)!|OD| dV_{k+1}/d(chord^2), whose sign is
  // set by the metric alone (checked against finite differences and against
  // the flat limit, where both model spaces must agree).
  const double factor = kappa_power(m, 2 * k - 1) * (k + 1) * factorial(k - 1);

  // Helper evaluating |O F| * V_{k-1}(F) for a face given by raw vectors.
  const auto face_weight = [&](const std::vector<Eigen::VectorXd>& face) {
    const PointConfiguration fc = config_of(face, m);
    const auto ix = iota_indices(static_cast<int>(face.size()));
    const double ow2 = std::abs(wedge_inner(stack_rows(face), stack_rows(face), m));
    const double v = curved_volume(ix, fc).value;
    return std::sqrt(ow2) * v;
  };
  const auto without = [&](int skip) {
    std::vector<Eigen::VectorXd> rest;
    for (int i = 0; i < k; ++i)
      if (i != skip) rest.push_back(b[i]);
    return rest;
  };

  double total = 0.0;

  // Face of the base points only: g = 1.
  total += face_weight(b);

  // Faces containing exactly one of P, Q: the slotted bracket, negated.
  for (int i = 0; i < k; ++i) {
    {
      std::vector<Eigen::VectorXd> simplex = {p, q};
      for (const auto& v : without(i)) simplex.push_back(v);
      const double g = -bracket(b[i], 0, simplex, m, tol);
      std::vector<Eigen::VectorXd> face = {p};
      for (const auto& v : without(i)) face.push_back(v);
      total += g * face_weight(face);
    }
    {
      std::vector<Eigen::VectorXd> simplex = {q, p};
      for (const auto& v : without(i)) simplex.push_back(v);
      const double g = -bracket(b[i], 0, simplex, m, tol);
      std::vector<Eigen::VectorXd> face = {q};
      for (const auto& v : without(i)) face.push_back(v);
      total += g * face_weight(face);
    }
  }

  // Faces containing both P and Q drop two base points (k = 2 only).
  if (k == 2) {
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const auto minus = [&](int a) {
          std::vector<Eigen::VectorXd> simplex = {p, q};
          for (int t = 0; t < k; ++t)
            if (t != a) simplex.push_back(b[t]);
          return simplex;
        };
        // Each base point is expanded over the simplex that omits it (the
        // coefficient of a point over a simplex containing it is trivial).
        const std::vector<Eigen::VectorXd> both = {p, q};
        const double g = bracket(b[i], 0, minus(i), m, tol) *
                             bracket(b[j], 1, both, m, tol) +
                         bracket(b[j], 0, minus(j), m, tol) *
                             bracket(b[i], 1, both, m, tol);
        std::vector<Eigen::VectorXd> face = {p, q};
        for (int t = 0; t < k; ++t)
          if (t != i && t != j) face.push_back(b[t]);
        total += g * face_weight(face);
      }
    }
  }
  return factor * total;
}

double d_pair(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
              const std::vector<Eigen::VectorXd>& b, const Metric& m,
              const Tolerances& tol) {
  require_curved(m, "the scaled volume derivative");
  const int k = static_cast<int>(b.size());
  if (k == 0) return 1.0;
  if (k == 1) return d_single_closed(p, q, b[0], m);
  if (k == 2) return d_pair_expansion(p, q, b, m, tol);
  throw UnsupportedDimension("exact evaluation stops at two base points");
}

double curved_c(int k, const AffineDependence& dep, const PointConfiguration& config,
                const Tolerances& tol) {
  require_curved(config.metric, "the curved invariant coefficient");
  (void)tol;
  const int m = config.count();
  if (dep.count() != m) throw DimensionMismatch("dependence size mismatch");
  if (k < 0 || k > m - 2) throw UnsupportedDimension("invariant order k out of range");
  if (k == 0) return 1.0;
  if (k > 3)
    throw UnsupportedDimension("curved coefficients need V_{k-1}, exact only for k <= 3");

  // Same odd-in-kappa prefactor as the face-sum expansion: for any probe
  // pair, c_k equals the alpha-weighted sum of scaled volume derivatives,
  // so the two prefactors must match.
  const double factor =
      kappa_power(config.metric, 2 * k - 1) * (k + 1) * factorial(k - 1);
  double total = 0.0;
  for_each_subset(m, k, [&](const std::vector<int>& sub) {
    double coeff = 1.0;
    for (int ix : sub) coeff *= dep.alpha[ix];
    total += coeff * o_prefixed_abs(sub, config) * curved_volume(sub, config).value;
  });
  return factor * total;
}

CurvedProfile curved_charpoly(const AffineDependence& dep, const PointConfiguration& config,
                              const Tolerances& tol) {
  require_curved(config.metric, "the curved characteristic polynomial");
  const int m = config.count();
  const int n = m - 2;
  if (n < 1) throw DimensionMismatch("need at least three points");
  if (config.metric.dim != n)
    throw DimensionMismatch("a curved degenerate simplex on n+2 points lives on an n-surface");

  CurvedProfile profile;
  profile.available.assign(n + 1, false);
  const int exact = std::min(n, 3);
  profile.c = Eigen::VectorXd::Zero(exact + 1);
  for (int k = 0; k <= exact; ++k) {
    profile.c[k] = curved_c(k, dep, config, tol);
    profile.available[k] = true;
  }
  profile.complete = (exact == n);
  if (!profile.complete) return profile;

  profile.charpoly.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    profile.charpoly[i] = (i % 2 == 0 ? 1.0 : -1.0) * profile.c[i];
  profile.roots = polynomial_roots(profile.charpoly);

  double max_abs = 1.0, max_im = 0.0;
  for (const auto& z : profile.roots) {
    max_abs = std::max(max_abs, std::abs(z));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  profile.all_real = max_im <= 1e-8 * max_abs;
  if (n == 2) {
    profile.realness_margin = profile.c[1] * profile.c[1] - 4.0 * profile.c[2];
  } else {
    profile.realness_margin = -max_im;
  }
  return profile;
}

KernelMatrix h1_kernel(double base_r, const std::vector<double>& rs) {
  const Metric m = Metric::hyperbolic(1);
  const auto embed = [](double r) {
    Eigen::VectorXd x(2);
    x << std::cosh(r), std::sinh(r);
    return x;
  };
  const Eigen::VectorXd a = embed(base_r);
  const int k = static_cast<int>(rs.size());
  KernelMatrix kernel;
  kernel.base = base_r;
  kernel.r = Eigen::Map<const Eigen::VectorXd>(rs.data(), k);
  kernel.entries.resize(k, k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd pi = embed(rs[i]);
    for (int j = i; j < k; ++j) {
      const Eigen::VectorXd pj = embed(rs[j]);
      kernel.entries(i, j) = kernel.entries(j, i) = d_pair(pi, pj, {a}, m);
    }
  }
  return kernel;
}

Eigen::MatrixXd curved_kernel(const Eigen::VectorXd& base,
                              const std::vector<Eigen::VectorXd>& pts, const Metric& m) {
  require_curved(m, "the pairwise kernel");
  const int k = static_cast<int>(pts.size());
  Eigen::MatrixXd entries(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      entries(i, j) = entries(j, i) = d_pair(pts[i], pts[j], {base}, m);
  return entries;
}

double cauchy_determinant(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("argument lists must match in length");
  const int k = static_cast<int>(x.size());
  double scale = 1.0;
  for (int i = 0; i < k; ++i)
    scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
  double num = 1.0, den = 1.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double s = x[i] + y[j];
      if (std::abs(s) < 1e-14 * scale)
        throw SingularPair("x_i + y_j vanishes; determinant entry is singular");
      den *= s;
      if (j > i) num *= (x[j] - x[i]) * (y[j] - y[i]);
    }
  }
  return num / den;
}

}  // namespace volrig
