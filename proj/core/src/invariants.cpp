#include "volrig/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "volrig/combinatorics.hpp"
#include "volrig/errors.hpp"

namespace volrig {

namespace {

void require_flat(const PointConfiguration& config, const char* what) {
  if (config.metric.curved())
    throw UnsupportedMetric(std::string(what) + " is defined for the flat metric only");
}

Eigen::VectorXd pad_to(const Eigen::VectorXd& v, int d) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  out.head(v.size()) = v;
  return out;
}

/// Sum of principal k-minors of a square matrix, for k = 0..kmax.
Eigen::VectorXd principal_minor_sums(const Eigen::MatrixXd& m, int kmax) {
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(kmax + 1);
  sums[0] = 1.0;
  const int size = static_cast<int>(m.rows());
  for (int k = 1; k <= kmax; ++k) {
    double total = 0.0;
    for_each_subset(size, k, [&](const std::vector<int>& sub) {
      Eigen::MatrixXd block(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) block(r, c) = m(sub[r], sub[c]);
      total += block.determinant();
    });
    sums[k] = total;
  }
  return sums;
}

Eigen::VectorXd monic_charpoly(const Eigen::VectorXd& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::VectorXd coeffs(n + 1);
  for (int i = 0; i <= n; ++i) coeffs[i] = (i % 2 == 0 ? 1.0 : -1.0) * c[i];
  return coeffs;
}

Eigen::VectorXd symmetric_roots(const Eigen::MatrixXd& s) {
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw SolverFailure("eigenvalue decomposition failed");
  return eig.eigenvalues();
}

/// Fills the verdict fields of a profile whose c, charpoly and roots are
/// already set.
void finish_profile(InvariantProfile& profile, const AffineDependence& dep,
                    const Tolerances& tol) {
  const int n = static_cast<int>(profile.roots.size());
  const double scale = std::max(1.0, profile.roots.cwiseAbs().maxCoeff());
  const double zero_gate = tol.root_zero_rel * scale;
  profile.positive_roots = profile.negative_roots = 0;
  for (int i = 0; i < n; ++i) {
    if (profile.roots[i] > zero_gate) ++profile.positive_roots;
    else if (profile.roots[i] < -zero_gate) ++profile.negative_roots;
  }
  const int s = dep.s();
  const int m = dep.count();
  profile.sign_counts_match = (profile.positive_roots == s - 1) &&
                              (profile.negative_roots == m - 1 - s);
  profile.repeated_root =
      (profile.roots[n - 1] - profile.roots[0]) <= tol.repeated_root_rel * scale;
  profile.cosphericity = cosphericity_class(profile, tol);

  const auto croots = polynomial_roots(profile.charpoly);
  double max_im = 0.0;
  std::vector<double> re;
  for (const auto& z : croots) {
    max_im = std::max(max_im, std::abs(z.imag()));
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  double max_dev = 0.0;
  for (int i = 0; i < n; ++i) max_dev = std::max(max_dev, std::abs(re[i] - profile.roots[i]));
  profile.polynomial_roots_real = max_im <= 1e-6 * scale && max_dev <= 1e-6 * scale;
}

}  // namespace

std::string sphere_side_name(SphereSide s) {
  switch (s) {
    case SphereSide::Inside: return "inside";
    case SphereSide::On: return "on";
    case SphereSide::Outside: return "outside";
  }
  return "on";
}

double c_direct(int k, const AffineDependence& dep, const PointConfiguration& config,
                const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  require_flat(config, "the direct invariant sum");
  const int m = config.count();
  if (dep.count() != m) throw DimensionMismatch("dependence size mismatch");
  if (k < 0 || k > m - 2) throw UnsupportedDimension("invariant order k out of range");
  if (p.size() != q.size()) throw DimensionMismatch("probe points must share a dimension");
  const int d = static_cast<int>(p.size());
  if (d < config.ambient())
    throw DimensionMismatch("probe points narrower than the configuration");

  double total = 0.0;
  for_each_subset(m, k, [&](const std::vector<int>& sub) {
    double coeff = 1.0;
    for (int ix : sub) coeff *= dep.alpha[ix];
    Eigen::MatrixXd from_p(k, d), from_q(k, d);
    for (int r = 0; r < k; ++r) {
      const Eigen::VectorXd a = pad_to(config.point(sub[r]), d);
      from_p.row(r) = (a - p).transpose();
      from_q.row(r) = (a - q).transpose();
    }
    total += coeff * wedge_inner(from_p, from_q, config.metric);
  });
  return total;
}

MatrixRealization matrix_realization(const AffineDependence& dep,
                                     const PointConfiguration& config, int pivot) {
  require_flat(config, "the matrix realization");
  const int m = config.count();
  if (dep.count() != m) throw DimensionMismatch("dependence size mismatch");
  if (pivot < 0) pivot = m - 1;
  if (pivot >= m) throw InvalidIndices("pivot out of range");

  MatrixRealization real;
  real.pivot = pivot;
  real.b.resize(m - 1, config.ambient());
  real.alpha.resize(m - 1);
  int r = 0;
  for (int i = 0; i < m; ++i) {
    if (i == pivot) continue;
    real.b.row(r) = config.points.row(i) - config.points.row(pivot);
    real.alpha[r] = dep.alpha[i];
    ++r;
  }
  real.product = real.b * real.b.transpose() * real.alpha.asDiagonal();
  real.symmetric = real.b.transpose() * real.alpha.asDiagonal() * real.b;
  return real;
}

Eigen::VectorXd c_from_matrix(const MatrixRealization& realization) {
  const int n = static_cast<int>(realization.symmetric.rows());
  return principal_minor_sums(realization.product, n);
}

InvariantProfile invariant_profile(const AffineDependence& dep,
                                   const PointConfiguration& config,
                                   const Tolerances& tol) {
  const int m = config.count();
  const int n = m - 2;
  if (n < 1) throw DimensionMismatch("need at least three points");
  if (config.ambient() != n)
    throw DimensionMismatch("a degenerate simplex on n+2 points must live in R^n");
  const MatrixRealization real = matrix_realization(dep, config);
  InvariantProfile profile;
  profile.c = c_from_matrix(real);
  profile.charpoly = monic_charpoly(profile.c);
  profile.roots = symmetric_roots(real.symmetric);
  finish_profile(profile, dep, tol);
  return profile;
}

InvariantProfile generalized_profile(const AffineDependence& dep,
                                     const PointConfiguration& config,
                                     const Tolerances& tol) {
  require_flat(config, "the generalized realization");
  const int m = config.count();
  const int n = config.ambient();
  if (m < n + 2) throw DimensionMismatch("need at least n+2 points");
  if (dep.count() != m) throw DimensionMismatch("dependence size mismatch");

  const Eigen::MatrixXd& b = config.points;  // raw coordinates as rows
  const Eigen::MatrixXd product = b * b.transpose() * dep.alpha.asDiagonal();
  InvariantProfile profile;
  profile.c = principal_minor_sums(product, n);
  profile.charpoly = monic_charpoly(profile.c);
  profile.roots = symmetric_roots(b.transpose() * dep.alpha.asDiagonal() * b);
  finish_profile(profile, dep, tol);
  return profile;
}

RootSignCount roots_and_signs(const InvariantProfile& profile, const AffineDependence& dep,
                              const Tolerances& tol) {
  const double scale = std::max(1.0, profile.roots.cwiseAbs().maxCoeff());
  const double gate = tol.root_zero_rel * scale;
  RootSignCount out;
  out.roots = profile.roots;
  for (int i = 0; i < profile.roots.size(); ++i) {
    if (std::abs(profile.roots[i]) <= gate)
      throw RootNearZero("root within the zero gate; sign counts unstable");
    (profile.roots[i] > 0.0 ? out.positive : out.negative) += 1;
  }
  out.s = dep.s();
  out.matches_prediction = (out.positive == out.s - 1) &&
                           (out.negative == dep.count() - 1 - out.s);
  return out;
}

SphereSide cosphericity_class(const InvariantProfile& profile, const Tolerances& tol) {
  const double scale = std::max(1.0, profile.roots.cwiseAbs().maxCoeff());
  const double gate = tol.degeneracy_rel * scale * profile.roots.size();
  const double c1 = profile.c[1];
  if (std::abs(c1) <= gate) return SphereSide::On;
  return c1 < 0.0 ? SphereSide::Inside : SphereSide::Outside;
}

Circumsphere circumsphere(const PointConfiguration& config, const std::vector<int>& indices) {
  require_flat(config, "the circumsphere");
  const int n = config.ambient();
  if (static_cast<int>(indices.size()) != n + 1)
    throw DimensionMismatch("a circumsphere in R^n needs exactly n+1 points");
  Eigen::MatrixXd lhs(n, n);
  Eigen::VectorXd rhs(n);
  const Eigen::VectorXd b0 = config.point(indices[0]);
  for (int i = 1; i <= n; ++i) {
    const Eigen::VectorXd bi = config.point(indices[i]);
    lhs.row(i - 1) = 2.0 * (bi - b0).transpose();
    rhs[i - 1] = bi.squaredNorm() - b0.squaredNorm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lhs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv[n - 1] < 1e-12 * sv[0])
    throw DegenerateSimplex("circumsphere points span no full-dimensional simplex");
  Circumsphere sphere;
  sphere.center = svd.solve(rhs);
  sphere.radius = (b0 - sphere.center).norm();
  return sphere;
}

PerpendicularityReport perpendicular_pairs(const PointConfiguration& config,
                                           const Tolerances& tol) {
  require_flat(config, "the perpendicularity test");
  const int m = config.count();
  PerpendicularityReport report;
  report.orthocentric = true;
  for_each_subset(m, 4, [&](const std::vector<int>& q) {
    const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& p : pairings) {
      const Eigen::VectorXd u = config.point(q[p[1]]) - config.point(q[p[0]]);
      const Eigen::VectorXd v = config.point(q[p[3]]) - config.point(q[p[2]]);
      const double denom = u.norm() * v.norm();
      if (!(denom > 0.0)) throw DegenerateSimplex("coincident points in perpendicularity test");
      const double cosine = std::abs(u.dot(v)) / denom;
      report.max_abs_cosine = std::max(report.max_abs_cosine, cosine);
      if (cosine > tol.perpendicularity) report.orthocentric = false;
    }
  });
  return report;
}

std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXd& coeffs) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  if (degree < 1) return {};
  if (coeffs[0] == 0.0) throw ValidationError("leading polynomial coefficient is zero");
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[degree - i] / coeffs[0];
  companion.block(1, 0, degree - 1, degree - 1).setIdentity();
  Eigen::EigenSolver<Eigen::MatrixXd> eig(companion);
  if (eig.info() != Eigen::Success) throw SolverFailure("companion eigenvalue solve failed");
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < degree; ++i) roots.push_back(eig.eigenvalues()[i]);
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace volrig
