#include "volrig/search.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "volrig/curved.hpp"
#include "volrig/dependence.hpp"
#include "volrig/errors.hpp"

namespace volrig {
namespace {

double default_radius(Space space) {
  // Spherical samples stay well inside a hemisphere; open spaces use a
  // larger neighbourhood.
  return space == Space::Spherical ? 1.2 : 2.0;
}

Eigen::VectorXd pole_point(const Metric& metric) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(metric.ambient());
  if (metric.curved()) p[0] = 1.0;
  return p;
}

}  // namespace

const char* conjecture_kind_name(ConjectureKind kind) {
  switch (kind) {
    case ConjectureKind::RealRoots:
      return "real-roots";
    case ConjectureKind::KernelPsd:
      return "kernel-psd";
  }
  return "unknown";
}

ConjectureKind conjecture_kind_from_name(const std::string& name) {
  if (name == "real-roots") return ConjectureKind::RealRoots;
  if (name == "kernel-psd") return ConjectureKind::KernelPsd;
  throw ValidationError("unknown conjecture kind: " + name);
}

Eigen::VectorXd sample_point_near(const PointConfiguration& anchor, int row,
                                  double radius, Rng& rng, const Tolerances&) {
  if (row < 0 || row >= anchor.count()) throw InvalidIndices("anchor row out of range");
  if (!(radius > 0.0)) throw ValidationError("sampling radius must be positive");
  const Eigen::VectorXd base = anchor.point(row);
  const Metric& metric = anchor.metric;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd dir = rng.gaussian_vector(anchor.ambient());
    if (metric.curved()) dir = tangent_projection(base, dir, metric);
    const double norm2 = metric.curved() ? bilinear_dot(dir, dir, metric) : dir.squaredNorm();
    if (norm2 < 1e-24) continue;
    const double r = radius * rng.uniform_positive();
    const Eigen::VectorXd unit = dir / std::sqrt(norm2);
    if (!metric.curved()) return base + r * unit;
    return exponential_map(base, r * unit, metric);
  }
  throw SolverFailure("could not draw a usable tangent direction");
}

PointConfiguration sample_degenerate_configuration(const Metric& metric, double radius,
                                                   Rng& rng, const Tolerances& tol) {
  if (metric.dim < 1) throw ValidationError("sampling needs dimension at least one");
  const int m = metric.dim + 2;
  const double r = radius > 0.0 ? radius : default_radius(metric.space);
  const PointConfiguration anchor =
      PointConfiguration::make(metric, pole_point(metric).transpose(), tol);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Eigen::MatrixXd pts(m, metric.ambient());
    for (int i = 0; i < m; ++i)
      pts.row(i) = sample_point_near(anchor, 0, r, rng, tol).transpose();
    PointConfiguration cfg = PointConfiguration::make(metric, pts, tol);
    try {
      affine_dependence(cfg, tol);
      return cfg;
    } catch (const GeneralPositionViolation&) {
    } catch (const DegenerateSimplex&) {
    } catch (const SolverFailure&) {
    }
  }
  throw SolverFailure("no general-position degenerate sample found within the attempt cap");
}

TrialResult conjecture_trial(const ConjectureParams& params, std::uint64_t trial_seed,
                             const Tolerances& tol) {
  Rng rng(trial_seed);
  TrialResult result;
  if (params.kind == ConjectureKind::RealRoots) {
    const Metric metric{params.space, params.dim};
    if (!metric.curved())
      throw ValidationError("the real-roots probe targets curved spaces");
    if (params.dim > 3)
      throw UnsupportedDimension("curved characteristic roots are complete for n <= 3");
    const PointConfiguration cfg =
        sample_degenerate_configuration(metric, params.radius, rng, tol);
    const AffineDependence dep = affine_dependence(cfg, tol);
    const CurvedProfile profile = curved_charpoly(dep, cfg, tol);
    result.coordinates = cfg.points;
    result.margin = profile.realness_margin;
    result.violated = !profile.all_real;
    return result;
  }

  // Kernel positive-semidefiniteness probe.
  if (params.space != Space::Hyperbolic)
    throw ValidationError("the kernel probe targets hyperbolic spaces");
  if (params.points < 1) throw ValidationError("kernel probe needs at least one point");
  const Metric metric{params.space, params.dim};
  const double r = params.radius > 0.0 ? params.radius : default_radius(params.space);
  const PointConfiguration anchor =
      PointConfiguration::make(metric, pole_point(metric).transpose(), tol);
  const Eigen::VectorXd base = sample_point_near(anchor, 0, r, rng, tol);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(static_cast<std::size_t>(params.points));
  Eigen::MatrixXd anchor_pts(1, metric.ambient());
  anchor_pts.row(0) = base.transpose();
  const PointConfiguration around =
      PointConfiguration::make(metric, anchor_pts, tol);
  for (int i = 0; i < params.points; ++i)
    pts.push_back(sample_point_near(around, 0, r, rng, tol));

  const Eigen::MatrixXd kernel = curved_kernel(base, pts, metric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(kernel);
  if (eig.info() != Eigen::Success)
    throw SolverFailure("kernel eigenvalue computation failed");
  const double scale = std::max(1.0, kernel.cwiseAbs().maxCoeff());
  result.margin = eig.eigenvalues().minCoeff() / scale;
  result.violated = result.margin < -tol.kernel_psd;
  result.coordinates.resize(params.points + 1, metric.ambient());
  result.coordinates.row(0) = base.transpose();
  for (int i = 0; i < params.points; ++i)
    result.coordinates.row(i + 1) = pts[static_cast<std::size_t>(i)].transpose();
  return result;
}

SearchReport conjecture_search(const ConjectureParams& params, const Tolerances& tol) {
  if (params.trials < 1) throw ValidationError("search needs at least one trial");
  SearchReport report;
  report.kind = conjecture_kind_name(params.kind);
  report.metric = Metric{params.space, params.dim};
  report.trials = params.trials;
  report.seed = params.seed;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (long long trial = 0; trial < params.trials; ++trial) {
    const std::uint64_t trial_seed =
        Rng::derive(params.seed, static_cast<std::uint64_t>(trial));
    TrialResult result;
    try {
      result = conjecture_trial(params, trial_seed, tol);
    } catch (const SolverFailure&) {
      continue;  // unusable draw; skipped deterministically
    }
    ++report.samples_accepted;
    if (result.margin < report.min_margin) {
      report.min_margin = result.margin;
      report.extreme_trial = trial;
      report.extreme_seed = trial_seed;
      report.extreme_coordinates = result.coordinates;
    }
    if (result.violated)
      report.violations.push_back({trial, trial_seed, result.margin, result.coordinates});
  }
  if (report.samples_accepted == 0) report.min_margin = 0.0;
  return report;
}

}  // namespace volrig
