#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "volrig/geometry.hpp"
#include "volrig/rng.hpp"
#include "volrig/search_report.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

/// Properties that the randomised search can probe.
enum class ConjectureKind {
  RealRoots,   // characteristic roots of a curved degenerate configuration
  KernelPsd,   // positive semidefiniteness of the hyperbolic pair kernel
};

const char* conjecture_kind_name(ConjectureKind kind);
ConjectureKind conjecture_kind_from_name(const std::string& name);

/// Parameters of a conjecture search.
struct ConjectureParams {
  ConjectureKind kind = ConjectureKind::RealRoots;
  Space space = Space::Hyperbolic;
  int dim = 2;           // intrinsic dimension of the sampled space
  int points = 4;        // points per sample (kernel trials: probes + base)
  long long trials = 0;  // must be >= 1
  std::uint64_t seed = 0;
  double radius = 0.0;   // geodesic sampling radius; 0 picks a space default
};

/// Result of a single reproducible trial: the sampled coordinates and the
/// gated margin (negative values violate the conjecture).
struct TrialResult {
  Eigen::MatrixXd coordinates;  // one point per row
  double margin = 0.0;
  bool violated = false;
};

/// Runs one trial of the search with a fully derived seed, so any recorded
/// violation can be replayed and re-verified in isolation.
TrialResult conjecture_trial(const ConjectureParams& params,
                             std::uint64_t trial_seed,
                             const Tolerances& tol = Tolerances{});

/// Randomised search for counterexamples.  Trials use per-index derived
/// seeds, so the report is invariant under re-running and independent of
/// scheduling.  The search records every violating sample; it never claims
/// a proof, only "no counterexample found in N trials".
SearchReport conjecture_search(const ConjectureParams& params,
                               const Tolerances& tol = Tolerances{});

/// Samples one point on the space at a bounded geodesic radius around
/// `base` (Gaussian tangent direction, uniform radius in (0, radius]).
Eigen::VectorXd sample_point_near(const PointConfiguration& anchor, int row,
                                  double radius, Rng& rng,
                                  const Tolerances& tol = Tolerances{});

/// Samples a full degenerate configuration (dim + 2 points) on the space in
/// general position, rejecting degenerate draws.  Throws SolverFailure when
/// no sample passes the general-position gate within the attempt cap.
PointConfiguration sample_degenerate_configuration(const Metric& metric,
                                                   double radius, Rng& rng,
                                                   const Tolerances& tol = Tolerances{});

}  // namespace volrig
