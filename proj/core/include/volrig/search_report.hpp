#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "volrig/geometry.hpp"

namespace volrig {

/// A sample that crossed its acceptance gate during a randomised search.
struct TrialViolation {
  long long trial = 0;            // trial index within the search
  std::uint64_t trial_seed = 0;   // derived seed that reproduces the sample
  double margin = 0.0;            // gated quantity (negative = violated)
  Eigen::MatrixXd coordinates;    // offending sample, one point per row
};

/// Deterministic summary of a randomised search.  Reports never contain
/// wall-clock data, so identical inputs produce byte-identical summaries.
struct SearchReport {
  std::string kind;               // which property was probed
  Metric metric{};                // space the samples live in
  long long trials = 0;           // trials requested
  std::uint64_t seed = 0;         // master seed
  long long samples_accepted = 0; // trials that yielded a usable sample
  double min_margin = 0.0;        // most adversarial margin observed
  long long extreme_trial = -1;   // trial attaining min_margin (-1 if none)
  std::uint64_t extreme_seed = 0; // derived seed of that trial
  Eigen::MatrixXd extreme_coordinates;  // sample attaining min_margin
  std::vector<TrialViolation> violations;

  bool refuted() const { return !violations.empty(); }
};

}  // namespace volrig
