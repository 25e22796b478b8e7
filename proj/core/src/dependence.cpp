#include "volrig/dependence.hpp"

#include <algorithm>
#include <cmath>

#include "volrig/combinatorics.hpp"
#include "volrig/errors.hpp"

namespace volrig {

namespace {

/// Columns of the defining linear system, with coordinate rows scaled to
/// O(1): flat space stacks a row of ones over the coordinates, curved
/// space uses the ambient coordinates alone.
Eigen::MatrixXd defining_system(const PointConfiguration& config) {
  const int m = config.count();
  const double scale = std::max(1.0, config.points.cwiseAbs().maxCoeff());
  if (config.metric.curved()) return config.points.transpose() / scale;
  Eigen::MatrixXd sys(config.ambient() + 1, m);
  sys.row(0).setOnes();
  sys.bottomRows(config.ambient()) = config.points.transpose() / scale;
  return sys;
}

/// Partition that tolerates an empty sign class (possible for curved
/// dependences); still rejects numerically-zero coefficients.
RadonPartition partition_any_signs(const Eigen::VectorXd& alpha, const Tolerances& tol) {
  const double scale = alpha.cwiseAbs().maxCoeff();
  RadonPartition part;
  for (int i = 0; i < alpha.size(); ++i) {
    if (std::abs(alpha[i]) <= tol.zero_coefficient * scale)
      throw ZeroCoefficient("dependence coefficient " + std::to_string(i) +
                            " is numerically zero");
    (alpha[i] > 0.0 ? part.positive : part.negative).push_back(i);
  }
  return part;
}

void check_general_position(const Eigen::MatrixXd& sys, double gate) {
  const int m = static_cast<int>(sys.cols());
  const int r = static_cast<int>(sys.rows());  // = n+1
  for_each_subset(m, r, [&](const std::vector<int>& sub) {
    Eigen::MatrixXd block(r, r);
    for (int c = 0; c < r; ++c) block.col(c) = sys.col(sub[c]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv[r - 1] < gate * sv[0])
      throw GeneralPositionViolation("degenerate point subset in configuration", sub);
  });
}

}  // namespace

RadonPartition radon_partition(const Eigen::VectorXd& alpha, const Tolerances& tol) {
  const double scale = alpha.cwiseAbs().maxCoeff();
  RadonPartition part;
  for (int i = 0; i < alpha.size(); ++i) {
    if (std::abs(alpha[i]) <= tol.zero_coefficient * scale)
      throw ZeroCoefficient("dependence coefficient " + std::to_string(i) +
                            " is numerically zero");
    (alpha[i] > 0.0 ? part.positive : part.negative).push_back(i);
  }
  return part;
}

AffineDependence affine_dependence(const PointConfiguration& config, const Tolerances& tol) {
  const int m = config.count();
  const Eigen::MatrixXd sys = defining_system(config);
  const int rank_cap = static_cast<int>(sys.rows());
  if (m < rank_cap + 1)
    throw DimensionMismatch("a degenerate simplex needs at least n+2 points");
  const bool unique = (m == rank_cap + 1);
  if (unique) check_general_position(sys, tol.general_position);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  Eigen::VectorXd alpha = svd.matrixV().col(m - 1);

  const double amax = alpha.cwiseAbs().maxCoeff();
  if (std::abs(alpha[0]) > tol.zero_coefficient * amax) {
    alpha /= alpha[0];
  } else {
    alpha /= amax;
    for (int i = 0; i < m; ++i) {
      if (std::abs(alpha[i]) > tol.zero_coefficient) {
        if (alpha[i] < 0.0) alpha = -alpha;
        break;
      }
    }
  }

  AffineDependence dep;
  dep.alpha = alpha;
  dep.residual = (sys * alpha).cwiseAbs().maxCoeff() / alpha.cwiseAbs().maxCoeff();
  dep.canonical = unique;
  if (dep.residual > tol.dependence_residual)
    throw SolverFailure("dependence residual above gate after solve");
  if (config.metric.curved()) {
    // The origin can lie inside the hull: allow an empty sign class.
    dep.partition = partition_any_signs(alpha, tol);
    dep.all_same_sign = dep.partition.positive.empty() || dep.partition.negative.empty();
  } else {
    dep.partition = radon_partition(alpha, tol);
    dep.all_same_sign = false;
  }
  return dep;
}

AffineDependence dependence_from_alpha(const PointConfiguration& config,
                                       Eigen::VectorXd alpha, const Tolerances& tol,
                                       double residual_gate) {
  if (alpha.size() != config.count())
    throw DimensionMismatch("coefficient count does not match point count");
  const double amax = alpha.cwiseAbs().maxCoeff();
  if (!(amax > 0.0)) throw InvalidDependence("zero coefficient vector");
  const Eigen::MatrixXd sys = defining_system(config);
  const double residual = (sys * alpha).cwiseAbs().maxCoeff() / amax;
  if (residual > residual_gate)
    throw InvalidDependence("supplied coefficients do not annihilate the configuration");

  if (std::abs(alpha[0]) > tol.zero_coefficient * amax) alpha /= alpha[0];

  AffineDependence dep;
  dep.alpha = alpha;
  dep.residual = residual;
  dep.canonical = (config.count() == static_cast<int>(sys.rows()) + 1);
  dep.partition = partition_any_signs(dep.alpha, tol);
  dep.all_same_sign = dep.partition.positive.empty() || dep.partition.negative.empty();
  if (!config.metric.curved() && dep.all_same_sign)
    throw InvalidDependence("flat dependence cannot be one-signed");
  return dep;
}

DependenceScale dependence_scale(const AffineDependence& dep,
                                 const PointConfiguration& config) {
  const int m = config.count();
  if (dep.count() != m) throw DimensionMismatch("dependence size mismatch");
  std::vector<double> ratios(m);
  for (int i = 0; i < m; ++i) {
    std::vector<int> opposite;
    for (int j = 0; j < m; ++j)
      if (j != i) opposite.push_back(j);
    double w2;
    if (config.metric.curved()) {
      w2 = std::abs(o_prefixed_square(opposite, config));
    } else {
      w2 = std::abs(squared_simplex_volume(opposite, config));
    }
    if (!(w2 > 0.0)) throw DegenerateSimplex("zero opposite-face volume");
    ratios[i] = std::abs(dep.alpha[i]) / std::sqrt(w2);
  }
  DependenceScale out;
  out.h = ratios[0];
  for (double r : ratios)
    out.max_deviation = std::max(out.max_deviation, std::abs(r - out.h) / out.h);
  return out;
}

std::string face_label_name(FaceLabel l) {
  switch (l) {
    case FaceLabel::Cable: return "cable";
    case FaceLabel::Strut: return "strut";
    case FaceLabel::Bar: return "bar";
  }
  return "bar";
}

FaceLabel face_label_from_name(const std::string& name) {
  if (name == "cable") return FaceLabel::Cable;
  if (name == "strut") return FaceLabel::Strut;
  if (name == "bar") return FaceLabel::Bar;
  throw ValidationError("unknown face label: " + name);
}

std::string flavor_name(FrameworkFlavor f) {
  switch (f) {
    case FrameworkFlavor::G: return "G";
    case FrameworkFlavor::F: return "F";
    case FrameworkFlavor::AllStrut: return "all-strut";
    case FrameworkFlavor::AllCable: return "all-cable";
    case FrameworkFlavor::Custom: return "custom";
  }
  return "custom";
}

FrameworkFlavor flavor_from_name(const std::string& name) {
  if (name == "G") return FrameworkFlavor::G;
  if (name == "F") return FrameworkFlavor::F;
  if (name == "all-strut") return FrameworkFlavor::AllStrut;
  if (name == "all-cable") return FrameworkFlavor::AllCable;
  if (name == "custom") return FrameworkFlavor::Custom;
  throw ValidationError("unknown framework flavor: " + name);
}

TensegrityFramework build_framework(const AffineDependence& dep, int k,
                                    FrameworkFlavor flavor) {
  const int m = dep.count();
  const int n = m - 2;
  if (k < 1 || k > n)
    throw UnsupportedDimension("face dimension k must satisfy 1 <= k <= n");
  if (flavor == FrameworkFlavor::Custom)
    throw ValidationError("custom frameworks carry explicit labels");
  std::vector<bool> in_x2(m, false);
  for (int i : dep.partition.negative) in_x2[i] = true;

  TensegrityFramework fw;
  fw.k = k;
  fw.flavor = flavor;
  for_each_subset(m, k + 1, [&](const std::vector<int>& face) {
    int negatives = 0;
    for (int v : face) negatives += in_x2[v] ? 1 : 0;
    FaceLabel label;
    switch (flavor) {
      case FrameworkFlavor::G:
        label = (negatives % 2 == 1) ? FaceLabel::Cable : FaceLabel::Strut;
        break;
      case FrameworkFlavor::F:
        label = (negatives % 2 == 1) ? FaceLabel::Strut : FaceLabel::Cable;
        break;
      case FrameworkFlavor::AllStrut: label = FaceLabel::Strut; break;
      default: label = FaceLabel::Cable; break;
    }
    fw.faces.push_back(LabeledFace{face, label});
  });
  return fw;
}

TensegrityFramework custom_framework(int k, int point_count,
                                     std::vector<LabeledFace> faces) {
  if (k < 1 || k > point_count - 1)
    throw UnsupportedDimension("face dimension k out of range for the point set");
  const auto expected = subsets(point_count, k + 1);
  std::vector<LabeledFace> sorted = std::move(faces);
  for (auto& f : sorted) std::sort(f.vertices.begin(), f.vertices.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const LabeledFace& a, const LabeledFace& b) { return a.vertices < b.vertices; });
  if (sorted.size() != expected.size())
    throw ValidationError("custom framework must label every k-face exactly once");
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (sorted[i].vertices != expected[i])
      throw ValidationError("custom framework must label every k-face exactly once");
  TensegrityFramework fw;
  fw.k = k;
  fw.flavor = FrameworkFlavor::Custom;
  fw.faces = std::move(sorted);
  return fw;
}

}  // namespace volrig
