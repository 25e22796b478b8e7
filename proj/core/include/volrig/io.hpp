#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volrig/dependence.hpp"
#include "volrig/flex.hpp"
#include "volrig/geometry.hpp"
#include "volrig/search_report.hpp"
#include "volrig/tolerances.hpp"

namespace volrig {

/// Framework request carried by an input document: either a parity flavor
/// or an explicit label list (labels non-empty means custom).
struct FrameworkRequest {
  int k = 1;
  FrameworkFlavor flavor = FrameworkFlavor::G;
  std::vector<LabeledFace> labels;
};

/// A validated input document.  `echo` is the canonical JSON text of the
/// configuration block, re-embedded in every report so that reports can be
/// fed back as inputs (re-analysis reads the embedded block).
struct ParsedInput {
  PointConfiguration config;
  AffineDependence dep;
  std::optional<FrameworkRequest> framework;
  bool alpha_overridden = false;
  std::string echo;
};

/// Parses a JSON input document: space / dimension / point rows (curved
/// points may instead be given as a base point plus tangent vectors, which
/// are exponentiated), optional alpha override, optional framework spec.
/// A document containing an "input" object is treated as a report and its
/// embedded input is parsed instead.
ParsedInput parse_input_text(const std::string& text, const Tolerances& tol = {});
ParsedInput load_input_file(const std::string& path, const Tolerances& tol = {});

/// Materializes the framework requested by the input (parity flavors need
/// the dependence; explicit labels are validated for completeness).
TensegrityFramework realize_framework(const ParsedInput& input,
                                      const FrameworkRequest& request);

/// Full analysis report as JSON text: configuration echo, dependence and
/// partition, framework labels, invariant coefficients via both routes,
/// characteristic polynomial, roots and sign counts, classification
/// verdicts, warnings, and the effective tolerances.  Deterministic for a
/// fixed (input, seed); contains no timing data.
std::string analysis_report(const ParsedInput& input, std::uint64_t seed,
                            const Tolerances& tol = {});

/// First-order flex report as JSON text.
std::string flex_report_text(const ParsedInput& input, const TensegrityFramework& framework,
                             const FlexReport& report, const Tolerances& tol = {});

/// Sign-check probe table as JSON text.
std::string sign_check_text(const ParsedInput& input, int k, const SignCheckReport& report,
                            const Tolerances& tol = {});

/// Search report as JSON text.
std::string search_report_text(const SearchReport& report, const Tolerances& tol = {});

/// Flattens a JSON report into two-column CSV (field path, value) with
/// floats printed to 17 significant digits.
std::string report_to_csv(const std::string& report_json);

/// Figure data for flat two-dimensional configurations: point coordinates,
/// the circle through points 1..3, and per-edge styling.
struct FigureOutput {
  std::string csv;
  std::string svg;
};
FigureOutput figure_output(const ParsedInput& input, const Tolerances& tol = {});

}  // namespace volrig
