#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volrig/dependence.hpp"
#include "volrig/errors.hpp"
#include "volrig/flex.hpp"
#include "volrig/io.hpp"
#include "volrig/search.hpp"

namespace {

using namespace volrig;

struct CommonOptions {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::string format = "json";
  double tol_scale = 1.0;
  Tolerances tol;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool needs_input) {
  auto* in = cmd->add_option("--input,-i", opts.input, "Input document (JSON)");
  if (needs_input) in->required();
  cmd->add_option("--output,-o", opts.output, "Output path (default: stdout)");
  cmd->add_option("--seed", opts.seed, "Seed for any randomized evaluation");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol", opts.tol_scale,
                  "Scale factor applied to every tolerance gate");
  cmd->add_option("--tol-degeneracy", opts.tol.degeneracy_rel, "Degeneracy gate");
  cmd->add_option("--tol-general-position", opts.tol.general_position,
                  "General-position singular-value gate");
  cmd->add_option("--tol-dependence-residual", opts.tol.dependence_residual,
                  "Dependence residual gate");
  cmd->add_option("--tol-zero-coefficient", opts.tol.zero_coefficient,
                  "Zero-coefficient gate");
  cmd->add_option("--tol-root-zero", opts.tol.root_zero_rel, "Root-near-zero gate");
  cmd->add_option("--tol-repeated-root", opts.tol.repeated_root_rel,
                  "Repeated-root coincidence gate");
  cmd->add_option("--tol-fd-step", opts.tol.fd_step_rel, "Finite-difference step scale");
  cmd->add_option("--tol-lp-gate", opts.tol.lp_gate, "Flex LP optimum gate");
  cmd->add_option("--tol-surface", opts.tol.surface_rel, "On-surface validation gate");
  cmd->add_option("--tol-kernel-psd", opts.tol.kernel_psd, "Kernel eigenvalue gate");
  cmd->add_option("--tol-perpendicularity", opts.tol.perpendicularity,
                  "Perpendicularity cosine gate");
}

Tolerances effective_tolerances(const CommonOptions& opts) {
  Tolerances t = opts.tol;
  const double s = opts.tol_scale;
  if (s != 1.0) {
    t.degeneracy_rel *= s;
    t.general_position *= s;
    t.dependence_residual *= s;
    t.zero_coefficient *= s;
    t.root_zero_rel *= s;
    t.repeated_root_rel *= s;
    t.fd_step_rel *= s;
    t.lp_gate *= s;
    t.surface_rel *= s;
    t.kernel_psd *= s;
    t.perpendicularity *= s;
  }
  return t;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream stream(output, std::ios::binary);
  if (!stream) throw ValidationError("cannot open output file: " + output);
  stream << text;
}

std::string formatted(const std::string& json_text, const std::string& format) {
  return format == "csv" ? report_to_csv(json_text) : json_text;
}

Space parse_space(const std::string& name) {
  if (name == "e") return Space::Euclidean;
  if (name == "s") return Space::Spherical;
  if (name == "h") return Space::Hyperbolic;
  return space_from_name(name);
}

PointConfiguration builtin_quadruple(Space space, const Tolerances& tol) {
  Eigen::MatrixXd pts;
  if (space == Space::Euclidean) {
    pts.resize(4, 2);
    pts << 1, 0, 0, 1, -1, 0, 0, -1;
  } else {
    const double r = 0.8;
    const double radial = space == Space::Spherical ? std::sin(r) : std::sinh(r);
    const double axial = space == Space::Spherical ? std::cos(r) : std::cosh(r);
    pts.resize(4, 3);
    const double angles[4] = {0.0, M_PI_2, M_PI, 3.0 * M_PI_2};
    for (int i = 0; i < 4; ++i) {
      pts(i, 0) = axial;
      pts(i, 1) = radial * std::cos(angles[i]);
      pts(i, 2) = radial * std::sin(angles[i]);
    }
  }
  return PointConfiguration::make(Metric{space, 2}, pts, tol);
}

int run(int argc, char** argv) {
  CLI::App app{"Rigidity analysis of degenerate simplex frameworks"};
  app.require_subcommand(1);

  CommonOptions analyze_opts;
  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a point configuration");
  add_common_flags(analyze, analyze_opts, true);

  CommonOptions flex_opts;
  int flex_k = 0;
  std::string flex_flavor;
  int flex_ambient = -1;
  bool sign_check = false;
  CLI::App* flex = app.add_subcommand("flex", "First-order flex test of a framework");
  add_common_flags(flex, flex_opts, true);
  flex->add_option("--k", flex_k, "Face dimension (overrides the input's framework)");
  flex->add_option("--flavor", flex_flavor,
                   "Framework flavor: G, F, all-strut, all-cable");
  flex->add_option("--ambient", flex_ambient,
                   "Ambient dimension for velocities (n or n+1; default n)");
  flex->add_flag("--sign-check", sign_check,
                 "Probe the out-of-space sign identity along a vertex lift");

  CommonOptions search_opts;
  std::string search_kind;
  std::string search_space;
  int search_dim = 2;
  int search_points = 4;
  long long search_trials = 100;
  double search_radius = 0.0;
  int flip_face = -1;
  CLI::App* search = app.add_subcommand("search", "Randomized counterexample search");
  search->add_option("kind", search_kind, "real-roots | kernel-psd | global-rigidity")
      ->required();
  add_common_flags(search, search_opts, false);
  search->add_option("--space", search_space, "Model space (default depends on kind)");
  search->add_option("--dim", search_dim, "Intrinsic dimension");
  search->add_option("--points", search_points, "Probe points per kernel trial");
  search->add_option("--trials", search_trials, "Number of trials");
  search->add_option("--radius", search_radius, "Sampling radius (0 = space default)");
  search->add_option("--flip", flip_face,
                     "Flip one face label (global-rigidity negative control)");

  CommonOptions figure_opts;
  CLI::App* figure = app.add_subcommand("figure", "Emit figure data (CSV and SVG)");
  add_common_flags(figure, figure_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (analyze->parsed()) {
    const Tolerances tol = effective_tolerances(analyze_opts);
    const ParsedInput input = load_input_file(analyze_opts.input, tol);
    const std::string report = analysis_report(input, analyze_opts.seed, tol);
    emit(formatted(report, analyze_opts.format), analyze_opts.output);
    return 0;
  }

  if (flex->parsed()) {
    const Tolerances tol = effective_tolerances(flex_opts);
    const ParsedInput input = load_input_file(flex_opts.input, tol);
    FrameworkRequest request;
    if (input.framework) request = *input.framework;
    if (flex_k > 0) {
      request.k = flex_k;
      request.labels.clear();
    }
    if (!flex_flavor.empty()) {
      request.flavor = flavor_from_name(flex_flavor);
      request.labels.clear();
    }
    const TensegrityFramework framework = realize_framework(input, request);
    if (sign_check) {
      const MotionPath path = MotionPath::single_vertex_lift(input.config, 0, tol);
      const SignCheckReport report =
          inequality_sign_check(input.dep, input.config, path, framework.k, tol);
      emit(formatted(sign_check_text(input, framework.k, report, tol), flex_opts.format),
           flex_opts.output);
      return 0;
    }
    const int ambient = flex_ambient >= 0 ? flex_ambient : input.config.metric.dim;
    const FlexReport report = first_order_flex(framework, input.config, ambient, tol);
    emit(formatted(flex_report_text(input, framework, report, tol), flex_opts.format),
         flex_opts.output);
    return 0;
  }

  if (search->parsed()) {
    const Tolerances tol = effective_tolerances(search_opts);
    if (search_trials < 1) throw ValidationError("--trials must be at least 1");
    std::string report;
    if (search_kind == "global-rigidity") {
      const Space space =
          search_space.empty() ? Space::Euclidean : parse_space(search_space);
      PointConfiguration config =
          search_opts.input.empty()
              ? builtin_quadruple(space, tol)
              : load_input_file(search_opts.input, tol).config;
      if (search_opts.input.empty() && search_dim != 2)
        throw ValidationError("built-in configurations exist for --dim 2 only");
      const AffineDependence dep = affine_dependence(config, tol);
      TensegrityFramework framework = build_framework(dep, 1, FrameworkFlavor::G);
      if (flip_face >= 0) {
        if (flip_face >= static_cast<int>(framework.faces.size()))
          throw ValidationError("--flip index out of range");
        LabeledFace& face = framework.faces[static_cast<std::size_t>(flip_face)];
        face.label = face.label == FaceLabel::Cable ? FaceLabel::Strut : FaceLabel::Cable;
        framework.flavor = FrameworkFlavor::Custom;
      }
      const SearchReport result =
          global_rigidity_falsifier(framework, config, search_trials, search_opts.seed, tol);
      report = search_report_text(result, tol);
    } else {
      ConjectureParams params;
      params.kind = conjecture_kind_from_name(search_kind);
      params.space = search_space.empty() ? Space::Hyperbolic : parse_space(search_space);
      params.dim = search_dim;
      params.points = search_points;
      params.trials = search_trials;
      params.seed = search_opts.seed;
      params.radius = search_radius;
      const SearchReport result = conjecture_search(params, tol);
      report = search_report_text(result, tol);
    }
    emit(formatted(report, search_opts.format), search_opts.output);
    return 0;
  }

  // figure
  const Tolerances tol = effective_tolerances(figure_opts);
  const ParsedInput input = load_input_file(figure_opts.input, tol);
  const FigureOutput data = figure_output(input, tol);
  if (figure_opts.output.empty()) {
    std::cout << data.csv;
    return 0;
  }
  emit(data.csv, figure_opts.output + ".csv");
  emit(data.svg, figure_opts.output + ".svg");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const GeneralPositionViolation& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateSimplex& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateHyperplane& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const ZeroCoefficient& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const RootNearZero& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const SingularPair& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const SignalTooSmall& e) {
    std::cerr << "degeneracy error: " << e.what() << "\n";
    return 3;
  } catch (const SolverFailure& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
