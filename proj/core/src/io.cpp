#include "volrig/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "volrig/curved.hpp"
#include "volrig/errors.hpp"
#include "volrig/invariants.hpp"
#include "volrig/rng.hpp"

namespace volrig {
namespace {

using Json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json indices_json(const std::vector<int>& v) {
  Json arr = Json::array();
  for (int i : v) arr.push_back(i);
  return arr;
}

Eigen::VectorXd parse_vector(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError("field '" + field + "' must be an array");
  Eigen::VectorXd v(static_cast<int>(j.size()));
  int i = 0;
  for (const Json& entry : j) {
    if (!entry.is_number())
      throw ValidationError("field '" + field + "' must contain numbers");
    v[i++] = entry.get<double>();
  }
  return v;
}

Eigen::MatrixXd parse_matrix(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw ValidationError("field '" + field + "' must be a non-empty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0)
    throw ValidationError("field '" + field + "' must contain coordinate rows");
  Eigen::MatrixXd m(static_cast<int>(j.size()), static_cast<int>(cols));
  int r = 0;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw ValidationError("field '" + field + "' rows must have equal length");
    int c = 0;
    for (const Json& entry : row) {
      if (!entry.is_number())
        throw ValidationError("field '" + field + "' must contain numbers");
      m(r, c++) = entry.get<double>();
    }
    ++r;
  }
  return m;
}

Json tolerances_json(const Tolerances& tol) {
  Json t;
  t["degeneracy_rel"] = tol.degeneracy_rel;
  t["general_position"] = tol.general_position;
  t["dependence_residual"] = tol.dependence_residual;
  t["zero_coefficient"] = tol.zero_coefficient;
  t["root_zero_rel"] = tol.root_zero_rel;
  t["repeated_root_rel"] = tol.repeated_root_rel;
  t["fd_step_rel"] = tol.fd_step_rel;
  t["lp_gate"] = tol.lp_gate;
  t["surface_rel"] = tol.surface_rel;
  t["kernel_psd"] = tol.kernel_psd;
  t["perpendicularity"] = tol.perpendicularity;
  return t;
}

Json framework_json(const TensegrityFramework& fw) {
  Json out;
  out["k"] = fw.k;
  out["flavor"] = flavor_name(fw.flavor);
  Json faces = Json::array();
  for (const LabeledFace& face : fw.faces) {
    Json f;
    f["vertices"] = indices_json(face.vertices);
    f["label"] = face_label_name(face.label);
    faces.push_back(std::move(f));
  }
  out["faces"] = std::move(faces);
  return out;
}

Json metric_json(const Metric& metric) {
  Json out;
  out["space"] = space_name(metric.space);
  out["dimension"] = metric.dim;
  return out;
}

Json complex_roots_json(const std::vector<std::complex<double>>& roots) {
  Json arr = Json::array();
  for (const auto& root : roots) {
    Json pair = Json::array();
    pair.push_back(root.real());
    pair.push_back(root.imag());
    arr.push_back(std::move(pair));
  }
  return arr;
}

void flatten_json(const Json& node, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& rows) {
  auto join = [&](const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
  };
  if (node.is_object()) {
    for (const auto& item : node.items()) flatten_json(item.value(), join(item.key()), rows);
    return;
  }
  if (node.is_array()) {
    int i = 0;
    for (const Json& entry : node) flatten_json(entry, join(std::to_string(i++)), rows);
    return;
  }
  std::string value;
  if (node.is_number_float()) {
    value = format_double(node.get<double>());
  } else if (node.is_boolean()) {
    value = node.get<bool>() ? "true" : "false";
  } else if (node.is_null()) {
    value = "";
  } else if (node.is_string()) {
    std::string raw = node.get<std::string>();
    bool quote = raw.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
      std::string escaped = "\"";
      for (char ch : raw) {
        if (ch == '"') escaped += "\"\"";
        else escaped += ch;
      }
      escaped += "\"";
      value = escaped;
    } else {
      value = raw;
    }
  } else {
    value = node.dump();
  }
  rows.emplace_back(prefix, value);
}

}  // namespace

ParsedInput parse_input_text(const std::string& text, const Tolerances& tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw ValidationError(std::string("input is not valid JSON: ") + err.what());
  }
  // Reports embed their input; re-analysis reads the embedded block.
  int depth = 0;
  while (doc.is_object() && doc.contains("input") && doc["input"].is_object()) {
    doc = doc["input"];
    if (++depth > 8) throw ValidationError("input nesting too deep");
  }
  if (!doc.is_object()) throw ValidationError("input document must be a JSON object");
  if (!doc.contains("space") || !doc["space"].is_string())
    throw ValidationError("field 'space' (string) is required");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
    throw ValidationError("field 'dimension' (integer) is required");
  const Space space = space_from_name(doc["space"].get<std::string>());
  const int dim = doc["dimension"].get<int>();
  if (dim < 1) throw ValidationError("dimension must be at least 1");
  const Metric metric{space, dim};

  Eigen::MatrixXd pts;
  if (doc.contains("points")) {
    pts = parse_matrix(doc["points"], "points");
  } else if (doc.contains("polar")) {
    if (!metric.curved())
      throw ValidationError("polar input applies to curved spaces only");
    const Json& polar = doc["polar"];
    if (!polar.is_object() || !polar.contains("base") || !polar.contains("tangents"))
      throw ValidationError("polar input needs 'base' and 'tangents'");
    const Eigen::VectorXd base = parse_vector(polar["base"], "polar.base");
    if (base.size() != metric.ambient())
      throw DimensionMismatch("polar base must have the ambient width");
    Eigen::MatrixXd base_row(1, metric.ambient());
    base_row.row(0) = base.transpose();
    const PointConfiguration checked = PointConfiguration::make(metric, base_row, tol);
    const Eigen::MatrixXd tangents = parse_matrix(polar["tangents"], "polar.tangents");
    if (tangents.cols() != metric.ambient())
      throw DimensionMismatch("polar tangents must have the ambient width");
    pts.resize(tangents.rows(), metric.ambient());
    for (int i = 0; i < tangents.rows(); ++i)
      pts.row(i) = exponential_map(checked.point(0), tangents.row(i).transpose(), metric)
                       .transpose();
  } else {
    throw ValidationError("input needs 'points' or curved 'polar' data");
  }

  ParsedInput out{PointConfiguration::make(metric, pts, tol), AffineDependence{}, {}, false, ""};

  if (doc.contains("alpha")) {
    const Eigen::VectorXd alpha = parse_vector(doc["alpha"], "alpha");
    out.dep = dependence_from_alpha(out.config, alpha, tol);
    out.alpha_overridden = true;
  } else {
    out.dep = affine_dependence(out.config, tol);
  }

  if (doc.contains("framework")) {
    const Json& fw = doc["framework"];
    if (!fw.is_object() || !fw.contains("k") || !fw["k"].is_number_integer())
      throw ValidationError("framework spec needs an integer 'k'");
    FrameworkRequest request;
    request.k = fw["k"].get<int>();
    if (fw.contains("labels")) {
      if (!fw["labels"].is_array() || fw["labels"].empty())
        throw ValidationError("framework labels must be a non-empty array");
      for (const Json& entry : fw["labels"]) {
        if (!entry.is_object() || !entry.contains("vertices") || !entry.contains("label"))
          throw ValidationError("each label needs 'vertices' and 'label'");
        LabeledFace face;
        for (const Json& v : entry["vertices"]) {
          if (!v.is_number_integer())
            throw ValidationError("face vertices must be integers");
          face.vertices.push_back(v.get<int>());
        }
        face.label = face_label_from_name(entry["label"].get<std::string>());
        request.labels.push_back(std::move(face));
      }
      request.flavor = FrameworkFlavor::Custom;
    } else if (fw.contains("flavor") && fw["flavor"].is_string()) {
      request.flavor = flavor_from_name(fw["flavor"].get<std::string>());
      if (request.flavor == FrameworkFlavor::Custom)
        throw ValidationError("custom frameworks need explicit labels");
    } else {
      throw ValidationError("framework spec needs 'flavor' or 'labels'");
    }
    out.framework = std::move(request);
  }

  // Canonical echo: final on-surface coordinates, so reports are
  // self-contained and re-analysis sees identical numerics.
  Json echo;
  echo["space"] = space_name(space);
  echo["dimension"] = dim;
  echo["points"] = matrix_json(out.config.points);
  if (out.alpha_overridden) echo["alpha"] = vector_json(out.dep.alpha);
  if (out.framework) {
    Json fw;
    fw["k"] = out.framework->k;
    if (out.framework->labels.empty()) {
      fw["flavor"] = flavor_name(out.framework->flavor);
    } else {
      Json labels = Json::array();
      for (const LabeledFace& face : out.framework->labels) {
        Json f;
        f["vertices"] = indices_json(face.vertices);
        f["label"] = face_label_name(face.label);
        labels.push_back(std::move(f));
      }
      fw["labels"] = std::move(labels);
    }
    echo["framework"] = std::move(fw);
  }
  out.echo = echo.dump();
  return out;
}

ParsedInput load_input_file(const std::string& path, const Tolerances& tol) {
  std::ifstream stream(path);
  if (!stream) throw ValidationError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_input_text(buffer.str(), tol);
}

TensegrityFramework realize_framework(const ParsedInput& input,
                                      const FrameworkRequest& request) {
  if (!request.labels.empty())
    return custom_framework(request.k, input.config.count(), request.labels);
  return build_framework(input.dep, request.k, request.flavor);
}

std::string analysis_report(const ParsedInput& input, std::uint64_t seed,
                            const Tolerances& tol) {
  const PointConfiguration& config = input.config;
  const AffineDependence& dep = input.dep;
  const int m = config.count();
  const int n = config.metric.dim;
  std::vector<std::string> warnings;

  Json out;
  out["input"] = Json::parse(input.echo);
  out["seed"] = seed;
  out["space"] = space_name(config.metric.space);
  out["dimension"] = n;
  out["point_count"] = m;

  Json dep_json;
  dep_json["alpha"] = vector_json(dep.alpha);
  dep_json["residual"] = dep.residual;
  dep_json["canonical"] = dep.canonical;
  dep_json["alpha_overridden"] = input.alpha_overridden;
  Json partition;
  partition["positive"] = indices_json(dep.partition.positive);
  partition["negative"] = indices_json(dep.partition.negative);
  partition["all_same_sign"] = dep.all_same_sign;
  partition["s"] = dep.s();
  dep_json["partition"] = std::move(partition);
  const DependenceScale scale = dependence_scale(dep, config);
  Json scale_json;
  scale_json["h"] = scale.h;
  scale_json["max_deviation"] = scale.max_deviation;
  dep_json["volume_scale"] = std::move(scale_json);
  out["dependence"] = std::move(dep_json);

  TensegrityFramework framework;
  if (input.framework) {
    framework = realize_framework(input, *input.framework);
    out["framework"] = framework_json(framework);
  }

  const bool canonical_flat = !config.metric.curved() && m == n + 2 && dep.canonical;
  if (canonical_flat) {
    const InvariantProfile profile = invariant_profile(dep, config, tol);
    Rng rng(seed);
    const Eigen::VectorXd probe_p = rng.gaussian_vector(config.ambient());
    const Eigen::VectorXd probe_q = rng.gaussian_vector(config.ambient());
    Eigen::VectorXd direct(n + 1);
    double route_dev = 0.0;
    for (int k = 0; k <= n; ++k) {
      direct[k] = c_direct(k, dep, config, probe_p, probe_q);
      const double denom = std::max({1.0, std::abs(profile.c[k]), std::abs(direct[k])});
      route_dev = std::max(route_dev, std::abs(direct[k] - profile.c[k]) / denom);
    }
    Json inv;
    inv["c"] = vector_json(profile.c);
    inv["c_direct"] = vector_json(direct);
    inv["route_deviation"] = route_dev;
    inv["charpoly"] = vector_json(profile.charpoly);
    inv["roots"] = vector_json(profile.roots);
    inv["positive_roots"] = profile.positive_roots;
    inv["negative_roots"] = profile.negative_roots;
    inv["sign_counts_match"] = profile.sign_counts_match;
    inv["repeated_root"] = profile.repeated_root;
    inv["polynomial_roots_real"] = profile.polynomial_roots_real;
    inv["cosphericity"] = sphere_side_name(profile.cosphericity);
    out["invariants"] = std::move(inv);

    const PerpendicularityReport perp = perpendicular_pairs(config, tol);
    Json perp_json;
    perp_json["orthocentric"] = perp.orthocentric;
    perp_json["max_abs_cosine"] = perp.max_abs_cosine;
    out["perpendicularity"] = std::move(perp_json);
  } else if (!config.metric.curved()) {
    const InvariantProfile profile = generalized_profile(dep, config, tol);
    Json inv;
    inv["c"] = vector_json(profile.c);
    inv["charpoly"] = vector_json(profile.charpoly);
    inv["roots"] = vector_json(profile.roots);
    inv["positive_roots"] = profile.positive_roots;
    inv["negative_roots"] = profile.negative_roots;
    inv["sign_counts_match"] = profile.sign_counts_match;
    out["generalized_invariants"] = std::move(inv);
    warnings.push_back(
        "configuration has more than the minimal point count; coefficients use the "
        "raw-coordinate realization and the dependence is not canonical");
  }

  if (config.metric.curved() && m == n + 2) {
    const CurvedProfile profile = curved_charpoly(dep, config, tol);
    Json curved;
    curved["c"] = vector_json(profile.c);
    Json avail = Json::array();
    for (bool a : profile.available) avail.push_back(a);
    curved["available"] = std::move(avail);
    curved["complete"] = profile.complete;
    if (profile.complete) {
      curved["charpoly"] = vector_json(profile.charpoly);
      curved["roots"] = complex_roots_json(profile.roots);
      curved["all_real"] = profile.all_real;
      curved["realness_margin"] = profile.realness_margin;
    }
    const double alpha_scale = dep.alpha.cwiseAbs().sum();
    curved["concircular"] =
        std::abs(profile.c[1]) <= tol.zero_coefficient * std::max(1.0, 2.0 * alpha_scale);
    out["curved_invariants"] = std::move(curved);
    if (!profile.complete)
      warnings.push_back(
          "curved coefficients beyond the third are not exactly computable; "
          "characteristic roots are unavailable in this dimension");
  } else if (config.metric.curved()) {
    warnings.push_back(
        "curved invariants need the minimal point count; none were computed");
  }

  if (input.framework) {
    Json flex;
    for (int ambient : {n, n + 1}) {
      Json entry;
      try {
        const FlexReport report = first_order_flex(framework, config, ambient, tol);
        entry["verdict"] = flex_verdict_name(report.verdict);
        entry["lp_optimum"] = report.lp_optimum;
      } catch (const UnsupportedDimension& err) {
        entry["verdict"] = "unavailable";
        warnings.push_back(std::string("flex test skipped: ") + err.what());
      }
      flex[ambient == n ? "ambient_n" : "ambient_n_plus_1"] = std::move(entry);
    }
    out["flex"] = std::move(flex);
  }

  Json warn = Json::array();
  for (const std::string& w : warnings) warn.push_back(w);
  out["warnings"] = std::move(warn);
  out["tolerances"] = tolerances_json(tol);
  return out.dump(2) + "\n";
}

std::string flex_report_text(const ParsedInput& input, const TensegrityFramework& framework,
                             const FlexReport& report, const Tolerances& tol) {
  Json out;
  out["input"] = Json::parse(input.echo);
  out["framework"] = framework_json(framework);
  out["ambient_dim"] = report.ambient_dim;
  out["verdict"] = flex_verdict_name(report.verdict);
  out["lp_optimum"] = report.lp_optimum;
  if (report.verdict == FlexVerdict::FlexFound) {
    out["witness"] = matrix_json(report.witness);
    out["face_derivatives"] = vector_json(report.face_derivatives);
    out["max_violation"] = report.max_violation;
  }
  out["tolerances"] = tolerances_json(tol);
  return out.dump(2) + "\n";
}

std::string sign_check_text(const ParsedInput& input, int k, const SignCheckReport& report,
                            const Tolerances& tol) {
  Json out;
  out["input"] = Json::parse(input.echo);
  out["k"] = k;
  out["reference_coefficient"] = report.reference_coefficient;
  out["equality_regime"] = report.equality_regime;
  out["sign_consistent"] = report.sign_consistent;
  out["ratio_at_smallest"] = report.ratio_at_smallest;
  Json probes = Json::array();
  for (const SignProbe& probe : report.probes) {
    Json p;
    p["t"] = probe.t;
    p["weighted_sum"] = probe.weighted_sum;
    p["prediction"] = probe.prediction;
    p["ratio"] = probe.ratio;
    p["above_noise"] = probe.above_noise;
    probes.push_back(std::move(p));
  }
  out["probes"] = std::move(probes);
  out["tolerances"] = tolerances_json(tol);
  return out.dump(2) + "\n";
}

std::string search_report_text(const SearchReport& report, const Tolerances& tol) {
  Json out;
  out["kind"] = report.kind;
  out["metric"] = metric_json(report.metric);
  out["trials"] = report.trials;
  out["seed"] = report.seed;
  out["samples_accepted"] = report.samples_accepted;
  out["min_margin"] = report.min_margin;
  if (report.extreme_trial >= 0) {
    out["extreme_trial"] = report.extreme_trial;
    out["extreme_seed"] = report.extreme_seed;
    out["extreme_coordinates"] = matrix_json(report.extreme_coordinates);
  }
  Json violations = Json::array();
  for (const TrialViolation& v : report.violations) {
    Json entry;
    entry["trial"] = v.trial;
    entry["seed"] = v.trial_seed;
    entry["margin"] = v.margin;
    entry["coordinates"] = matrix_json(v.coordinates);
    violations.push_back(std::move(entry));
  }
  out["violations"] = std::move(violations);
  out["refuted"] = report.refuted();
  out["tolerances"] = tolerances_json(tol);
  return out.dump(2) + "\n";
}

std::string report_to_csv(const std::string& report_json) {
  Json doc;
  try {
    doc = Json::parse(report_json);
  } catch (const Json::parse_error& err) {
    throw ValidationError(std::string("report is not valid JSON: ") + err.what());
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_json(doc, "", rows);
  std::string csv = "field,value\n";
  for (const auto& [key, value] : rows) csv += key + "," + value + "\n";
  return csv;
}

FigureOutput figure_output(const ParsedInput& input, const Tolerances& tol) {
  const PointConfiguration& config = input.config;
  if (config.metric.curved())
    throw UnsupportedMetric("figures are drawn for flat configurations");
  if (config.metric.dim != 2)
    throw UnsupportedDimension("figures are drawn for two-dimensional configurations");
  const int m = config.count();
  if (m < 4) throw ValidationError("figures need at least four points");

  const Circumsphere circle = circumsphere(config, {1, 2, 3});

  // Styling: an explicit framework wins; otherwise label edges by parity,
  // choosing the swapped flavor when the first point sits inside the circle
  // through the others.
  TensegrityFramework framework;
  if (input.framework) {
    framework = realize_framework(input, *input.framework);
  } else {
    FrameworkFlavor flavor = FrameworkFlavor::G;
    if (m == config.metric.dim + 2) {
      const InvariantProfile profile = invariant_profile(input.dep, config, tol);
      if (profile.cosphericity == SphereSide::Inside) flavor = FrameworkFlavor::F;
    }
    framework = build_framework(input.dep, 1, flavor);
  }
  if (framework.k != 1)
    throw ValidationError("figures draw edge frameworks (k = 1)");

  std::string csv = "record,a,b,c,d\n";
  char line[160];
  for (int i = 0; i < m; ++i) {
    std::snprintf(line, sizeof line, "point,%d,%.17g,%.17g,\n", i, config.points(i, 0),
                  config.points(i, 1));
    csv += line;
  }
  std::snprintf(line, sizeof line, "circle,%.17g,%.17g,%.17g,\n", circle.center[0],
                circle.center[1], circle.radius);
  csv += line;
  std::snprintf(line, sizeof line, "framework,%d,%s,,\n", framework.k,
                flavor_name(framework.flavor).c_str());
  csv += line;
  for (const LabeledFace& face : framework.faces) {
    std::snprintf(line, sizeof line, "edge,%d,%d,%s,\n", face.vertices[0], face.vertices[1],
                  face_label_name(face.label).c_str());
    csv += line;
  }

  // Static figure: dashed circle, labeled edges, numbered points.
  double lo_x = circle.center[0] - circle.radius, hi_x = circle.center[0] + circle.radius;
  double lo_y = circle.center[1] - circle.radius, hi_y = circle.center[1] + circle.radius;
  for (int i = 0; i < m; ++i) {
    lo_x = std::min(lo_x, config.points(i, 0));
    hi_x = std::max(hi_x, config.points(i, 0));
    lo_y = std::min(lo_y, config.points(i, 1));
    hi_y = std::max(hi_y, config.points(i, 1));
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  const double pad = 0.15 * span;
  lo_x -= pad;
  hi_x += pad;
  lo_y -= pad;
  hi_y += pad;
  const double view = 480.0;
  const double unit = view / std::max(hi_x - lo_x, hi_y - lo_y);
  auto map_x = [&](double x) { return (x - lo_x) * unit; };
  auto map_y = [&](double y) { return view - (y - lo_y) * unit; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
         "viewBox=\"0 0 480 480\">\n";
  svg << "  <rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "  <circle cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\" fill=\"none\" "
                "stroke=\"#808080\" stroke-dasharray=\"6 4\"/>\n",
                map_x(circle.center[0]), map_y(circle.center[1]), circle.radius * unit);
  svg << buf;
  for (const LabeledFace& face : framework.faces) {
    const int i = face.vertices[0];
    const int j = face.vertices[1];
    const char* stroke = face.label == FaceLabel::Cable ? "#c0392b" : "#2c3e50";
    const char* dash = face.label == FaceLabel::Cable ? " stroke-dasharray=\"8 5\"" : "";
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" stroke=\"%s\" "
                  "stroke-width=\"2\"%s/>\n",
                  map_x(config.points(i, 0)), map_y(config.points(i, 1)),
                  map_x(config.points(j, 0)), map_y(config.points(j, 1)), stroke, dash);
    svg << buf;
  }
  for (int i = 0; i < m; ++i) {
    std::snprintf(buf, sizeof buf,
                  "  <circle cx=\"%.4f\" cy=\"%.4f\" r=\"4\" fill=\"black\"/>\n",
                  map_x(config.points(i, 0)), map_y(config.points(i, 1)));
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "  <text x=\"%.4f\" y=\"%.4f\" font-family=\"sans-serif\" "
                  "font-size=\"14\">P%d</text>\n",
                  map_x(config.points(i, 0)) + 7.0, map_y(config.points(i, 1)) - 7.0, i);
    svg << buf;
  }
  svg << "</svg>\n";

  return FigureOutput{std::move(csv), svg.str()};
}

}  // namespace volrig
