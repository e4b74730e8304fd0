// statemetric: Fubini-Study metrics of Lie-algebra state families.
//
//   statemetric validate <manifest>
//   statemetric metric <manifest> --at name=value ... [--defaults-zero]
//   statemetric grid <manifest> --sweep name=min:max:count ... --out path [--format json|csv]
//   statemetric curvature <manifest> --at name=value ... --section p,q
//   statemetric verify [--only tag ...]
//   statemetric models list | emit <id> [model options] [--out path]
//
// Exit codes: 0 success, 1 domain failure, 2 usage or parse failure.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "statemetric/geometry.hpp"
#include "statemetric/manifest.hpp"
#include "statemetric/models.hpp"
#include "statemetric/oracle.hpp"
#include "statemetric/verify.hpp"

namespace sm = statemetric;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int exit_code_for(sm::ErrorCode code) {
  switch (code) {
    case sm::ErrorCode::ParseError:
    case sm::ErrorCode::MissingParameter:
    case sm::ErrorCode::DuplicateParameter:
    case sm::ErrorCode::UnknownModel:
    case sm::ErrorCode::UnknownGenerator:
    case sm::ErrorCode::EmptyGrid:
    case sm::ErrorCode::InsufficientGrid:
    case sm::ErrorCode::IoError:
    case sm::ErrorCode::StepOutOfRange:
    case sm::ErrorCode::BadVariant:
    case sm::ErrorCode::InvalidParameter:
      return kExitUsage;
    default:
      return kExitDomain;
  }
}

std::string shortest(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end || !std::isfinite(value)) {
    throw sm::Error(sm::ErrorCode::ParseError, "cannot parse " + what + " '" + text + "'");
  }
  return value;
}

sm::ParameterBinding parse_bindings(const std::vector<std::string>& items) {
  sm::ParameterBinding out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw sm::Error(sm::ErrorCode::ParseError, "expected name=value, got '" + item + "'");
    }
    out[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "value of " + item.substr(0, eq));
  }
  return out;
}

sm::GridAxis parse_sweep(const std::string& item) {
  const auto eq = item.find('=');
  const auto c1 = item.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? c1 : item.find(':', c1 + 1);
  if (eq == std::string::npos || eq == 0 || c1 == std::string::npos || c2 == std::string::npos) {
    throw sm::Error(sm::ErrorCode::ParseError, "expected name=min:max:count, got '" + item + "'");
  }
  sm::GridAxis axis;
  axis.parameter = item.substr(0, eq);
  axis.min = parse_number(item.substr(eq + 1, c1 - eq - 1), "sweep minimum");
  axis.max = parse_number(item.substr(c1 + 1, c2 - c1 - 1), "sweep maximum");
  const double count = parse_number(item.substr(c2 + 1), "sweep count");
  if (count != std::floor(count) || count < 0 || count > 1e6) {
    throw sm::Error(sm::ErrorCode::ParseError, "sweep count must be a non-negative integer");
  }
  axis.count = static_cast<int>(count);
  return axis;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json point_json(const std::vector<std::string>& names, const Eigen::VectorXd& point) {
  json out = json::object();
  for (std::size_t k = 0; k < names.size(); ++k) out[names[k]] = point(static_cast<Eigen::Index>(k));
  return out;
}

/// Largest componentwise deviation of the metric over the 3^n corners and
/// midpoints of a box of half-width 0.05 around theta.
double local_metric_variation(const sm::Model& model, const Eigen::VectorXd& theta) {
  constexpr double half_width = 0.05;
  const sm::MetricTensor centre = sm::analytic_metric(model, theta);
  const Eigen::Index n = theta.size();
  std::size_t total = 1;
  for (Eigen::Index m = 0; m < n; ++m) total *= 3;
  double worst = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    Eigen::VectorXd node = theta;
    std::size_t digits = k;
    for (Eigen::Index m = 0; m < n; ++m, digits /= 3) node(m) += half_width * (static_cast<double>(digits % 3) - 1.0);
    worst = std::max(worst, (sm::analytic_metric(model, node).g - centre.g).cwiseAbs().maxCoeff());
  }
  return worst;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sm::Error(sm::ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw sm::Error(sm::ErrorCode::IoError, "failed writing '" + path + "'");
}

// --- commands ---------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const sm::Manifest manifest = sm::read_manifest(path);
  std::cout << "manifest: " << manifest.name << "\n";
  std::cout << "dimension: " << manifest.dimension << ", generators: " << manifest.generators.size() << "\n";
  bool ok = true;
  std::cout << "hermiticity:\n";
  for (const sm::Generator& g : manifest.generators) {
    const double defect = sm::hermiticity_defect(g.matrix);
    const bool pass = defect <= sm::kHermitianTol;
    ok = ok && pass;
    std::cout << "  " << g.name << " defect " << shortest(defect) << (pass ? " ok" : " NOT HERMITIAN") << "\n";
  }
  if (!ok) {
    std::cout << "result: FAIL\n";
    return kExitDomain;
  }
  const auto generators = std::make_shared<const sm::GeneratorSet>(manifest.generators);
  sm::CircuitSpec circuit(generators, manifest.circuit);
  (void)circuit;
  const sm::StructureFit fit =
      sm::fit_structure_constants(*generators, sm::ClosureOptions{.truncation_aware = manifest.truncation_aware});
  const double jacobi = sm::jacobi_residual(fit);
  std::cout << "closure: max residual " << shortest(fit.max_residual) << " (tol " << shortest(sm::kClosureTol)
            << "), gram condition " << shortest(fit.gram_condition)
            << (manifest.truncation_aware ? ", truncation aware" : "") << "\n";
  for (std::size_t i = 0; i < fit.count; ++i) {
    for (std::size_t j = i + 1; j < fit.count; ++j) {
      std::cout << "  [" << (*generators)[i].name << "," << (*generators)[j].name << "] residual "
                << shortest(fit.residuals(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      for (std::size_t k = 0; k < fit.count; ++k) {
        const sm::Complex c = fit.c(i, j, k);
        if (std::abs(c) > 1e-12) {
          std::cout << "  " << (*generators)[k].name << ": (" << shortest(c.real()) << ", " << shortest(c.imag()) << ")";
        }
      }
      std::cout << "\n";
    }
  }
  std::cout << "jacobi residual: " << shortest(jacobi) << " (tol " << shortest(sm::kJacobiTol) << ")\n";
  if (!fit.closed()) {
    std::cout << "algebra: NOT CLOSED\nresult: FAIL\n";
    return kExitDomain;
  }
  const sm::LieAlgebraRep rep =
      sm::extract_structure_constants(generators, sm::ClosureOptions{.truncation_aware = manifest.truncation_aware});
  std::cout << "purity defect: " << shortest(rep.purity_defect()) << "\n";
  const sm::AlgebraKind kind = sm::detect_kind(rep);
  std::cout << "detected kind: " << kind.label() << "\n";
  for (const auto& check : sm::validate_algebra(rep, kind).checks) {
    std::cout << "  " << check.label << " residual " << shortest(check.residual) << (check.passed() ? " ok" : " FAIL")
              << "\n";
  }
  const bool pass = jacobi <= sm::kJacobiTol;
  std::cout << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitDomain;
}

int cmd_metric(const std::string& path, const std::vector<std::string>& at, bool defaults_zero) {
  const sm::Model model = sm::to_model(sm::read_manifest(path));
  const Eigen::VectorXd theta = model.circuit.bind(parse_bindings(at), defaults_zero);
  const sm::MetricTensor g = sm::analytic_metric(model, theta);
  const sm::RankInfo rank = sm::rank_analysis(g);
  const sm::MetricTensor fd = sm::fd_metric(model.circuit, theta, model.initial, model.gamma, sm::kDefaultStep);

  json out;
  out["model"] = model.id;
  out["parameters"] = model.circuit.parameter_names();
  out["point"] = point_json(g.parameters, theta);
  out["gamma"] = model.gamma;
  out["g"] = matrix_json(g.g);
  out["rank"] = rank.rank;
  out["eigenvalues"] = std::vector<double>(rank.eigenvalues.data(), rank.eigenvalues.data() + rank.eigenvalues.size());
  out["flat"] = local_metric_variation(model, theta) <= sm::kFlatMetricTol;
  json oracle;
  oracle["step"] = sm::kDefaultStep;
  oracle["fd_max_abs_diff"] = sm::compare(g, fd, 1e-6).max_abs_diff;
  if (model.algebra) {
    const sm::MetricTensor tilde = sm::metric_from_tilde(*model.algebra, model.circuit, theta, model.initial, model.gamma);
    oracle["tilde_max_abs_diff"] = sm::compare(g, tilde, 1e-10).max_abs_diff;
  }
  out["oracle"] = std::move(oracle);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_grid(const std::string& path, const std::vector<std::string>& sweeps, const std::vector<std::string>& at,
             bool defaults_zero, const std::string& out_path, const std::string& format) {
  if (sweeps.empty()) throw sm::Error(sm::ErrorCode::EmptyGrid, "at least one --sweep is required");
  auto model = std::make_shared<const sm::Model>(sm::to_model(sm::read_manifest(path)));
  sm::GridSpec grid;
  sm::ParameterBinding binding = parse_bindings(at);
  for (const std::string& s : sweeps) {
    grid.axes.push_back(parse_sweep(s));
    binding[grid.axes.back().parameter] = grid.axes.back().min;
  }
  grid.base = model->circuit.bind(binding, defaults_zero);
  const sm::MetricField field = sm::metric_field(model, grid);
  const auto& names = model->circuit.parameter_names();
  const Eigen::Index n = static_cast<Eigen::Index>(names.size());

  std::string content;
  if (format == "csv") {
    std::ostringstream csv;
    for (const auto& axis : field.axes) csv << axis.parameter << ",";
    bool first = true;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) {
        csv << (first ? "" : ",") << "g_" << (i + 1) << (n >= 10 ? "_" : "") << (j + 1);
        first = false;
      }
    csv << "\n";
    for (std::size_t k = 0; k < field.nodes.size(); ++k) {
      for (std::size_t a = 0; a < field.axes.size(); ++a) {
        csv << shortest(field.nodes[k](static_cast<Eigen::Index>(field.axis_parameter[a]))) << ",";
      }
      first = true;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
          csv << (first ? "" : ",") << shortest(field.tensors[k].g(i, j));
          first = false;
        }
      csv << "\n";
    }
    content = csv.str();
  } else if (format == "json") {
    json doc;
    doc["model"] = model->id;
    doc["gamma"] = model->gamma;
    doc["parameters"] = names;
    json axes = json::array();
    for (const auto& axis : field.axes) {
      axes.push_back(json{{"parameter", axis.parameter}, {"min", axis.min}, {"max", axis.max}, {"count", axis.count}});
    }
    doc["axes"] = std::move(axes);
    json nodes = json::array();
    for (std::size_t k = 0; k < field.nodes.size(); ++k) {
      nodes.push_back(json{{"point", point_json(names, field.nodes[k])}, {"g", matrix_json(field.tensors[k].g)}});
    }
    doc["nodes"] = std::move(nodes);
    content = doc.dump(2) + "\n";
  } else {
    throw sm::Error(sm::ErrorCode::ParseError, "unknown format '" + format + "'");
  }
  write_output(out_path, content);
  return kExitOk;
}

int cmd_curvature(const std::string& path, const std::vector<std::string>& at, bool defaults_zero,
                  const std::string& section) {
  auto model = std::make_shared<const sm::Model>(sm::to_model(sm::read_manifest(path)));
  const Eigen::VectorXd theta = model->circuit.bind(parse_bindings(at), defaults_zero);
  const auto comma = section.find(',');
  if (comma == std::string::npos) throw sm::Error(sm::ErrorCode::ParseError, "--section expects p,q");
  const std::string p = section.substr(0, comma), q = section.substr(comma + 1);
  const std::size_t ip = model->circuit.parameter_index(p), iq = model->circuit.parameter_index(q);
  const double k = sm::gauss_curvature(*model, theta, {ip, iq});

  // Local classification on a 3x3 patch of the section around the point.
  constexpr double patch = 0.05;
  sm::GridSpec grid;
  grid.base = theta;
  grid.axes.push_back({p, theta(static_cast<Eigen::Index>(ip)) - patch, theta(static_cast<Eigen::Index>(ip)) + patch, 3});
  grid.axes.push_back({q, theta(static_cast<Eigen::Index>(iq)) - patch, theta(static_cast<Eigen::Index>(iq)) + patch, 3});
  const sm::CurvatureReport report = sm::classify(sm::metric_field(model, grid));

  json out;
  out["model"] = model->id;
  out["point"] = point_json(model->circuit.parameter_names(), theta);
  out["section"] = {p, q};
  out["gamma"] = model->gamma;
  out["gaussian_curvature"] = k;
  out["radius"] = k > sm::kFlatCurvatureTol ? json(1.0 / std::sqrt(k)) : json(nullptr);
  out["classification"] = report.classification.label();
  if (report.classification.kind == sm::Classification::Kind::Sphere) {
    out["classification_radius"] = report.classification.radius;
  }
  if (report.classification.kind == sm::Classification::Kind::Degenerate) {
    out["classification_rank"] = report.classification.rank;
  }
  out["rank"] = report.rank;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& only) {
  const auto results = sm::verify::run_acceptance(sm::verify::Catalog{}, only);
  if (results.empty()) {
    std::cerr << "no criteria match the requested tags\n";
    return kExitUsage;
  }
  int failed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    std::cout << sm::verify::format_result(r) << "\n";
    failed += r.passed ? 0 : 1;
    total += r.seconds;
  }
  std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed in "
            << shortest(std::round(total * 100) / 100) << " s\n";
  return failed == 0 ? kExitOk : kExitDomain;
}

struct EmitOptions {
  double s = 0.5;
  std::string m;
  std::string coeffs;
  int n = 0;
  int trunc = 64;
  double mass = 1.0, omega = 1.0;
  double j1 = 1.0, j2 = 1.0, hz = 1.0, h = 1.0;
  double eta = 0.0, chi = 0.0;
  std::string initial;
  double gamma = 1.0;
  std::string out;
};

std::vector<sm::Complex> parse_coefficients(const std::string& text) {
  std::vector<sm::Complex> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(parse_number(item, "coefficient"), 0.0);
    } else {
      out.emplace_back(parse_number(item.substr(0, colon), "coefficient"),
                       parse_number(item.substr(colon + 1), "coefficient"));
    }
  }
  return out;
}

int cmd_models_emit(const std::string& id, const EmitOptions& o) {
  sm::Model model = [&]() -> sm::Model {
    if (id == "spin") {
      sm::models::SpinModelSpec spec;
      spec.s = o.s;
      spec.gamma = o.gamma;
      if (!o.coeffs.empty()) {
        spec.initial = parse_coefficients(o.coeffs);
      } else {
        spec.initial = o.m.empty() ? o.s : parse_number(o.m, "m");
      }
      return sm::models::spin_model(spec);
    }
    if (id == "oscillator") {
      return sm::models::oscillator_model(sm::models::OscillatorModelSpec{o.mass, o.omega, o.n, o.trunc, o.gamma, 1.0});
    }
    for (const auto variant : {sm::models::TwoSpinVariant::DmXx, sm::models::TwoSpinVariant::Sum,
                               sm::models::TwoSpinVariant::Directional}) {
      if (id != "two_spin_" + sm::models::to_string(variant)) continue;
      sm::models::TwoSpinModelSpec spec;
      spec.variant = variant;
      spec.j1 = o.j1;
      spec.j2 = o.j2;
      spec.field = variant == sm::models::TwoSpinVariant::Directional ? o.h : o.hz;
      spec.eta = o.eta;
      spec.chi = o.chi;
      spec.gamma = o.gamma;
      if (!o.coeffs.empty()) {
        spec.initial = parse_coefficients(o.coeffs);
      } else if (!o.initial.empty()) {
        spec.initial = sm::models::parse_preset(o.initial);
      } else {
        spec.initial = variant == sm::models::TwoSpinVariant::Sum ? sm::models::TwoSpinPreset::UpUp
                       : variant == sm::models::TwoSpinVariant::Directional ? sm::models::TwoSpinPreset::PlusMinus
                                                                            : sm::models::TwoSpinPreset::UpDown;
      }
      return sm::models::two_spin_model(spec);
    }
    throw sm::Error(sm::ErrorCode::UnknownModel, "unknown model '" + id + "'");
  }();
  write_output(o.out, sm::emit_manifest(sm::to_manifest(model, model.id)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fubini-Study metrics of quantum state manifolds generated by Lie-algebra exponentials"};
  app.require_subcommand(1);

  std::string manifest_path;
  std::vector<std::string> at, sweeps, only;
  bool defaults_zero = false;
  std::string out_path, format = "json", section;

  auto* validate = app.add_subcommand("validate", "check Hermiticity, closure and Jacobi identity");
  validate->add_option("manifest", manifest_path, "manifest JSON")->required();

  auto* metric = app.add_subcommand("metric", "metric tensor at a point, as JSON");
  metric->add_option("manifest", manifest_path, "manifest JSON")->required();
  metric->add_option("--at", at, "parameter binding name=value (radians)");
  metric->add_flag("--defaults-zero", defaults_zero, "bind unlisted parameters to 0");

  auto* grid = app.add_subcommand("grid", "metric field over a parameter grid");
  grid->add_option("manifest", manifest_path, "manifest JSON")->required();
  grid->add_option("--sweep", sweeps, "name=min:max:count")->required();
  grid->add_option("--at", at, "fixed parameter binding name=value");
  grid->add_flag("--defaults-zero", defaults_zero, "bind unlisted parameters to 0");
  grid->add_option("--out", out_path, "output path (stdout when omitted)");
  grid->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* curvature = app.add_subcommand("curvature", "Gaussian curvature of a two-parameter section");
  curvature->add_option("manifest", manifest_path, "manifest JSON")->required();
  curvature->add_option("--at", at, "parameter binding name=value");
  curvature->add_flag("--defaults-zero", defaults_zero, "bind unlisted parameters to 0");
  curvature->add_option("--section", section, "two parameter names p,q")->required();

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--only", only, "criterion tags or numbers to run");

  auto* models = app.add_subcommand("models", "built-in model catalog");
  models->require_subcommand(1);
  auto* list = models->add_subcommand("list", "print model identifiers");
  auto* emit = models->add_subcommand("emit", "write a manifest for a catalog model");
  emit->set_help_flag("--help", "print this help message and exit");
  std::string model_id;
  EmitOptions eo;
  emit->add_option("id", model_id, "model identifier")->required();
  emit->add_option("--s", eo.s, "spin quantum number");
  emit->add_option("--m", eo.m, "S_z eigenvalue of the initial state (default s)");
  emit->add_option("--coeffs", eo.coeffs, "initial amplitudes re[:im],... (spin: m = s..-s; two-spin: uu,ud,du,dd)");
  emit->add_option("--n", eo.n, "oscillator level");
  emit->add_option("--trunc", eo.trunc, "Fock-space truncation");
  emit->add_option("--mass", eo.mass, "oscillator mass");
  emit->add_option("--omega", eo.omega, "oscillator frequency");
  emit->add_option("--J1", eo.j1, "coupling J1");
  emit->add_option("--J2", eo.j2, "coupling J2");
  emit->add_option("--hz", eo.hz, "field h_z");
  emit->add_option("--h", eo.h, "field h (directional)");
  emit->add_option("--eta", eo.eta, "polar angle of n");
  emit->add_option("--chi", eo.chi, "azimuthal angle of n");
  emit->add_option("--initial", eo.initial, "two-spin initial state: uu, ud, du, dd, +-, -+");
  emit->add_option("--gamma", eo.gamma, "metric scale factor");
  emit->add_option("--out", eo.out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(manifest_path);
    if (*metric) return cmd_metric(manifest_path, at, defaults_zero);
    if (*grid) return cmd_grid(manifest_path, sweeps, at, defaults_zero, out_path, format);
    if (*curvature) return cmd_curvature(manifest_path, at, defaults_zero, section);
    if (*verify) return cmd_verify(only);
    if (*list) {
      for (const auto& id : sm::models::model_ids()) std::cout << id << "\n";
      return kExitOk;
    }
    if (*emit) return cmd_models_emit(model_id, eo);
  } catch (const sm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
