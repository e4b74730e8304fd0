#include "statemetric/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "statemetric/geometry.hpp"
#include "statemetric/oracle.hpp"

namespace statemetric::verify {

namespace {

using models::OscillatorModelSpec;
using models::SpinModelSpec;
using models::TwoSpinModelSpec;
using models::TwoSpinPreset;
using models::TwoSpinVariant;

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

Eigen::VectorXd uniform_point(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = dist(rng);
  return v;
}

/// Euler-angle point with theta2 kept 0.1 away from the coordinate poles.
Eigen::VectorXd euler_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi), polar(0.1, kPi - 0.1);
  return Eigen::Vector3d(angle(rng), polar(rng), angle(rng));
}

std::vector<double> spin_values() { return {0.5, 1.0, 1.5, 2.0}; }

std::vector<double> projections(double s) {
  std::vector<double> out;
  for (double m = s; m >= -s - 1e-12; m -= 1.0) out.push_back(m);
  return out;
}

struct NamedModel {
  Model model;
  double range;  // random points drawn from [-range, range]
};

std::vector<NamedModel> catalog_models(const Catalog& catalog) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<NamedModel> out;
  out.push_back({catalog.spin(SpinModelSpec{0.5, 0.5, 1.0}), kPi});
  out.push_back({catalog.spin(SpinModelSpec{1.0, 0.0, 1.0}), kPi});
  out.push_back({catalog.spin(SpinModelSpec{1.0, std::vector<Complex>{r, 0.0, r}, 1.0}), kPi});
  out.push_back({catalog.spin(SpinModelSpec{1.5, std::vector<Complex>{{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.5, 0.0}},
                                            std::sqrt(2.0)}),
                 kPi});
  out.push_back({catalog.oscillator(OscillatorModelSpec{1.0, 1.0, 0, 64, 1.0, 1.0}), 1.0});
  out.push_back({catalog.oscillator(OscillatorModelSpec{1.0, 1.0, 1, 64, 2.0, 1.0}), 1.0});
  TwoSpinModelSpec dm{TwoSpinVariant::DmXx, 1.0, 0.5, 2.0, 0.0, 0.0, TwoSpinPreset::UpDown, 1.0};
  out.push_back({catalog.two_spin(dm), kPi});
  dm.initial = std::vector<Complex>{0.0, {0.6, 0.0}, {0.0, 0.8}, 0.0};
  out.push_back({catalog.two_spin(dm), kPi});
  TwoSpinModelSpec sum{TwoSpinVariant::Sum, 1.0, 0.5, 2.0, 0.0, 0.0, TwoSpinPreset::UpUp, 1.0};
  out.push_back({catalog.two_spin(sum), kPi});
  TwoSpinModelSpec dir{TwoSpinVariant::Directional, 1.0, 0.5, 1.0, kPi / 2, 0.0, TwoSpinPreset::PlusMinus, 1.0};
  out.push_back({catalog.two_spin(dir), kPi});
  dir.eta = 0.7;
  dir.chi = 1.3;
  dir.initial = std::vector<Complex>{{0.3, 0.1}, {0.5, 0.0}, {0.0, -0.6}, {0.4, 0.35}};
  const double norm = std::sqrt(0.09 + 0.01 + 0.25 + 0.36 + 0.16 + 0.1225);
  for (Complex& c : std::get<std::vector<Complex>>(dir.initial)) c /= norm;
  out.push_back({catalog.two_spin(dir), kPi});
  return out;
}

Outcome three_way_agreement(const Catalog& catalog) {
  std::mt19937_64 rng(1001);
  double worst_tilde = 0.0, worst_fd = 0.0;
  std::string where;
  for (const NamedModel& entry : catalog_models(catalog)) {
    const Model& m = entry.model;
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd theta = uniform_point(rng, m.circuit.size(), -entry.range, entry.range);
      const MetricTensor deriv = analytic_metric(m, theta);
      const MetricTensor tilde = metric_from_tilde(*m.algebra, m.circuit, theta, m.initial, m.gamma);
      const MetricTensor fd = fd_metric(m.circuit, theta, m.initial, m.gamma, 1e-4);
      const double dt = compare(deriv, tilde, 1e-10).max_abs_diff;
      const double df = std::max(compare(deriv, fd, 1e-6).max_abs_diff, compare(tilde, fd, 1e-6).max_abs_diff);
      if (dt > worst_tilde || df > worst_fd) where = m.id;
      worst_tilde = std::max(worst_tilde, dt);
      worst_fd = std::max(worst_fd, df);
    }
  }
  return {worst_tilde <= 1e-10 && worst_fd <= 1e-6,
          "derivative vs tilde " + sci(worst_tilde) + " (tol 1e-10), analytic vs fd " + sci(worst_fd) +
              " (tol 1e-6), worst model " + where};
}

Outcome sphere_reproduction(const Catalog& catalog) {
  std::mt19937_64 rng(1002);
  double worst_metric = 0.0, worst_k = 0.0;
  for (double gamma : {1.0, std::sqrt(2.0)}) {
    for (double s : spin_values()) {
      for (double m : projections(s)) {
        const Model model = catalog.spin(SpinModelSpec{s, m, gamma});
        const double radius = gamma / std::sqrt(2.0) * std::sqrt(s * (s + 1) - m * m);
        for (int k = 0; k < 5; ++k) {
          const Eigen::VectorXd theta = euler_point(rng);
          Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
          expected(0, 0) = radius * radius * std::pow(std::sin(theta(1)), 2);
          expected(1, 1) = radius * radius;
          worst_metric = std::max(worst_metric, (analytic_metric(model, theta).g - expected).cwiseAbs().maxCoeff());
        }
        const Eigen::VectorXd theta = euler_point(rng);
        const double curvature = gauss_curvature(model, theta, {0, 1});
        worst_k = std::max(worst_k, std::abs(curvature * radius * radius - 1.0));
      }
    }
  }
  return {worst_metric <= 1e-10 && worst_k <= 1e-3,
          "metric vs diag(R^2 sin^2, R^2, 0) " + sci(worst_metric) + " (tol 1e-10), K R^2 - 1 " + sci(worst_k) +
              " (tol 1e-3)"};
}

Outcome flat_heisenberg(const Catalog& catalog) {
  std::mt19937_64 rng(1003);
  double worst_diag = 0.0, worst_off = 0.0, worst_var = 0.0;
  bool all_flat = true;
  for (int n : {0, 1, 2}) {
    auto model = std::make_shared<const Model>(catalog.oscillator(OscillatorModelSpec{1.0, 1.0, n, 64, 1.0, 1.0}));
    const double expected = (2.0 * n + 1.0) / 2.0;
    for (int k = 0; k < 10; ++k) {
      const MetricTensor g = analytic_metric(*model, uniform_point(rng, 2, -1.0, 1.0));
      worst_diag = std::max({worst_diag, std::abs(g.g(0, 0) - expected), std::abs(g.g(1, 1) - expected)});
      worst_off = std::max(worst_off, std::abs(g.g(0, 1)));
    }
    const MetricField field =
        metric_field(model, GridSpec{{{"theta", -1.0, 1.0, 5}, {"phi", -1.0, 1.0, 5}}, Eigen::Vector2d::Zero()});
    const CurvatureReport report = classify(field);
    worst_var = std::max(worst_var, report.metric_variation);
    all_flat = all_flat && report.classification.kind == Classification::Kind::Flat;
  }
  return {worst_diag <= 1e-6 && worst_off <= 1e-8 && worst_var <= 1e-6 && all_flat,
          "diag vs (2n+1)/2 " + sci(worst_diag) + " (tol 1e-6), off-diag " + sci(worst_off) +
              " (tol 1e-8), 5x5 variation " + sci(worst_var) + " (tol 1e-6), classified flat: " +
              (all_flat ? "yes" : "no")};
}

Outcome two_spin_spheres(const Catalog& catalog) {
  std::vector<TwoSpinModelSpec> specs{
      {TwoSpinVariant::DmXx, 1.0, 0.5, 2.0, 0.0, 0.0, TwoSpinPreset::UpDown, 1.0},
      {TwoSpinVariant::Sum, 1.0, 0.5, 2.0, 0.0, 0.0, TwoSpinPreset::UpUp, 1.0},
      {TwoSpinVariant::Directional, 1.0, 0.5, 1.0, kPi / 2, 0.0, TwoSpinPreset::PlusMinus, 1.0},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const TwoSpinModelSpec& spec : specs) {
    auto model = std::make_shared<const Model>(catalog.two_spin(spec));
    Eigen::Vector3d base(0.0, 0.0, 0.4);
    const MetricField field =
        metric_field(model, GridSpec{{{"theta1", -1.0, 1.0, 3}, {"theta2", 0.4, kPi - 0.4, 5}}, base});
    const CurvatureReport report = classify(field);
    const bool sphere = report.classification.kind == Classification::Kind::Sphere;
    const double err = sphere ? std::abs(report.classification.radius - spec.gamma / 2) : 1.0;
    ok = ok && sphere && err <= 1e-6;
    detail << model->id << ": " << report.classification.label() << " |R - 1/2| " << sci(err) << "; ";
  }
  detail << "tol 1e-6";
  return {ok, detail.str()};
}

Outcome bch_equivalence(const Catalog& catalog) {
  std::mt19937_64 rng(1005);
  std::vector<NamedModel> entries;
  entries.push_back({catalog.spin(SpinModelSpec{0.5, 0.5, 1.0}), kPi});
  entries.push_back({catalog.spin(SpinModelSpec{1.5, 0.5, 1.0}), kPi});
  entries.push_back({catalog.oscillator(OscillatorModelSpec{1.0, 1.0, 0, 64, 1.0, 1.0}), 1.0});
  entries.push_back({catalog.two_spin(TwoSpinModelSpec{TwoSpinVariant::DmXx}), kPi});
  entries.push_back({catalog.two_spin(TwoSpinModelSpec{TwoSpinVariant::Sum}), kPi});
  double worst = 0.0;
  std::string where;
  for (const NamedModel& entry : entries) {
    const LieAlgebraRep& rep = *entry.model.algebra;
    // the model circuit plus the product over all generators in algebra order
    std::vector<CircuitSpec::Factor> all;
    for (std::size_t k = 0; k < rep.size(); ++k) all.push_back({rep.generators()[k].name, "t" + std::to_string(k)});
    const std::vector<CircuitSpec> circuits{entry.model.circuit, CircuitSpec(rep.generators_ptr(), all)};
    for (const CircuitSpec& circuit : circuits) {
      for (int k = 0; k < 50; ++k) {
        const Eigen::VectorXd theta = uniform_point(rng, circuit.size(), -entry.range, entry.range);
        const double d = max_tilde_deviation(rep, tilde_by_adjoint(rep, circuit, theta),
                                             tilde_by_conjugation(circuit, theta));
        if (d > worst) where = entry.model.id;
        worst = std::max(worst, d);
      }
    }
  }
  return {worst <= 1e-10, "adjoint vs conjugation " + sci(worst) + " (tol 1e-10), worst model " + where};
}

Outcome algebra_validation(const Catalog& catalog) {
  double worst_c = 0.0, worst_jacobi = 0.0;
  for (double s : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    const Model model = catalog.spin(SpinModelSpec{s, s, 1.0});
    const LieAlgebraRep& rep = *model.algebra;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          // Levi-Civita times i
          Complex expected{0.0, 0.0};
          if (i != j && j != k && i != k) expected = Complex{0.0, ((j == (i + 1) % 3) ? 1.0 : -1.0)};
          worst_c = std::max(worst_c, std::abs(rep.c(i, j, k) - expected));
        }
    worst_jacobi = std::max(worst_jacobi, rep.jacobi_residual());
  }
  const Model osc = catalog.oscillator(OscillatorModelSpec{1.0, 1.0, 0, 64, 1.0, 1.0});
  const ValidationReport report = validate_algebra(*osc.algebra, AlgebraKind::heisenberg(1));
  double worst_bracket = 0.0;
  for (const auto& check : report.checks) worst_bracket = std::max(worst_bracket, check.residual);
  return {worst_c <= 1e-12 && worst_jacobi <= 1e-10 && report.passed() && worst_bracket <= 1e-9,
          "spin constants vs i eps " + sci(worst_c) + " (tol 1e-12), Jacobi " + sci(worst_jacobi) +
              " (tol 1e-10), Heisenberg brackets " + sci(worst_bracket) + " (tol 1e-9)"};
}

Outcome degeneracy_detection(const Catalog& catalog) {
  std::mt19937_64 rng(1007);
  bool ok = true;
  double worst_third = 0.0;
  for (double s : spin_values()) {
    for (double m : projections(s)) {
      const Model model = catalog.spin(SpinModelSpec{s, m, 1.0});
      for (int k = 0; k < 10; ++k) {
        const RankInfo info = rank_analysis(analytic_metric(model, euler_point(rng)));
        worst_third = std::max(worst_third, std::abs(info.eigenvalues(0)));
        ok = ok && info.rank == 2;
      }
    }
  }
  return {ok && worst_third <= 1e-10,
          std::string("rank 2 everywhere: ") + (ok ? "yes" : "no") + ", null eigenvalue " + sci(worst_third) +
              " (tol 1e-10)"};
}

Outcome euler_bridge(const Catalog& catalog) {
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> coupling(0.2, 2.0), field(-2.0, 2.0), time(0.1, 5.0), sign(-1.0, 1.0);
  double worst_leak = 0.0, worst_rel = 0.0, worst_rebuild = 0.0;
  for (int k = 0; k < 20; ++k) {
    TwoSpinModelSpec spec{TwoSpinVariant::DmXx};
    spec.j1 = coupling(rng) * (sign(rng) < 0 ? -1.0 : 1.0);
    spec.j2 = coupling(rng) * (sign(rng) < 0 ? -1.0 : 1.0);
    spec.field = field(rng);
    const double t = time(rng);
    catalog.two_spin(spec);  // the catalog must accept the spec
    const models::EulerBridge bridge = models::euler_from_time(spec, t);
    worst_leak = std::max(worst_leak, bridge.leakage);
    worst_rel = std::max(worst_rel, bridge.difference_relation);
    worst_rebuild = std::max(worst_rebuild, bridge.reconstruction);
  }
  return {worst_leak <= 1e-12 && worst_rel <= 1e-8 && worst_rebuild <= 1e-10,
          "subspace leakage " + sci(worst_leak) + " (tol 1e-12), tan((t1-t3)/2) - J2/J1 " + sci(worst_rel) +
              " (tol 1e-8), reconstruction " + sci(worst_rebuild) + " (tol 1e-10)"};
}

Outcome spin1_superposition(const Catalog& catalog) {
  const double r = 1.0 / std::sqrt(2.0);
  const Model model = catalog.spin(SpinModelSpec{1.0, std::vector<Complex>{r, 0.0, r}, 1.0});
  const models::SpinMatrices ops = models::spin_operators(1.0);
  const auto variance = [&](const ComplexMatrix& a) {
    const Complex mean = expectation(model.initial, a);
    const ComplexMatrix d = a - mean * ComplexMatrix::Identity(3, 3);
    return expectation(model.initial, d * d).real();
  };
  const Complex mx = expectation(model.initial, ops.x), my = expectation(model.initial, ops.y);
  const ComplexMatrix dx = ops.x - mx * ComplexMatrix::Identity(3, 3), dy = ops.y - my * ComplexMatrix::Identity(3, 3);
  const double cross = expectation(model.initial, anticommutator(dx, dy)).real();
  const double var_err = std::max({std::abs(variance(ops.z) - 1.0), std::abs(variance(ops.x) - 1.0),
                                   std::abs(variance(ops.y)), std::abs(cross)});

  std::mt19937_64 rng(1009);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd theta = uniform_point(rng, 3, -kPi, kPi);
    worst = std::max(worst, compare(analytic_metric(model, theta),
                                    fd_metric(model.circuit, theta, model.initial, model.gamma), 1e-6)
                                .max_abs_diff);
  }
  return {var_err <= 1e-10 && worst <= 1e-6,
          "variances vs (1, 1, 0, 0) " + sci(var_err) + " (tol 1e-10), metric vs fd oracle " + sci(worst) +
              " (tol 1e-6)"};
}

Outcome oracle_quality(const Catalog& catalog) {
  const Model model = catalog.spin(SpinModelSpec{1.0, std::vector<Complex>{{0.6, 0.0}, {0.0, 0.48}, {0.64, 0.0}}, 1.0});
  const Eigen::Vector3d theta(0.3, 0.7, 1.1);
  const MetricTensor exact = analytic_metric(model, theta);
  std::vector<double> xs, ys;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const double err = compare(exact, fd_metric(model.circuit, theta, model.initial, model.gamma, h), 0.0).max_abs_diff;
    xs.push_back(std::log10(h));
    ys.push_back(std::log10(err));
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = num / den;

  std::mt19937_64 rng(1010);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd p = uniform_point(rng, 3, -kPi, kPi);
    worst = std::max(worst, compare(fidelity_metric(model.circuit, p, model.initial, model.gamma),
                                    fd_metric(model.circuit, p, model.initial, model.gamma), 1e-5)
                                .max_abs_diff);
  }
  std::ostringstream slope_text;
  slope_text.precision(4);
  slope_text << slope;
  return {std::abs(slope - 2.0) <= 0.3 && worst <= 1e-5,
          "fd convergence slope " + slope_text.str() + " (2.0 +- 0.3), fidelity vs fd " + sci(worst) + " (tol 1e-5)"};
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria{
      {1, {"agreement"}, "three-way metric agreement (derivative, tilde, finite difference)", three_way_agreement},
      {2, {"sphere"}, "spin-s eigenstate sphere metric and curvature", sphere_reproduction},
      {3, {"flat", "heisenberg"}, "flat oscillator manifold", flat_heisenberg},
      {4, {"two_spin"}, "two-spin spheres of radius gamma/2", two_spin_spheres},
      {5, {"bch"}, "adjoint-representation tilde operators match conjugation", bch_equivalence},
      {6, {"algebra", "heisenberg"}, "structure constants, Jacobi and Heisenberg brackets", algebra_validation},
      {7, {"degeneracy", "sphere"}, "eigenstate metrics have rank 2", degeneracy_detection},
      {8, {"euler"}, "Euler angles from two-spin time evolution", euler_bridge},
      {9, {"superposition"}, "spin-1 superposition variances and metric", spin1_superposition},
      {10, {"oracle"}, "finite-difference convergence and fidelity oracle", oracle_quality},
  };
  return criteria;
}

std::vector<CriterionResult> run_acceptance(const Catalog& catalog, const std::vector<std::string>& only) {
  std::vector<CriterionResult> results;
  for (const Criterion& c : acceptance_criteria()) {
    if (!only.empty()) {
      const bool selected = std::any_of(only.begin(), only.end(), [&](const std::string& tag) {
        return std::find(c.tags.begin(), c.tags.end(), tag) != c.tags.end() || tag == std::to_string(c.number);
      });
      if (!selected) continue;
    }
    CriterionResult r{c.number, c.title, false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.run(catalog);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "[PASS] " : "[FAIL] ") << r.number << ". " << r.title << " -- " << r.detail;
  return out.str();
}

}  // namespace statemetric::verify
