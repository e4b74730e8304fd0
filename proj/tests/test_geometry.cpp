#include <doctest.h>

#include <cmath>
#include <numbers>

#include "statemetric/geometry.hpp"
#include "statemetric/models.hpp"

using namespace statemetric;

namespace {

std::shared_ptr<const Model> share(Model m) { return std::make_shared<const Model>(std::move(m)); }

GridSpec grid2(const std::string& p, double p0, double p1, int np, const std::string& q, double q0, double q1, int nq,
               Eigen::VectorXd base) {
  return GridSpec{{{p, p0, p1, np}, {q, q0, q1, nq}}, std::move(base)};
}

}  // namespace

TEST_CASE("1x1 grid reproduces the point metric") {
  auto m = share(models::spin_model({1.0, 0.0, 1.0}));
  Eigen::VectorXd base(3);
  base << 0.3, 0.8, -0.2;
  const MetricField field = metric_field(m, GridSpec{{{"theta2", 0.8, 0.8, 1}}, base});
  REQUIRE(field.tensors.size() == 1);
  CHECK((field.tensors[0].g - analytic_metric(*m, base).g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grid node order is row-major with the last axis fastest") {
  auto m = share(models::spin_model({0.5, 0.5, 1.0}));
  const MetricField field = metric_field(m, grid2("theta1", 0, 1, 2, "theta2", 0, 2, 3, Eigen::VectorXd::Zero(3)));
  REQUIRE(field.nodes.size() == 6);
  CHECK(field.nodes[1](0) == 0.0);
  CHECK(field.nodes[1](1) == 1.0);
  CHECK(field.nodes[3](0) == 1.0);
  CHECK(field.nodes[3](1) == 0.0);
}

TEST_CASE("grid errors") {
  auto m = share(models::spin_model({0.5, 0.5, 1.0}));
  CHECK_THROWS_AS(metric_field(m, GridSpec{{}, Eigen::VectorXd::Zero(3)}), Error);
  CHECK_THROWS_AS(metric_field(m, GridSpec{{{"theta1", 0, 1, 0}}, Eigen::VectorXd::Zero(3)}), Error);
  CHECK_THROWS_AS(metric_field(m, GridSpec{{{"nope", 0, 1, 2}}, Eigen::VectorXd::Zero(3)}), Error);
  const MetricField small = metric_field(m, grid2("theta1", 0, 1, 2, "theta2", 0.5, 1, 3, Eigen::VectorXd::Zero(3)));
  CHECK_THROWS_AS(classify(small), Error);
}

TEST_CASE("Heisenberg metric is constant on a 5x5 grid") {
  auto osc = share(models::oscillator_model({1.0, 1.0, 0, 64, 1.0, 1.0}));
  const MetricField field = metric_field(osc, grid2("theta", -0.5, 0.5, 5, "phi", -0.5, 0.5, 5, Eigen::VectorXd::Zero(2)));
  REQUIRE(field.tensors.size() == 25);
  for (const auto& t : field.tensors) CHECK((t.g - field.tensors[0].g).cwiseAbs().maxCoeff() <= 1e-9);
  const CurvatureReport report = classify(field);
  CHECK(report.classification.kind == Classification::Kind::Flat);
  CHECK(report.classification.label() == "flat");
}

TEST_CASE("spin-1/2 sphere sweep has g11 / sin^2 constant") {
  auto m = share(models::spin_model({0.5, 0.5, 1.0}));
  const MetricField field = metric_field(m, GridSpec{{{"theta2", 0.1, std::numbers::pi - 0.1, 30}}, Eigen::VectorXd::Zero(3)});
  for (std::size_t k = 0; k < field.nodes.size(); ++k) {
    const double s = std::sin(field.nodes[k](1));
    CHECK(std::abs(field.tensors[k].g(0, 0) / (s * s) - 0.25) <= 1e-10);
  }
}

TEST_CASE("rank analysis") {
  const Model m = models::spin_model({0.5, 0.5, 1.0});
  Eigen::VectorXd t(3);
  t << 0.2, 1.1, 0.4;
  const RankInfo info = rank_analysis(analytic_metric(m, t));
  CHECK(info.rank == 2);
  REQUIRE(info.null_directions.cols() == 1);
  // Kernel of the sphere metric: the theta3 direction combined with theta1 via cos theta2.
  const Eigen::VectorXd v = info.null_directions.col(0);
  CHECK((analytic_metric(m, t).g * v).norm() <= 1e-10);

  MetricTensor zero;
  zero.g = Eigen::MatrixXd::Zero(3, 3);
  CHECK(rank_analysis(zero).rank == 0);

  // (|1> + |-1>)/sqrt2 is the m = 0 eigenstate of S_y, so its orbit is a
  // sphere and the metric has rank 2 at every point.
  const double r = 1.0 / std::sqrt(2.0);
  const Model sup = models::spin_model({1.0, std::vector<Complex>{r, 0.0, r}, 1.0});
  Eigen::VectorXd p(3);
  p << 0.3, 0.7, 1.1;
  CHECK(rank_analysis(analytic_metric(sup, p)).rank == 2);
  const Model generic = models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.0});
  CHECK(rank_analysis(analytic_metric(generic, p)).rank == 3);
}

TEST_CASE("Gaussian curvature examples") {
  Eigen::VectorXd t(3);
  t << 0.3, 1.2, 0.0;
  const Model half = models::spin_model({0.5, 0.5, 1.0});
  CHECK(std::abs(gauss_curvature(half, t, {0, 1}) - 4.0) <= 1e-3);

  for (double gamma : {1.0, 1.7}) {
    const Model one = models::spin_model({1.0, 0.0, gamma});
    CHECK(std::abs(gauss_curvature(one, t, {0, 1}) - 1.0 / (gamma * gamma)) <= 1e-3);
  }

  const Model osc = models::oscillator_model({1.0, 1.0, 0, 64, 1.0, 1.0});
  CHECK(std::abs(gauss_curvature(osc, Eigen::VectorXd::Zero(2), {0, 1})) <= 1e-6);

  try {
    gauss_curvature(half, t, {0, 2});
    FAIL("expected DegenerateSection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSection);
  }
}

TEST_CASE("halving the curvature stencil keeps K within tolerance") {
  const Model one = models::spin_model({1.0, 1.0, 1.0});
  Eigen::VectorXd t(3);
  t << 0.1, 0.9, 0.0;
  const double k1 = gauss_curvature(one, t, {0, 1}, 1e-3);
  const double k2 = gauss_curvature(one, t, {0, 1}, 5e-4);
  CHECK(std::abs(k1 - k2) <= 4e-3);
}

TEST_CASE("scalar curvature of a full-rank metric is finite; degenerate metrics are rejected") {
  const Model generic = models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.0});
  Eigen::VectorXd p(3);
  p << 0.3, 0.7, 1.1;
  CHECK(std::isfinite(scalar_curvature(generic, p)));
  CHECK_THROWS_AS(scalar_curvature(models::spin_model({0.5, 0.5, 1.0}), p), Error);
}

TEST_CASE("spin eigenstates classify as spheres with the radius law") {
  for (double gamma : {1.0, 2.0}) {
    for (auto [s, m] : {std::pair{0.5, 0.5}, std::pair{1.0, 0.0}, std::pair{1.5, -0.5}}) {
      auto model = share(models::spin_model({s, m, gamma}));
      Eigen::VectorXd base = Eigen::VectorXd::Zero(3);
      const MetricField field = metric_field(model, grid2("theta1", -0.5, 0.5, 3, "theta2", 0.6, 2.4, 4, base));
      const CurvatureReport report = classify(field);
      REQUIRE(report.classification.kind == Classification::Kind::Sphere);
      const double expected = gamma / std::sqrt(2.0) * std::sqrt(s * (s + 1) - m * m);
      CHECK(std::abs(report.classification.radius - expected) <= 1e-6 * std::max(1.0, expected));
      CHECK(report.rank == 2);
    }
  }
}

TEST_CASE("S_y eigenstate superposition is a sphere of radius gamma") {
  const double r = 1.0 / std::sqrt(2.0);
  auto sup = share(models::spin_model({1.0, std::vector<Complex>{r, 0.0, r}, 1.0}));
  Eigen::VectorXd base(3);
  base << 0.3, 0.7, 1.1;
  GridSpec grid{{{"theta1", 0.2, 0.4, 3}, {"theta2", 0.6, 0.8, 3}, {"theta3", 1.0, 1.2, 3}}, base};
  const CurvatureReport report = classify(metric_field(sup, grid));
  REQUIRE(report.classification.kind == Classification::Kind::Sphere);
  CHECK(std::abs(report.classification.radius - 1.0) <= 1e-6);
}

TEST_CASE("generic three-parameter state is neither flat nor a sphere") {
  auto sup = share(models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.0}));
  Eigen::VectorXd base(3);
  base << 0.3, 0.7, 1.1;
  GridSpec grid{{{"theta1", 0.2, 0.4, 3}, {"theta2", 0.6, 0.8, 3}, {"theta3", 1.0, 1.2, 3}}, base};
  const CurvatureReport report = classify(metric_field(sup, grid));
  CHECK(report.classification.kind == Classification::Kind::Generic);
  CHECK(report.rank == 3);
  REQUIRE(report.scalar_curvature.has_value());
}
