#include <doctest.h>

#include <cmath>
#include <numbers>

#include "statemetric/manifold.hpp"
#include "statemetric/models.hpp"
#include "statemetric/oracle.hpp"
#include "test_support.hpp"

using namespace statemetric;

TEST_CASE("step range is enforced") {
  const Model m = models::spin_model({0.5, 0.5, 1.0});
  const Eigen::VectorXd t = Eigen::VectorXd::Constant(3, 0.3);
  CHECK_THROWS_AS(fd_metric(m.circuit, t, m.initial, 1.0, 1e-7), Error);
  CHECK_THROWS_AS(fd_metric(m.circuit, t, m.initial, 1.0, 0.1), Error);
  CHECK_THROWS_AS(fidelity_metric(m.circuit, t, m.initial, 1.0, 0.0), Error);
  CHECK_NOTHROW(fd_metric(m.circuit, t, m.initial, 1.0, kMinStep));
  CHECK_NOTHROW(fd_metric(m.circuit, t, m.initial, 1.0, kMaxStep));
}

TEST_CASE("finite-difference metric on the spin-1/2 sphere") {
  const Model m = models::spin_model({0.5, 0.5, 1.0});
  Eigen::VectorXd t(3);
  t << 0.0, std::numbers::pi / 2, 0.0;
  const MetricTensor g = fd_metric(m.circuit, t, m.initial, 1.0);
  CHECK(std::abs(g.g(0, 0) - 0.25) <= 1e-7);
  CHECK(std::abs(g.g(1, 1) - 0.25) <= 1e-7);
}

TEST_CASE("finite-difference metric for the first excited oscillator level") {
  const Model osc = models::oscillator_model({1.0, 1.0, 1, 64, 1.0, 1.0});
  const MetricTensor g = fd_metric(osc.circuit, Eigen::VectorXd::Zero(2), osc.initial, 1.0);
  CHECK(std::abs(g.g(0, 0) - 1.5) <= 1e-6);
  CHECK(std::abs(g.g(1, 1) - 1.5) <= 1e-6);
}

TEST_CASE("fidelity metric examples") {
  const Model m = models::spin_model({1.0, 1.0, 1.0});
  std::mt19937 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd t = testing_support::random_point(rng, 3, 0.2, 2.9);
    const MetricTensor f = fidelity_metric(m.circuit, t, m.initial, 1.0);
    // Fiber direction of an eigenstate.
    CHECK(std::abs(f.g(2, 2)) <= 1e-7);
    // R^2 = (s(s+1) - m^2) / 2 = 1/2 for s = m = 1.
    CHECK(std::abs(f.g(1, 1) - 0.5) <= 1e-6);
    CHECK((f.g - f.g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("fidelity and finite-difference oracles agree") {
  std::mt19937 rng(42);
  std::vector<Model> models_;
  models_.push_back(models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.0}));
  models_.push_back(models::spin_model({2.0, 1.0, 1.4}));
  models_.push_back(models::oscillator_model({1.0, 1.0, 2, 64, 1.0, 1.0}));
  for (const Model& m : models_) {
    for (int trial = 0; trial < 3; ++trial) {
      const Eigen::VectorXd t = testing_support::random_point(rng, static_cast<Eigen::Index>(m.circuit.size()), -1.0, 1.0);
      const MetricTensor fd = fd_metric(m.circuit, t, m.initial, m.gamma);
      const MetricTensor fid = fidelity_metric(m.circuit, t, m.initial, m.gamma);
      CHECK(compare(fd, fid, 1e-5).passed());
    }
  }
}

TEST_CASE("fidelity metric is phase invariant") {
  const Model m = models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.0});
  Eigen::VectorXd t(3);
  t << 0.3, 0.7, 1.1;
  const MetricTensor a = fidelity_metric(m.circuit, t, m.initial, 1.0);
  // Phases that are exact in floating point leave the result bitwise unchanged.
  for (const Complex phase : {Complex(0, 1), Complex(-1, 0), Complex(0, -1)}) {
    const MetricTensor b = fidelity_metric(m.circuit, t, StateVector(phase * m.initial.amplitudes()), 1.0);
    CHECK((a.g - b.g).cwiseAbs().maxCoeff() == 0.0);
  }
  // A general phase only perturbs the overlaps at rounding level, amplified by 1/(4 h^2).
  const MetricTensor c = fidelity_metric(m.circuit, t, StateVector(std::polar(1.0, 1.234) * m.initial.amplitudes()), 1.0);
  CHECK((a.g - c.g).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("central differences converge at second order") {
  const Model m = models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.0});
  Eigen::VectorXd t(3);
  t << 0.3, 0.7, 1.1;
  const MetricTensor exact = analytic_metric(m, t);
  std::vector<double> logh, loge;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    logh.push_back(std::log10(h));
    loge.push_back(std::log10(compare(exact, fd_metric(m.circuit, t, m.initial, 1.0, h), 1.0).max_abs_diff));
  }
  const double mean_x = (logh[0] + logh[1] + logh[2]) / 3, mean_y = (loge[0] + loge[1] + loge[2]) / 3;
  double num = 0, den = 0;
  for (int i = 0; i < 3; ++i) {
    num += (logh[i] - mean_x) * (loge[i] - mean_y);
    den += (logh[i] - mean_x) * (logh[i] - mean_x);
  }
  CHECK(std::abs(num / den - 2.0) <= 0.3);
}

TEST_CASE("compare reports the worst component") {
  const Model m = models::spin_model({1.0, 0.0, 1.0});
  Eigen::VectorXd t(3);
  t << 0.2, 0.9, 0.4;
  const MetricTensor g = analytic_metric(m, t);
  const auto same = compare(g, g, 0.0);
  CHECK(same.max_abs_diff == 0.0);
  CHECK(same.passed());

  CHECK(compare(g, fd_metric(m.circuit, t, m.initial, 1.0, 1e-4), 1e-6).passed());
  const auto coarse = compare(g, fd_metric(m.circuit, t, m.initial, 1.0, 1e-2), 1e-10);
  CHECK_FALSE(coarse.passed());
  CHECK(coarse.diff(coarse.worst_component.first, coarse.worst_component.second) == coarse.max_abs_diff);
  CHECK(coarse.worst_component.first < 3);
  CHECK(coarse.max_abs_diff >= 0.0);
}

TEST_CASE("compare rejects mismatched tensors") {
  const Model m = models::spin_model({0.5, 0.5, 1.0});
  const MetricTensor a = analytic_metric(m, Eigen::VectorXd::Constant(3, 0.1));
  const MetricTensor b = analytic_metric(m, Eigen::VectorXd::Constant(3, 0.2));
  try {
    compare(a, b, 1.0);
    FAIL("expected PointMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointMismatch);
  }
  MetricTensor small;
  small.g = Eigen::MatrixXd::Zero(2, 2);
  try {
    compare(a, small, 1.0);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}
