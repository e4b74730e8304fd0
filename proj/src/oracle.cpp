#include "statemetric/oracle.hpp"

#include <cmath>
#include <sstream>

namespace statemetric {

namespace {

void check_step(double h) {
  if (!(h >= kMinStep && h <= kMaxStep)) {
    std::ostringstream msg;
    msg << "finite-difference step " << h << " outside [" << kMinStep << ", " << kMaxStep << "]";
    throw Error(ErrorCode::StepOutOfRange, msg.str());
  }
}

}  // namespace

MetricTensor fd_metric(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial,
                       double gamma, double h) {
  check_step(h);
  check_point(circuit, theta);
  const StateVector psi = evolve(circuit, theta, initial);
  std::vector<ComplexVector> tangents;
  tangents.reserve(circuit.size());
  for (Eigen::Index m = 0; m < theta.size(); ++m) {
    Eigen::VectorXd plus = theta, minus = theta;
    plus(m) += h;
    minus(m) -= h;
    const ComplexVector forward = build_unitary(circuit, plus) * initial.amplitudes();
    const ComplexVector backward = build_unitary(circuit, minus) * initial.amplitudes();
    tangents.push_back((forward - backward) / (2.0 * h));
  }
  MetricTensor out = metric_from_derivatives(psi, tangents, gamma);
  out.parameters = circuit.parameter_names();
  out.point = theta;
  return out;
}

MetricTensor fidelity_metric(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial,
                             double gamma, double h) {
  check_step(h);
  check_point(circuit, theta);
  const auto quadratic_form = [&](const Eigen::VectorXd& direction) {
    const ComplexVector forward = build_unitary(circuit, theta + h * direction) * initial.amplitudes();
    const ComplexVector backward = build_unitary(circuit, theta - h * direction) * initial.amplitudes();
    const double fidelity = std::norm(backward.dot(forward));
    return gamma * gamma * (1.0 - fidelity) / (4.0 * h * h);
  };

  const Eigen::Index n = theta.size();
  const Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd diagonal(n);
  for (Eigen::Index m = 0; m < n; ++m) diagonal(m) = quadratic_form(basis.col(m));

  MetricTensor out;
  out.gamma = gamma;
  out.parameters = circuit.parameter_names();
  out.point = theta;
  out.g = diagonal.asDiagonal();
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = m + 1; k < n; ++k) {
      const double off = 0.5 * (quadratic_form(basis.col(m) + basis.col(k)) - diagonal(m) - diagonal(k));
      out.g(m, k) = out.g(k, m) = off;
    }
  }
  return out;
}

ComparisonReport compare(const MetricTensor& a, const MetricTensor& b, double tol) {
  if (a.g.rows() != b.g.rows() || a.g.cols() != b.g.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "metrics have different dimensions");
  }
  if (a.point.size() > 0 && b.point.size() > 0 &&
      (a.point.size() != b.point.size() || (a.point - b.point).cwiseAbs().maxCoeff() > 0.0 ||
       a.parameters != b.parameters)) {
    throw Error(ErrorCode::PointMismatch, "metrics were evaluated at different parameter points");
  }
  ComparisonReport report;
  report.tolerance = tol;
  report.diff = (a.g - b.g).cwiseAbs();
  if (report.diff.size() > 0) {
    Eigen::Index r = 0, c = 0;
    report.max_abs_diff = report.diff.maxCoeff(&r, &c);
    report.worst_component = {r, c};
  }
  return report;
}

}  // namespace statemetric
