#pragma once

#include <utility>

#include "statemetric/manifold.hpp"

namespace statemetric {

inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kMinStep = 1e-6;
inline constexpr double kMaxStep = 1e-2;

/// Central-difference tangent vectors fed into the state-derivative metric.
/// Throws StepOutOfRange outside [1e-6, 1e-2].
MetricTensor fd_metric(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial,
                       double gamma, double h = kDefaultStep);

/// Metric from state overlaps only. Along a direction v,
///   q(v) = gamma^2 (1 - |<psi(theta - h v)|psi(theta + h v)>|^2) / (4 h^2),
/// diagonal entries are q(e_m) and off-diagonals come from the polarization
/// identity (q(e_m + e_n) - q(e_m) - q(e_n)) / 2. Independent of global phase.
MetricTensor fidelity_metric(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial,
                             double gamma, double h = kDefaultStep);

struct ComparisonReport {
  double max_abs_diff = 0.0;
  std::pair<Eigen::Index, Eigen::Index> worst_component{0, 0};
  Eigen::MatrixXd diff;  // |g_a - g_b| componentwise
  double tolerance = 0.0;

  bool passed() const { return max_abs_diff <= tolerance; }
};

/// Throws DimensionMismatch or PointMismatch (different parameter points,
/// checked when both tensors carry a point).
ComparisonReport compare(const MetricTensor& a, const MetricTensor& b, double tol);

}  // namespace statemetric
