#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "statemetric/circuit.hpp"
#include "statemetric/liealg.hpp"
#include "statemetric/linalg.hpp"

namespace statemetric {

/// Fubini-Study metric g at a parameter point, scaled by gamma^2.
struct MetricTensor {
  Eigen::MatrixXd g;
  double gamma = 1.0;
  std::vector<std::string> parameters;
  Eigen::VectorXd point;

  Eigen::Index dim() const { return g.rows(); }
};

/// State family psi(theta) = U(theta) psi_i together with its algebra, when
/// the generators close.
struct Model {
  std::string id;
  std::optional<LieAlgebraRep> algebra;
  CircuitSpec circuit;
  StateVector initial;
  double gamma = 1.0;
};

ComplexMatrix build_unitary(const CircuitSpec& circuit, const Eigen::VectorXd& theta);

StateVector evolve(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial);

/// Exact tangent vectors d psi / d theta_j, unnormalized.
std::vector<ComplexVector> state_derivatives(const CircuitSpec& circuit, const Eigen::VectorXd& theta,
                                             const StateVector& initial);

/// g_mn = gamma^2 Re(<psi_m|psi_n> - <psi_m|psi><psi|psi_n>), symmetrized.
/// The returned tensor carries no parameter names or point.
MetricTensor metric_from_derivatives(const StateVector& psi, const std::vector<ComplexVector>& derivatives,
                                     double gamma);

/// Derivative path at a point, with names and point filled in.
MetricTensor analytic_metric(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial,
                             double gamma);
MetricTensor analytic_metric(const Model& model, const Eigen::VectorXd& theta);

/// gamma^2/2 <{dA_i, dA_j}> over the initial state with dA = A~ - <A~> and A~
/// from tilde_by_conjugation. Throws UnknownGenerator when the circuit uses a
/// generator outside the algebra.
MetricTensor metric_from_tilde(const LieAlgebraRep& rep, const CircuitSpec& circuit, const Eigen::VectorXd& theta,
                               const StateVector& initial, double gamma);

/// gamma dA~_j |psi_i> for each factor; Re of their Gram matrix is the metric.
std::vector<ComplexVector> local_basis_vectors(const LieAlgebraRep& rep, const CircuitSpec& circuit,
                                               const Eigen::VectorXd& theta, const StateVector& initial,
                                               double gamma);

/// Re <v_i|v_j>
Eigen::MatrixXd real_gram(const std::vector<ComplexVector>& vectors);

/// Smallest eigenvalue of g.
double min_eigenvalue(const MetricTensor& metric);

}  // namespace statemetric
