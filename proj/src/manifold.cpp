#include "statemetric/manifold.hpp"

namespace statemetric {

namespace {

void require_state_dim(const CircuitSpec& circuit, const StateVector& initial) {
  if (initial.dim() != circuit.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "initial state dimension " + std::to_string(initial.dim()) +
                                                  " vs generator dimension " + std::to_string(circuit.dim()));
  }
}

void require_in_algebra(const LieAlgebraRep& rep, const CircuitSpec& circuit) {
  for (const auto& f : circuit.factors()) {
    if (!rep.generators().contains(f.generator)) {
      throw Error(ErrorCode::UnknownGenerator, "generator '" + f.generator + "' is not part of the algebra");
    }
  }
}

std::vector<ComplexMatrix> factor_unitaries(const CircuitSpec& circuit, const Eigen::VectorXd& theta) {
  std::vector<ComplexMatrix> out;
  out.reserve(circuit.size());
  for (std::size_t j = 0; j < circuit.size(); ++j) {
    out.push_back(expm_phase(circuit.factor_matrix(j), theta(static_cast<Eigen::Index>(j))));
  }
  return out;
}

}  // namespace

ComplexMatrix build_unitary(const CircuitSpec& circuit, const Eigen::VectorXd& theta) {
  check_point(circuit, theta);
  ComplexMatrix u = ComplexMatrix::Identity(circuit.dim(), circuit.dim());
  for (const ComplexMatrix& f : factor_unitaries(circuit, theta)) u = u * f;
  return u;
}

StateVector evolve(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial) {
  require_state_dim(circuit, initial);
  return StateVector(build_unitary(circuit, theta) * initial.amplitudes());
}

std::vector<ComplexVector> state_derivatives(const CircuitSpec& circuit, const Eigen::VectorXd& theta,
                                             const StateVector& initial) {
  require_state_dim(circuit, initial);
  check_point(circuit, theta);
  const std::size_t n = circuit.size();
  const auto factors = factor_unitaries(circuit, theta);

  // suffix[j] = E_j E_{j+1} ... E_N psi_i
  std::vector<ComplexVector> suffix(n + 1);
  suffix[n] = initial.amplitudes();
  for (std::size_t j = n; j-- > 0;) suffix[j] = factors[j] * suffix[j + 1];

  std::vector<ComplexVector> out(n);
  ComplexMatrix prefix = ComplexMatrix::Identity(circuit.dim(), circuit.dim());
  const Complex minus_i{0.0, -1.0};
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = prefix * (minus_i * (circuit.factor_matrix(j) * suffix[j]));
    prefix = prefix * factors[j];
  }
  return out;
}

MetricTensor metric_from_derivatives(const StateVector& psi, const std::vector<ComplexVector>& derivatives,
                                     double gamma) {
  const auto n = static_cast<Eigen::Index>(derivatives.size());
  std::vector<Complex> overlap(derivatives.size());
  for (std::size_t m = 0; m < derivatives.size(); ++m) {
    if (derivatives[m].size() != psi.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "tangent vector dimension differs from state");
    }
    overlap[m] = psi.amplitudes().dot(derivatives[m]);  // <psi|psi_m>
  }
  MetricTensor out;
  out.gamma = gamma;
  out.g.resize(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto um = static_cast<std::size_t>(m), uk = static_cast<std::size_t>(k);
      const Complex value = derivatives[um].dot(derivatives[uk]) - std::conj(overlap[um]) * overlap[uk];
      out.g(m, k) = gamma * gamma * value.real();
    }
  }
  out.g = 0.5 * (out.g + out.g.transpose()).eval();
  return out;
}

MetricTensor analytic_metric(const CircuitSpec& circuit, const Eigen::VectorXd& theta, const StateVector& initial,
                             double gamma) {
  const StateVector psi = evolve(circuit, theta, initial);
  MetricTensor out = metric_from_derivatives(psi, state_derivatives(circuit, theta, initial), gamma);
  out.parameters = circuit.parameter_names();
  out.point = theta;
  return out;
}

MetricTensor analytic_metric(const Model& model, const Eigen::VectorXd& theta) {
  return analytic_metric(model.circuit, theta, model.initial, model.gamma);
}

std::vector<ComplexVector> local_basis_vectors(const LieAlgebraRep& rep, const CircuitSpec& circuit,
                                               const Eigen::VectorXd& theta, const StateVector& initial,
                                               double gamma) {
  require_in_algebra(rep, circuit);
  require_state_dim(circuit, initial);
  const auto tildes = tilde_by_conjugation(circuit, theta);
  std::vector<ComplexVector> out;
  out.reserve(tildes.size());
  for (const ComplexMatrix& t : tildes) {
    const ComplexVector applied = t * initial.amplitudes();
    const Complex mean = initial.amplitudes().dot(applied);
    out.push_back(gamma * (applied - mean * initial.amplitudes()));
  }
  return out;
}

MetricTensor metric_from_tilde(const LieAlgebraRep& rep, const CircuitSpec& circuit, const Eigen::VectorXd& theta,
                               const StateVector& initial, double gamma) {
  require_in_algebra(rep, circuit);
  require_state_dim(circuit, initial);
  const auto tildes = tilde_by_conjugation(circuit, theta);
  const auto n = static_cast<Eigen::Index>(tildes.size());
  const Eigen::Index d = circuit.dim();

  std::vector<ComplexMatrix> deviations;
  deviations.reserve(tildes.size());
  for (const ComplexMatrix& t : tildes) {
    const Complex mean = expectation(initial, t);
    deviations.push_back(t - mean.real() * ComplexMatrix::Identity(d, d));
  }

  MetricTensor out;
  out.gamma = gamma;
  out.parameters = circuit.parameter_names();
  out.point = theta;
  out.g.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const Complex value = expectation(initial, anticommutator(deviations[ui], deviations[uj]));
      out.g(i, j) = out.g(j, i) = 0.5 * gamma * gamma * value.real();
    }
  }
  return out;
}

Eigen::MatrixXd real_gram(const std::vector<ComplexVector>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = vectors[static_cast<std::size_t>(i)].dot(vectors[static_cast<std::size_t>(j)]).real();
  return g;
}

double min_eigenvalue(const MetricTensor& metric) {
  if (metric.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric.g, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace statemetric
