#include "statemetric/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace statemetric {

std::string format_value(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::DuplicateParameter: return "DuplicateParameter";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::PointMismatch: return "PointMismatch";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::DegenerateSection: return "DegenerateSection";
    case ErrorCode::InsufficientGrid: return "InsufficientGrid";
    case ErrorCode::InvalidSpin: return "InvalidSpin";
    case ErrorCode::BadNormalization: return "BadNormalization";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::BadVariant: return "BadVariant";
    case ErrorCode::SubspaceLeak: return "SubspaceLeak";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
  }
  return "Unknown";
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "state vector must have dimension >= 1");
  }
  const double norm = amplitudes_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::BadNormalization, "state vector has zero or non-finite norm");
  }
  amplitudes_ /= norm;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  }
  return max_abs(m - m.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  }
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianEigen herm_eig(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian,
                "Hermiticity defect " + format_value(defect) + " exceeds tolerance");
  }
  // Average with the adjoint so the solver sees an exactly Hermitian input.
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};

  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) > 1e-8) {
        col *= std::conj(col(r)) / std::abs(col(r));
        col(r) = std::abs(col(r));
        break;
      }
    }
  }
  return out;
}

ComplexMatrix expm_phase(const ComplexMatrix& a, double t) {
  const HermitianEigen eig = herm_eig(a);
  ComplexVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -t * eig.eigenvalues(k));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

namespace {
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operand dimensions " + std::to_string(a.rows()) + " and " +
                    std::to_string(b.rows()) + " differ");
  }
}
}  // namespace

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return a * b + b * a;
}

Complex expectation(const StateVector& psi, const ComplexMatrix& m) {
  if (m.rows() != psi.dim() || m.cols() != psi.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "state dimension " + std::to_string(psi.dim()) + " vs operator dimension " +
                    std::to_string(m.rows()));
  }
  return psi.amplitudes().dot(m * psi.amplitudes());
}

}  // namespace statemetric
