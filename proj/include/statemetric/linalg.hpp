#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "statemetric/error.hpp"

namespace statemetric {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

/// Normalized pure state. Construction normalizes the amplitudes.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

/// max |M - M^dagger| over all entries.
double hermiticity_defect(const ComplexMatrix& m);
/// max |U^dagger U - I| over all entries.
double unitarity_defect(const ComplexMatrix& u);
/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);

struct HermitianEigen {
  Eigen::VectorXd eigenvalues;  // ascending
  ComplexMatrix eigenvectors;   // columns, each phase-fixed
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues come out ascending;
/// each eigenvector is rotated so its first non-negligible component is real
/// and positive. Throws NotHermitian beyond kHermitianTol.
HermitianEigen herm_eig(const ComplexMatrix& m);

/// exp(-i t A) for Hermitian A, through the eigendecomposition of A.
ComplexMatrix expm_phase(const ComplexMatrix& a, double t);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// <psi|M|psi>
Complex expectation(const StateVector& psi, const ComplexMatrix& m);

}  // namespace statemetric
