#pragma once

#include <optional>
#include <string>
#include <vector>

#include "statemetric/circuit.hpp"
#include "statemetric/generators.hpp"

namespace statemetric {

inline constexpr double kClosureTol = 1e-9;
inline constexpr double kJacobiTol = 1e-10;
inline constexpr double kGramConditionLimit = 1e8;

struct ClosureOptions {
  /// Fit and test the brackets only on the leading block that excludes the
  /// top basis level. Needed for truncated ladder operators, where
  /// [x, p] = i I breaks exactly at the last Fock level.
  bool truncation_aware = false;
};

/// Result of fitting [A_i, A_j] = sum_k c_ij^k A_k over a generator set,
/// whether or not the set closes.
struct StructureFit {
  std::size_t count = 0;
  std::vector<Complex> constants;   // c_ij^k at (i * N + j) * N + k
  Eigen::MatrixXd residuals;        // closure residual per (i, j)
  double max_residual = 0.0;
  double gram_condition = 0.0;
  Eigen::Index closure_dim = 0;     // block size the fit was done on

  Complex c(std::size_t i, std::size_t j, std::size_t k) const {
    return constants[(i * count + j) * count + k];
  }
  bool closed() const { return max_residual <= kClosureTol; }
};

/// Fits structure constants by least squares against the Gram matrix of the
/// vectorized generators. Only i < j is solved; c_ji^k = -c_ij^k.
/// Throws DependentGenerators when the Gram condition number reaches 1e8.
StructureFit fit_structure_constants(const GeneratorSet& generators, const ClosureOptions& options = {});

/// max |sum_m c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l|
double jacobi_residual(const StructureFit& fit);

/// Closed Lie algebra in a matrix representation.
class LieAlgebraRep {
 public:
  const GeneratorSet& generators() const { return *generators_; }
  std::shared_ptr<const GeneratorSet> generators_ptr() const { return generators_; }
  std::size_t size() const { return fit_.count; }
  Eigen::Index dim() const { return generators_->dim(); }

  Complex c(std::size_t i, std::size_t j, std::size_t k) const { return fit_.c(i, j, k); }
  const StructureFit& fit() const { return fit_; }
  double max_closure_residual() const { return fit_.max_residual; }
  double jacobi_residual() const { return jacobi_; }
  /// max |Re c_ij^k|; zero for Hermitian generators of a real Lie algebra.
  double purity_defect() const;

  bool truncation_aware() const { return options_.truncation_aware; }
  /// Leading block on which brackets hold.
  Eigen::Index closure_dim() const { return fit_.closure_dim; }
  /// Leading block on which operator identities derived by exponentiation
  /// (conjugations) are trusted. Half the dimension in truncation-aware mode.
  Eigen::Index comparison_dim() const;

  /// Project a matrix onto the closure block (identity when not truncated).
  ComplexMatrix restrict_to_closure(const ComplexMatrix& m) const;

 private:
  friend LieAlgebraRep extract_structure_constants(std::shared_ptr<const GeneratorSet>, const ClosureOptions&);
  LieAlgebraRep(std::shared_ptr<const GeneratorSet> generators, StructureFit fit, ClosureOptions options);

  std::shared_ptr<const GeneratorSet> generators_;
  StructureFit fit_;
  ClosureOptions options_;
  double jacobi_ = 0.0;
};

/// Throws NotClosed (closure residual above 1e-9) or DependentGenerators.
LieAlgebraRep extract_structure_constants(std::shared_ptr<const GeneratorSet> generators,
                                          const ClosureOptions& options = {});

/// ad_m with (ad_m)_{k,l} = c_{m,l}^k, so that
/// exp(i t A_m) A_l exp(-i t A_m) = sum_k exp(i t ad_m)_{k,l} A_k.
struct AdjointRep {
  std::vector<ComplexMatrix> matrices;

  explicit AdjointRep(const LieAlgebraRep& rep);
  /// exp(i t ad_m)
  ComplexMatrix group_action(std::size_t m, double t) const;
};

// --- bracket validation -----------------------------------------------------

struct AlgebraKind {
  enum class Family { Heisenberg, So3, Generic };
  Family family = Family::Generic;
  int n = 0;  // Heisenberg degree: generators A_1..A_n, B_1..B_n, C

  static AlgebraKind heisenberg(int n) { return {Family::Heisenberg, n}; }
  static AlgebraKind so3() { return {Family::So3, 0}; }
  static AlgebraKind generic() { return {Family::Generic, 0}; }
  std::string label() const;
};

struct BracketCheck {
  std::string label;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

struct ValidationReport {
  AlgebraKind kind;
  std::vector<BracketCheck> checks;
  bool passed() const;
};

ValidationReport validate_algebra(const LieAlgebraRep& rep, const AlgebraKind& kind);

/// so3 or heisenberg(n) when the generator order satisfies those brackets, else generic.
AlgebraKind detect_kind(const LieAlgebraRep& rep);

// --- conjugated generators --------------------------------------------------

/// For each factor j, W_j^dagger A_j W_j with W_j the product of the factors after j.
std::vector<ComplexMatrix> tilde_by_conjugation(const CircuitSpec& circuit, const Eigen::VectorXd& theta);

/// The same operators computed in the adjoint representation:
/// v_j = exp(i t_N ad_N) ... exp(i t_{j+1} ad_{j+1}) e_j and sum_k (v_j)_k A_k.
/// Throws UnknownGenerator if a circuit generator is not in the algebra.
std::vector<ComplexMatrix> tilde_by_adjoint(const LieAlgebraRep& rep, const CircuitSpec& circuit,
                                            const Eigen::VectorXd& theta);

/// Coefficient vectors v_j of tilde_by_adjoint in the algebra basis.
std::vector<ComplexVector> tilde_coefficients(const LieAlgebraRep& rep, const CircuitSpec& circuit,
                                              const Eigen::VectorXd& theta);

/// max over factors of the entrywise difference on the comparison block.
double max_tilde_deviation(const LieAlgebraRep& rep, const std::vector<ComplexMatrix>& a,
                           const std::vector<ComplexMatrix>& b);

}  // namespace statemetric
