#include "statemetric/liealg.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace statemetric {

namespace {

ComplexMatrix leading_block(const ComplexMatrix& m, Eigen::Index n) {
  return m.topLeftCorner(n, n);
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

}  // namespace

StructureFit fit_structure_constants(const GeneratorSet& generators, const ClosureOptions& options) {
  const std::size_t n = generators.size();
  const Eigen::Index d = generators.dim();
  StructureFit fit;
  fit.count = n;
  fit.closure_dim = (options.truncation_aware && d > 1) ? d - 1 : d;
  fit.constants.assign(n * n * n, Complex{0.0, 0.0});
  fit.residuals = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  std::vector<ComplexMatrix> blocks;
  blocks.reserve(n);
  for (std::size_t k = 0; k < n; ++k) blocks.push_back(leading_block(generators.matrix(k), fit.closure_dim));

  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix gram(ni, ni);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = frobenius_inner(blocks[a], blocks[b]);
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram_eig(gram, Eigen::EigenvaluesOnly);
  const double lo = gram_eig.eigenvalues().minCoeff();
  const double hi = gram_eig.eigenvalues().maxCoeff();
  fit.gram_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(fit.gram_condition < kGramConditionLimit)) {
    throw Error(ErrorCode::DependentGenerators,
                "Gram matrix of generators is singular or ill-conditioned (condition " +
                    format_value(fit.gram_condition) + ")");
  }
  const Eigen::LDLT<ComplexMatrix> solver(gram);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const ComplexMatrix bracket =
          leading_block(commutator(generators.matrix(i), generators.matrix(j)), fit.closure_dim);
      ComplexVector rhs(ni);
      for (std::size_t a = 0; a < n; ++a) rhs(static_cast<Eigen::Index>(a)) = frobenius_inner(blocks[a], bracket);
      const ComplexVector coeffs = solver.solve(rhs);

      ComplexMatrix remainder = bracket;
      for (std::size_t k = 0; k < n; ++k) {
        const Complex ck = coeffs(static_cast<Eigen::Index>(k));
        fit.constants[(i * n + j) * n + k] = ck;
        fit.constants[(j * n + i) * n + k] = -ck;
        remainder -= ck * blocks[k];
      }
      const double r = max_abs(remainder);
      fit.residuals(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r;
      fit.residuals(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = r;
      fit.max_residual = std::max(fit.max_residual, r);
    }
  }
  return fit;
}

double jacobi_residual(const StructureFit& fit) {
  const std::size_t n = fit.count;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Complex sum{0.0, 0.0};
          for (std::size_t m = 0; m < n; ++m) {
            sum += fit.c(i, j, m) * fit.c(m, k, l) + fit.c(j, k, m) * fit.c(m, i, l) +
                   fit.c(k, i, m) * fit.c(m, j, l);
          }
          worst = std::max(worst, std::abs(sum));
        }
  return worst;
}

LieAlgebraRep::LieAlgebraRep(std::shared_ptr<const GeneratorSet> generators, StructureFit fit,
                             ClosureOptions options)
    : generators_(std::move(generators)), fit_(std::move(fit)), options_(options) {
  jacobi_ = statemetric::jacobi_residual(fit_);
}

double LieAlgebraRep::purity_defect() const {
  double worst = 0.0;
  for (const Complex& c : fit_.constants) worst = std::max(worst, std::abs(c.real()));
  return worst;
}

Eigen::Index LieAlgebraRep::comparison_dim() const {
  return options_.truncation_aware ? std::max<Eigen::Index>(1, dim() / 2) : dim();
}

ComplexMatrix LieAlgebraRep::restrict_to_closure(const ComplexMatrix& m) const {
  return leading_block(m, closure_dim());
}

LieAlgebraRep extract_structure_constants(std::shared_ptr<const GeneratorSet> generators,
                                          const ClosureOptions& options) {
  if (!generators) {
    throw Error(ErrorCode::DimensionMismatch, "no generators supplied");
  }
  StructureFit fit = fit_structure_constants(*generators, options);
  if (!fit.closed()) {
    std::size_t wi = 0, wj = 0;
    fit.residuals.maxCoeff(&wi, &wj);
    throw Error(ErrorCode::NotClosed, "commutator [" + (*generators)[wi].name + ", " + (*generators)[wj].name +
                                          "] leaves the span (residual " + format_value(fit.max_residual) + ")");
  }
  return LieAlgebraRep(std::move(generators), std::move(fit), options);
}

AdjointRep::AdjointRep(const LieAlgebraRep& rep) {
  const std::size_t n = rep.size();
  const auto ni = static_cast<Eigen::Index>(n);
  matrices.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    ComplexMatrix ad(ni, ni);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        ad(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = rep.c(m, l, k);
    matrices.push_back(std::move(ad));
  }
}

ComplexMatrix AdjointRep::group_action(std::size_t m, double t) const {
  const ComplexMatrix scaled = Complex{0.0, t} * matrices.at(m);
  return scaled.exp();
}

// --- validation -------------------------------------------------------------

std::string AlgebraKind::label() const {
  switch (family) {
    case Family::Heisenberg: return "heisenberg(" + std::to_string(n) + ")";
    case Family::So3: return "so3";
    case Family::Generic: return "generic";
  }
  return "generic";
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BracketCheck& c) { return c.passed(); });
}

ValidationReport validate_algebra(const LieAlgebraRep& rep, const AlgebraKind& kind) {
  ValidationReport report;
  report.kind = kind;
  const GeneratorSet& gens = rep.generators();
  const Complex i_unit{0.0, 1.0};
  const auto bracket_check = [&](std::string label, const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    report.checks.push_back({std::move(label), max_abs(rep.restrict_to_closure(lhs - rhs)), kClosureTol});
  };
  const auto count_check = [&](std::size_t expected) {
    if (gens.size() != expected) {
      report.checks.push_back({"generator count " + std::to_string(gens.size()) + " != " + std::to_string(expected),
                               std::numeric_limits<double>::infinity(), kClosureTol});
      return false;
    }
    return true;
  };

  if (kind.family == AlgebraKind::Family::So3 && count_check(3)) {
    for (std::size_t a = 0; a < 3; ++a) {
      const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
      bracket_check("[" + gens[a].name + "," + gens[b].name + "] = i " + gens[c].name,
                    commutator(gens.matrix(a), gens.matrix(b)), i_unit * gens.matrix(c));
    }
  } else if (kind.family == AlgebraKind::Family::Heisenberg && kind.n >= 1 &&
             count_check(static_cast<std::size_t>(2 * kind.n + 1))) {
    const auto n = static_cast<std::size_t>(kind.n);
    const ComplexMatrix& central = gens.matrix(2 * n);
    const ComplexMatrix zero = ComplexMatrix::Zero(gens.dim(), gens.dim());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        const ComplexMatrix expected = (j == l) ? ComplexMatrix(i_unit * central) : zero;
        bracket_check("[" + gens[j].name + "," + gens[n + l].name + "] = " + (j == l ? "i " + gens[2 * n].name : "0"),
                      commutator(gens.matrix(j), gens.matrix(n + l)), expected);
        if (l > j) {
          bracket_check("[" + gens[j].name + "," + gens[l].name + "] = 0", commutator(gens.matrix(j), gens.matrix(l)),
                        zero);
          bracket_check("[" + gens[n + j].name + "," + gens[n + l].name + "] = 0",
                        commutator(gens.matrix(n + j), gens.matrix(n + l)), zero);
        }
      }
      bracket_check("[" + gens[j].name + "," + gens[2 * n].name + "] = 0", commutator(gens.matrix(j), central), zero);
      bracket_check("[" + gens[n + j].name + "," + gens[2 * n].name + "] = 0", commutator(gens.matrix(n + j), central),
                    zero);
    }
  } else if (kind.family == AlgebraKind::Family::Heisenberg && kind.n < 1) {
    report.checks.push_back({"heisenberg degree must be >= 1", std::numeric_limits<double>::infinity(), kClosureTol});
  }
  report.checks.push_back({"Jacobi identity", rep.jacobi_residual(), kJacobiTol});
  return report;
}

AlgebraKind detect_kind(const LieAlgebraRep& rep) {
  if (rep.size() == 3 && validate_algebra(rep, AlgebraKind::so3()).passed()) return AlgebraKind::so3();
  if (rep.size() >= 3 && rep.size() % 2 == 1) {
    const auto kind = AlgebraKind::heisenberg(static_cast<int>(rep.size() / 2));
    if (validate_algebra(rep, kind).passed()) return kind;
  }
  return AlgebraKind::generic();
}

// --- conjugated generators --------------------------------------------------

std::vector<ComplexMatrix> tilde_by_conjugation(const CircuitSpec& circuit, const Eigen::VectorXd& theta) {
  check_point(circuit, theta);
  const std::size_t n = circuit.size();
  std::vector<ComplexMatrix> out(n);
  ComplexMatrix suffix = ComplexMatrix::Identity(circuit.dim(), circuit.dim());
  for (std::size_t j = n; j-- > 0;) {
    const ComplexMatrix& a = circuit.factor_matrix(j);
    ComplexMatrix tilde = suffix.adjoint() * a * suffix;
    out[j] = 0.5 * (tilde + tilde.adjoint());
    suffix = expm_phase(a, theta(static_cast<Eigen::Index>(j))) * suffix;
  }
  return out;
}

std::vector<ComplexVector> tilde_coefficients(const LieAlgebraRep& rep, const CircuitSpec& circuit,
                                              const Eigen::VectorXd& theta) {
  check_point(circuit, theta);
  const std::size_t n = circuit.size();
  std::vector<std::size_t> index(n);
  for (std::size_t j = 0; j < n; ++j) index[j] = rep.generators().index_of(circuit.factors()[j].generator);

  const AdjointRep adjoint(rep);
  std::vector<ComplexMatrix> actions(n);
  for (std::size_t k = 0; k < n; ++k) actions[k] = adjoint.group_action(index[k], theta(static_cast<Eigen::Index>(k)));

  const auto size = static_cast<Eigen::Index>(rep.size());
  std::vector<ComplexVector> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVector v = ComplexVector::Zero(size);
    v(static_cast<Eigen::Index>(index[j])) = 1.0;
    for (std::size_t k = j + 1; k < n; ++k) v = actions[k] * v;
    out[j] = std::move(v);
  }
  return out;
}

std::vector<ComplexMatrix> tilde_by_adjoint(const LieAlgebraRep& rep, const CircuitSpec& circuit,
                                            const Eigen::VectorXd& theta) {
  const auto coeffs = tilde_coefficients(rep, circuit, theta);
  std::vector<ComplexMatrix> out;
  out.reserve(coeffs.size());
  for (const ComplexVector& v : coeffs) {
    ComplexMatrix m = ComplexMatrix::Zero(rep.dim(), rep.dim());
    for (Eigen::Index k = 0; k < v.size(); ++k) m += v(k) * rep.generators().matrix(static_cast<std::size_t>(k));
    out.push_back(std::move(m));
  }
  return out;
}

double max_tilde_deviation(const LieAlgebraRep& rep, const std::vector<ComplexMatrix>& a,
                           const std::vector<ComplexMatrix>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "operator lists differ in length");
  }
  const Eigen::Index block = rep.comparison_dim();
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    worst = std::max(worst, max_abs(a[j].topLeftCorner(block, block) - b[j].topLeftCorner(block, block)));
  }
  return worst;
}

}  // namespace statemetric
