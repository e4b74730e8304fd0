#include <doctest.h>

#include <cmath>

#include "statemetric/liealg.hpp"
#include "statemetric/manifold.hpp"
#include "statemetric/models.hpp"
#include "test_support.hpp"

using namespace statemetric;

namespace {

const Complex I(0.0, 1.0);

std::shared_ptr<const GeneratorSet> spin_set(double s, bool cyclic_xyz = true) {
  const auto ops = models::spin_operators(s);
  if (cyclic_xyz) return std::make_shared<const GeneratorSet>(std::vector<Generator>{{"Sx", ops.x}, {"Sy", ops.y}, {"Sz", ops.z}});
  return std::make_shared<const GeneratorSet>(std::vector<Generator>{{"Sz", ops.z}, {"Sx", ops.x}, {"Sy", ops.y}});
}

/// Levi-Civita symbol on 0-based indices.
double epsilon(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i + 1) % 3 == j) ? 1.0 : -1.0;
}

}  // namespace

TEST_CASE("spin-1/2 structure constants are i epsilon") {
  const LieAlgebraRep rep = extract_structure_constants(spin_set(0.5));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(rep.c(i, j, k) - I * epsilon(i, j, k)) <= 1e-12);
  CHECK(rep.jacobi_residual() <= 1e-10);
  CHECK(rep.purity_defect() <= 1e-12);
  CHECK(detect_kind(rep).family == AlgebraKind::Family::So3);
}

TEST_CASE("structure constants are exactly antisymmetric") {
  for (double s : {0.5, 1.0, 2.5}) {
    const LieAlgebraRep rep = extract_structure_constants(spin_set(s));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) CHECK(rep.c(i, j, k) == -rep.c(j, i, k));
  }
}

TEST_CASE("single generator is abelian") {
  std::mt19937 rng(21);
  auto set = std::make_shared<const GeneratorSet>(std::vector<Generator>{{"A", testing_support::random_hermitian(rng, 3)}});
  const LieAlgebraRep rep = extract_structure_constants(set);
  CHECK(std::abs(rep.c(0, 0, 0)) == 0.0);
  const auto report = validate_algebra(rep, AlgebraKind::generic());
  CHECK(report.passed());
}

TEST_CASE("a non-closing pair raises NotClosed") {
  const auto ops = models::spin_operators(0.5);
  auto set = std::make_shared<const GeneratorSet>(std::vector<Generator>{{"Sx", ops.x}, {"Sy", ops.y}});
  try {
    extract_structure_constants(set);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosed);
  }
  const StructureFit fit = fit_structure_constants(*set);
  CHECK_FALSE(fit.closed());
}

TEST_CASE("linearly dependent generators raise DependentGenerators") {
  const auto ops = models::spin_operators(0.5);
  auto set = std::make_shared<const GeneratorSet>(std::vector<Generator>{{"Sx", ops.x}, {"twice", 2.0 * ops.x}});
  try {
    extract_structure_constants(set);
    FAIL("expected DependentGenerators");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DependentGenerators);
  }
}

TEST_CASE("truncated oscillator closes only in truncation-aware mode") {
  const Model osc = models::oscillator_model({1.0, 1.0, 0, 64, 1.0, 1.0});
  REQUIRE(osc.algebra.has_value());
  const auto set = osc.algebra->generators_ptr();
  CHECK_FALSE(fit_structure_constants(*set).closed());
  CHECK_THROWS_AS(extract_structure_constants(set), Error);

  const LieAlgebraRep rep = *osc.algebra;
  CHECK(rep.truncation_aware());
  CHECK(std::abs(rep.c(0, 1, 2) - I) <= 1e-9);
  const auto report = validate_algebra(rep, AlgebraKind::heisenberg(1));
  CHECK(report.passed());
  CHECK(detect_kind(rep).family == AlgebraKind::Family::Heisenberg);
}

TEST_CASE("two-spin generators validate as so(3)") {
  for (auto variant : {models::TwoSpinVariant::DmXx, models::TwoSpinVariant::Sum, models::TwoSpinVariant::Directional}) {
    models::TwoSpinModelSpec spec;
    spec.variant = variant;
    spec.eta = 0.7;
    spec.chi = 0.4;
    spec.initial = models::TwoSpinPreset::UpUp;
    const Model m = models::two_spin_model(spec);
    REQUIRE(m.algebra.has_value());
    const auto report = validate_algebra(*m.algebra, AlgebraKind::so3());
    CHECK(report.passed());
    for (const auto& check : report.checks) CHECK(check.residual <= 1e-12);
  }
}

TEST_CASE("validate_algebra reports a wrong kind without throwing") {
  const LieAlgebraRep rep = extract_structure_constants(spin_set(1.0));
  const auto report = validate_algebra(rep, AlgebraKind::heisenberg(1));
  CHECK_FALSE(report.passed());
  CHECK(detect_kind(extract_structure_constants(spin_set(1.0, false))).family == AlgebraKind::Family::So3);
}

TEST_CASE("tilde operators at the origin are the generators") {
  const Model m = models::spin_model({1.0, 0.0, 1.0});
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  const auto conj = tilde_by_conjugation(m.circuit, zero);
  const auto adj = tilde_by_adjoint(*m.algebra, m.circuit, zero);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(max_abs(conj[j] - m.circuit.factor_matrix(j)) <= 1e-15);
    CHECK(max_abs(adj[j] - m.circuit.factor_matrix(j)) <= 1e-14);
  }
}

TEST_CASE("so(3) tilde operators have the Euler-rotation closed forms") {
  const Model m = models::spin_model({1.5, 0.5, 1.0});
  const auto& gens = m.circuit.generators();
  const ComplexMatrix& a1 = gens.matrix(0);
  const ComplexMatrix& a2 = gens.matrix(1);
  const ComplexMatrix& a3 = gens.matrix(2);
  std::mt19937 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd t = testing_support::random_point(rng, 3);
    const auto conj = tilde_by_conjugation(m.circuit, t);
    const auto adj = tilde_by_adjoint(*m.algebra, m.circuit, t);
    const ComplexMatrix a2_expected = std::cos(t(2)) * a2 - std::sin(t(2)) * a3;
    const ComplexMatrix a1_expected = std::cos(t(1)) * a1 + std::sin(t(1)) * std::sin(t(2)) * a2 +
                                      std::sin(t(1)) * std::cos(t(2)) * a3;
    CHECK(max_abs(conj[1] - a2_expected) <= 1e-12);
    CHECK(max_abs(conj[0] - a1_expected) <= 1e-12);
    CHECK(max_abs(conj[2] - a1) <= 1e-12);
    CHECK(max_tilde_deviation(*m.algebra, conj, adj) <= 1e-10);
    for (const auto& op : conj) CHECK(hermiticity_defect(op) <= 1e-12);
  }
}

TEST_CASE("Heisenberg tilde of x is x + phi I") {
  const Model osc = models::oscillator_model({1.0, 1.0, 0, 64, 1.0, 1.0});
  Eigen::VectorXd t(2);
  t << 0.4, -0.7;
  const auto coeff = tilde_coefficients(*osc.algebra, osc.circuit, t);
  CHECK(std::abs(coeff[0](0) - 1.0) <= 1e-12);
  CHECK(std::abs(coeff[0](1)) <= 1e-12);
  CHECK(std::abs(coeff[0](2) - t(1)) <= 1e-12);
  const auto conj = tilde_by_conjugation(osc.circuit, t);
  const auto adj = tilde_by_adjoint(*osc.algebra, osc.circuit, t);
  CHECK(max_tilde_deviation(*osc.algebra, conj, adj) <= 1e-10);
}

TEST_CASE("abelian algebra leaves coefficient vectors unchanged") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 1, 2, 3;
  b.diagonal() << -1, 0, 4;
  auto set = std::make_shared<const GeneratorSet>(std::vector<Generator>{{"a", a}, {"b", b}});
  const LieAlgebraRep rep = extract_structure_constants(set);
  const CircuitSpec circuit(set, {{"a", "s"}, {"b", "t"}});
  Eigen::VectorXd t(2);
  t << 0.9, -2.2;
  const auto coeff = tilde_coefficients(rep, circuit, t);
  CHECK(std::abs(coeff[0](0) - 1.0) <= 1e-14);
  CHECK(std::abs(coeff[0](1)) <= 1e-14);
  CHECK(std::abs(coeff[1](1) - 1.0) <= 1e-14);
}

TEST_CASE("tilde operators keep the generator spectra") {
  const Model m = models::spin_model({2.0, 1.0, 1.0});
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd t = testing_support::random_point(rng, 3);
    const auto conj = tilde_by_conjugation(m.circuit, t);
    for (std::size_t j = 0; j < 3; ++j) {
      const auto before = herm_eig(m.circuit.factor_matrix(j)).eigenvalues;
      const auto after = herm_eig(conj[j]).eigenvalues;
      CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("adjoint group action matches conjugation") {
  const LieAlgebraRep rep = extract_structure_constants(spin_set(1.0));
  const AdjointRep ad(rep);
  const double t = 0.83;
  const ComplexMatrix action = ad.group_action(2, t);
  const ComplexMatrix u = expm_phase(rep.generators().matrix(2), -t);  // exp(i t Sz)
  for (std::size_t l = 0; l < 3; ++l) {
    const ComplexMatrix lhs = u * rep.generators().matrix(l) * u.adjoint();
    ComplexMatrix rhs = ComplexMatrix::Zero(3, 3);
    for (std::size_t k = 0; k < 3; ++k) rhs += action(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) * rep.generators().matrix(k);
    CHECK(max_abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("tilde_by_adjoint rejects circuits outside the algebra") {
  const LieAlgebraRep rep = extract_structure_constants(spin_set(0.5));
  const auto ops = models::spin_operators(0.5);
  auto other = std::make_shared<const GeneratorSet>(std::vector<Generator>{{"Q", ops.x + ops.z}});
  const CircuitSpec circuit(other, {{"Q", "t"}});
  CHECK_THROWS_AS(tilde_by_adjoint(rep, circuit, Eigen::VectorXd::Zero(1)), Error);
}

TEST_CASE("GeneratorSet validation") {
  const auto ops = models::spin_operators(0.5);
  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  try {
    GeneratorSet set({{"good", ops.x}, {"broken", bad}});
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
    CHECK(std::string(e.what()).find("broken") != std::string::npos);
  }
  CHECK_THROWS_AS(GeneratorSet({{"a", ops.x}, {"a", ops.y}}), Error);
  CHECK_THROWS_AS(GeneratorSet({{"a", ops.x}, {"b", models::spin_operators(1.0).x}}), Error);
  const GeneratorSet set({{"a", ops.x}});
  CHECK_THROWS_AS(set.index_of("missing"), Error);
}
