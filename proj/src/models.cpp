#include "statemetric/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace statemetric::models {

namespace {

constexpr double kNormalizationTol = 1e-12;
constexpr double kLeakageTol = 1e-8;
constexpr double kSubspaceTol = 1e-10;
const Complex kI{0.0, 1.0};

std::shared_ptr<const GeneratorSet> make_set(std::vector<Generator> generators) {
  return std::make_shared<const GeneratorSet>(std::move(generators));
}

std::vector<CircuitSpec::Factor> euler_factors(const std::string& a1, const std::string& a2) {
  return {{a1, "theta1"}, {a2, "theta2"}, {a1, "theta3"}};
}

ComplexVector normalized_coefficients(const std::vector<Complex>& coeffs, Eigen::Index dim) {
  if (static_cast<Eigen::Index>(coeffs.size()) != dim) {
    throw Error(ErrorCode::BadNormalization, "expected " + std::to_string(dim) + " coefficients, got " +
                                                 std::to_string(coeffs.size()));
  }
  ComplexVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = coeffs[static_cast<std::size_t>(k)];
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormalizationTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "coefficients have squared norm " << norm2 << ", expected 1";
    throw Error(ErrorCode::BadNormalization, msg.str());
  }
  return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

}  // namespace

SpinMatrices spin_operators(double s) {
  const double twice = std::round(2.0 * s);
  if (!std::isfinite(s) || twice < 1.0 || std::abs(2.0 * s - twice) > 1e-12) {
    throw Error(ErrorCode::InvalidSpin, "spin must be a positive multiple of 1/2, got " + format_value(s));
  }
  const auto dim = static_cast<Eigen::Index>(twice) + 1;
  const double spin = twice / 2.0;
  ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix z = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double m = spin - static_cast<double>(i);
    z(i, i) = m;
    if (i > 0) raise(i - 1, i) = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  return {0.5 * (raise + lower), (raise - lower) / (2.0 * kI), z};
}

Model spin_model(const SpinModelSpec& spec) {
  const SpinMatrices ops = spin_operators(spec.s);
  const Eigen::Index dim = ops.z.rows();
  const double spin = static_cast<double>(dim - 1) / 2.0;

  ComplexVector amplitudes = ComplexVector::Zero(dim);
  if (const double* m = std::get_if<double>(&spec.initial)) {
    const double index = spin - *m;
    const double rounded = std::round(index);
    if (std::abs(index - rounded) > 1e-12 || rounded < 0.0 || rounded > static_cast<double>(dim - 1)) {
      throw Error(ErrorCode::InvalidSpin, "m = " + format_value(*m) + " is not a projection of spin " +
                                              format_value(spin));
    }
    amplitudes(static_cast<Eigen::Index>(rounded)) = 1.0;
  } else {
    amplitudes = normalized_coefficients(std::get<std::vector<Complex>>(spec.initial), dim);
  }

  auto generators = make_set({{"Sz", ops.z}, {"Sx", ops.x}, {"Sy", ops.y}});
  LieAlgebraRep rep = extract_structure_constants(generators);
  CircuitSpec circuit(generators, euler_factors("Sz", "Sx"));
  return Model{"spin", std::move(rep), std::move(circuit), StateVector(amplitudes), spec.gamma};
}

namespace {

void check_oscillator(const OscillatorModelSpec& spec) {
  if (!(spec.mass > 0.0) || !(spec.omega > 0.0) || spec.level < 0 || !(spec.max_displacement >= 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "oscillator needs mass > 0, omega > 0, level >= 0");
  }
  if (spec.truncation <= spec.level + 4) {
    throw Error(ErrorCode::TruncationTooSmall, "truncation " + std::to_string(spec.truncation) +
                                                   " must exceed level + 4 = " + std::to_string(spec.level + 4));
  }
}

std::vector<Generator> oscillator_generators(const OscillatorModelSpec& spec) {
  const Eigen::Index n = spec.truncation;
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const ComplexMatrix a_dag = a.adjoint();
  const double mw = spec.mass * spec.omega;
  ComplexMatrix x = (a_dag + a) / std::sqrt(2.0 * mw);
  ComplexMatrix p = kI * std::sqrt(mw / 2.0) * (a_dag - a);
  return {{"x", std::move(x)}, {"p", std::move(p)}, {"I", ComplexMatrix::Identity(n, n)}};
}

}  // namespace

double oscillator_leakage(const OscillatorModelSpec& spec) {
  check_oscillator(spec);
  auto generators = make_set(oscillator_generators(spec));
  const CircuitSpec circuit(generators, {{"x", "theta"}, {"p", "phi"}});
  ComplexVector ground = ComplexVector::Zero(spec.truncation);
  ground(spec.level) = 1.0;
  const StateVector initial(ground);
  const Eigen::Index half = spec.truncation / 2;
  double worst = 0.0;
  for (double st : {-1.0, 1.0}) {
    for (double sp : {-1.0, 1.0}) {
      const Eigen::Vector2d theta(st * spec.max_displacement, sp * spec.max_displacement);
      const StateVector psi = evolve(circuit, theta, initial);
      worst = std::max(worst, psi.amplitudes().tail(spec.truncation - half).squaredNorm());
    }
  }
  return worst;
}

Model oscillator_model(const OscillatorModelSpec& spec) {
  check_oscillator(spec);
  const double leakage = oscillator_leakage(spec);
  if (leakage > kLeakageTol) {
    throw Error(ErrorCode::TruncationTooSmall, "truncation " + std::to_string(spec.truncation) +
                                                   " leaks weight " + format_value(leakage) +
                                                   " into the upper Fock levels");
  }
  auto generators = make_set(oscillator_generators(spec));
  LieAlgebraRep rep = extract_structure_constants(generators, ClosureOptions{.truncation_aware = true});
  CircuitSpec circuit(generators, {{"x", "theta"}, {"p", "phi"}});
  ComplexVector level = ComplexVector::Zero(spec.truncation);
  level(spec.level) = 1.0;
  return Model{"oscillator", std::move(rep), std::move(circuit), StateVector(level), spec.gamma};
}

std::array<double, 3> direction(double eta, double chi) {
  return {std::sin(eta) * std::cos(chi), std::sin(eta) * std::sin(chi), std::cos(eta)};
}

std::pair<ComplexVector, ComplexVector> direction_states(double eta, double chi) {
  const Complex phase = std::polar(1.0, chi);
  ComplexVector plus(2), minus(2);
  plus << std::cos(eta / 2.0), std::sin(eta / 2.0) * phase;
  minus << -std::sin(eta / 2.0), std::cos(eta / 2.0) * phase;
  return {plus, minus};
}

ComplexVector two_spin_state(const TwoSpinModelSpec& spec) {
  if (const auto* coeffs = std::get_if<std::vector<Complex>>(&spec.initial)) {
    return normalized_coefficients(*coeffs, 4);
  }
  ComplexVector up(2), down(2);
  up << 1.0, 0.0;
  down << 0.0, 1.0;
  switch (std::get<TwoSpinPreset>(spec.initial)) {
    case TwoSpinPreset::UpUp: return kron(up, up);
    case TwoSpinPreset::UpDown: return kron(up, down);
    case TwoSpinPreset::DownUp: return kron(down, up);
    case TwoSpinPreset::DownDown: return kron(down, down);
    case TwoSpinPreset::PlusMinus: {
      const auto [plus, minus] = direction_states(spec.eta, spec.chi);
      return kron(plus, minus);
    }
    case TwoSpinPreset::MinusPlus: {
      const auto [plus, minus] = direction_states(spec.eta, spec.chi);
      return kron(minus, plus);
    }
  }
  throw Error(ErrorCode::BadVariant, "unknown two-spin initial state");
}

std::array<ComplexMatrix, 3> two_spin_generators(const TwoSpinModelSpec& spec) {
  const SpinMatrices s = spin_operators(0.5);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const std::array<ComplexMatrix, 3> first{kron(s.x, id), kron(s.y, id), kron(s.z, id)};
  const std::array<ComplexMatrix, 3> second{kron(id, s.x), kron(id, s.y), kron(id, s.z)};
  const auto& [x1, y1, z1] = first;
  const auto& [x2, y2, z2] = second;

  switch (spec.variant) {
    case TwoSpinVariant::DmXx:
      return {0.5 * (z1 - z2), x1 * y2 - y1 * x2, x1 * x2 + y1 * y2};
    case TwoSpinVariant::Sum:
      return {0.5 * (z1 + z2), x1 * x2 - y1 * y2, x1 * y2 + y1 * x2};
    case TwoSpinVariant::Directional: {
      const auto n = direction(spec.eta, spec.chi);
      ComplexMatrix n1 = ComplexMatrix::Zero(4, 4), n2 = ComplexMatrix::Zero(4, 4), dot = ComplexMatrix::Zero(4, 4);
      for (std::size_t k = 0; k < 3; ++k) {
        n1 += n[k] * first[k];
        n2 += n[k] * second[k];
        dot += first[k] * second[k];
      }
      // n . (S1 x S2)
      ComplexMatrix cross = ComplexMatrix::Zero(4, 4);
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t a = (k + 1) % 3, b = (k + 2) % 3;
        cross += n[k] * (first[a] * second[b] - first[b] * second[a]);
      }
      return {0.5 * (n1 - n2), cross, dot - n1 * n2};
    }
  }
  throw Error(ErrorCode::BadVariant, "unknown two-spin variant");
}

Model two_spin_model(const TwoSpinModelSpec& spec) {
  const auto a = two_spin_generators(spec);
  auto generators = make_set({{"A1", a[0]}, {"A2", a[1]}, {"A3", a[2]}});
  LieAlgebraRep rep = extract_structure_constants(generators);
  if (!validate_algebra(rep, AlgebraKind::so3()).passed()) {
    throw Error(ErrorCode::NotClosed, "two-spin generators do not satisfy the so(3) brackets");
  }
  CircuitSpec circuit(generators, euler_factors("A1", "A2"));
  return Model{"two_spin_" + to_string(spec.variant), std::move(rep), std::move(circuit),
               StateVector(two_spin_state(spec)), spec.gamma};
}

ComplexMatrix two_spin_hamiltonian(const TwoSpinModelSpec& spec) {
  if (spec.variant != TwoSpinVariant::DmXx) {
    throw Error(ErrorCode::BadVariant, "Hamiltonian bridge is defined for the dm_xx variant");
  }
  const auto a = two_spin_generators(spec);
  return spec.field * a[0] + spec.j1 * a[1] + spec.j2 * a[2];
}

EulerBridge euler_from_time(const TwoSpinModelSpec& spec, double t) {
  const ComplexMatrix h = two_spin_hamiltonian(spec);
  const ComplexMatrix u = expm_phase(h, t);
  EulerBridge out;

  const auto in_block = [](Eigen::Index k) { return k == 1 || k == 2; };
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 4; ++c)
      if (in_block(r) != in_block(c)) out.leakage = std::max(out.leakage, std::abs(u(r, c)));
  if (out.leakage > kSubspaceTol) {
    throw Error(ErrorCode::SubspaceLeak, "exp(-iHt) couples span{|ud>, |du>} to the rest (" +
                                             format_value(out.leakage) + ")");
  }

  const ComplexMatrix block = u.block(1, 1, 2, 2);
  const ComplexMatrix su2 = block * std::polar(1.0, -0.5 * std::arg(block.determinant()));
  const Complex alpha = su2(0, 0), beta = su2(0, 1);
  out.theta2 = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
  const double sum = std::abs(alpha) > 1e-14 ? -2.0 * std::arg(alpha) : 0.0;
  const double diff = std::abs(beta) > 1e-14 ? -2.0 * std::arg(beta) : 0.0;
  out.theta1 = wrap_angle(0.5 * (sum + diff));
  out.theta3 = wrap_angle(0.5 * (sum - diff));

  const Model model = two_spin_model(spec);
  const ComplexMatrix rebuilt =
      build_unitary(model.circuit, Eigen::Vector3d(out.theta1, out.theta2, out.theta3)).block(1, 1, 2, 2);
  const Complex overlap = (block.adjoint() * rebuilt).trace();
  out.reconstruction = max_abs(rebuilt - std::polar(1.0, std::arg(overlap)) * block);

  const double half_diff = 0.5 * (out.theta1 - out.theta3);
  out.difference_relation = std::abs(spec.j1) > 0.0 ? std::abs(std::tan(half_diff) - spec.j2 / spec.j1)
                                                    : std::abs(std::cos(half_diff));

  const double vector_part = std::sqrt(std::max(0.0, 1.0 - alpha.real() * alpha.real()));
  const double angle = std::atan2(vector_part, alpha.real());
  out.fitted_omega = t != 0.0 ? angle / t : 0.0;
  const double half_sum = 0.5 * (out.theta1 + out.theta3);
  const double wt = out.fitted_omega * t;
  out.sum_relation = std::abs(2.0 * out.fitted_omega * std::sin(half_sum) * std::cos(wt) -
                              spec.field * std::cos(half_sum) * std::sin(wt));
  const double lhs = std::cos(0.5 * out.theta2) * std::cos(half_sum);
  out.cosine_relation = std::min(std::abs(lhs - std::cos(wt)), std::abs(lhs + std::cos(wt)));
  return out;
}

std::string to_string(TwoSpinVariant variant) {
  switch (variant) {
    case TwoSpinVariant::DmXx: return "dm_xx";
    case TwoSpinVariant::Sum: return "sum";
    case TwoSpinVariant::Directional: return "directional";
  }
  return "dm_xx";
}

TwoSpinVariant parse_variant(const std::string& text) {
  if (text == "dm_xx") return TwoSpinVariant::DmXx;
  if (text == "sum") return TwoSpinVariant::Sum;
  if (text == "directional") return TwoSpinVariant::Directional;
  throw Error(ErrorCode::BadVariant, "unknown two-spin variant '" + text + "'");
}

std::string to_string(TwoSpinPreset preset) {
  switch (preset) {
    case TwoSpinPreset::UpUp: return "uu";
    case TwoSpinPreset::UpDown: return "ud";
    case TwoSpinPreset::DownUp: return "du";
    case TwoSpinPreset::DownDown: return "dd";
    case TwoSpinPreset::PlusMinus: return "+-";
    case TwoSpinPreset::MinusPlus: return "-+";
  }
  return "ud";
}

TwoSpinPreset parse_preset(const std::string& text) {
  if (text == "uu") return TwoSpinPreset::UpUp;
  if (text == "ud") return TwoSpinPreset::UpDown;
  if (text == "du") return TwoSpinPreset::DownUp;
  if (text == "dd") return TwoSpinPreset::DownDown;
  if (text == "+-") return TwoSpinPreset::PlusMinus;
  if (text == "-+") return TwoSpinPreset::MinusPlus;
  throw Error(ErrorCode::BadVariant, "unknown two-spin initial state '" + text + "'");
}

const std::vector<std::string>& model_ids() {
  static const std::vector<std::string> ids{"spin", "oscillator", "two_spin_dm_xx", "two_spin_sum",
                                            "two_spin_directional"};
  return ids;
}

}  // namespace statemetric::models
