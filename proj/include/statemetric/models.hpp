#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "statemetric/manifold.hpp"

namespace statemetric::models {

// Two-qubit basis order: |uu>, |ud>, |du>, |dd> (u = spin up along z).

struct SpinMatrices {
  ComplexMatrix x, y, z;
};

/// (2s+1)-dimensional angular momentum matrices in the S_z eigenbasis
/// ordered m = s, s-1, ..., -s. Throws InvalidSpin unless 2s is a positive integer.
SpinMatrices spin_operators(double s);

struct SpinModelSpec {
  double s = 0.5;
  /// Either the S_z eigenvalue m or the amplitudes C_m ordered m = s..-s.
  std::variant<double, std::vector<Complex>> initial = 0.5;
  double gamma = 1.0;
};

/// Generators (A1, A2, A3) = (S_z, S_x, S_y), circuit
/// exp(-i theta1 A1) exp(-i theta2 A2) exp(-i theta3 A1).
Model spin_model(const SpinModelSpec& spec);

struct OscillatorModelSpec {
  double mass = 1.0;
  double omega = 1.0;
  int level = 0;
  int truncation = 64;
  double gamma = 1.0;
  /// Largest |theta|, |phi| the truncation must support with leakage <= 1e-8.
  double max_displacement = 1.0;
};

/// Generators (x, p, I) on a truncated Fock space, circuit
/// exp(-i theta x) exp(-i phi p), initial |n>. Closure is truncation aware.
Model oscillator_model(const OscillatorModelSpec& spec);

/// Weight of the evolved state in the upper half of the Fock space, maximized
/// over the corners of the displacement box.
double oscillator_leakage(const OscillatorModelSpec& spec);

enum class TwoSpinVariant { DmXx, Sum, Directional };

enum class TwoSpinPreset { UpUp, UpDown, DownUp, DownDown, PlusMinus, MinusPlus };

struct TwoSpinModelSpec {
  TwoSpinVariant variant = TwoSpinVariant::DmXx;
  double j1 = 1.0;
  double j2 = 1.0;
  double field = 1.0;  // h_z, or h for the directional variant
  double eta = 0.0;
  double chi = 0.0;
  std::variant<TwoSpinPreset, std::vector<Complex>> initial = TwoSpinPreset::UpDown;
  double gamma = 1.0;
};

/// Unit vector (sin eta cos chi, sin eta sin chi, cos eta).
std::array<double, 3> direction(double eta, double chi);

/// Spin-1/2 states along +n and -n.
std::pair<ComplexVector, ComplexVector> direction_states(double eta, double chi);

ComplexVector two_spin_state(const TwoSpinModelSpec& spec);

/// Generators (A1, A2, A3) of the chosen variant; they satisfy the so(3)
/// brackets [A1, A2] = i A3 cyclically.
std::array<ComplexMatrix, 3> two_spin_generators(const TwoSpinModelSpec& spec);

/// Circuit exp(-i theta1 A1) exp(-i theta2 A2) exp(-i theta3 A1).
Model two_spin_model(const TwoSpinModelSpec& spec);

/// H = h_z A1 + J1 A2 + J2 A3 for the DM + XX variant.
ComplexMatrix two_spin_hamiltonian(const TwoSpinModelSpec& spec);

struct EulerBridge {
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  double leakage = 0.0;          // largest element of exp(-iHt) coupling the {ud, du} block to the rest
  double reconstruction = 0.0;   // circuit block vs exp(-iHt) block, up to global phase
  double difference_relation = 0.0;  // |tan((theta1 - theta3)/2) - J2/J1|, or the sin/cos form when J1 = 0
  double fitted_omega = 0.0;     // rotation rate of the block
  double sum_relation = 0.0;     // |tan((theta1 + theta3)/2) - h_z tan(omega t)/(2 omega)| in sin/cos form
  double cosine_relation = 0.0;  // |cos(theta2/2) cos((theta1 + theta3)/2) - cos(omega t)|
};

/// Euler angles of exp(-iHt) on span{|ud>, |du>} in the gauge
/// theta2 in [0, pi], theta1, theta3 in (-pi, pi]. Throws BadVariant for
/// variants other than DmXx and SubspaceLeak when exp(-iHt) couples the
/// block to the rest beyond 1e-10.
EulerBridge euler_from_time(const TwoSpinModelSpec& spec, double t);

std::string to_string(TwoSpinVariant variant);
TwoSpinVariant parse_variant(const std::string& text);
std::string to_string(TwoSpinPreset preset);
TwoSpinPreset parse_preset(const std::string& text);

/// Catalog identifiers.
const std::vector<std::string>& model_ids();

}  // namespace statemetric::models
