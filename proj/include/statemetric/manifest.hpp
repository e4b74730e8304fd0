#pragma once

#include <string>
#include <vector>

#include "statemetric/manifold.hpp"

namespace statemetric {

/// On-disk description of a state family. JSON layout:
///
///   {
///     "name": "spin",
///     "dimension": 2,
///     "gamma": 1.0,
///     "truncation_aware": false,
///     "generators": [{"name": "Sz", "matrix": [[[re, im], ...], ...]}, ...],
///     "circuit": [{"generator": "Sz", "parameter": "theta1"}, ...],
///     "initial_state": [[re, im], ...]
///   }
///
/// "gamma" and "truncation_aware" are optional (1.0 and false).
struct Manifest {
  std::string name;
  int dimension = 0;
  double gamma = 1.0;
  bool truncation_aware = false;
  std::vector<Generator> generators;
  std::vector<CircuitSpec::Factor> circuit;
  ComplexVector initial_state;
};

/// Structural parse. Throws ParseError naming the JSON path of the first
/// offending field (or the byte offset of a syntax error).
Manifest parse_manifest(const std::string& text);
Manifest read_manifest(const std::string& path);

/// Deterministic rendering: fixed key order, two-space indent, shortest
/// round-trip doubles, trailing newline.
std::string emit_manifest(const Manifest& manifest);

/// Builds the model; the algebra is attached when the generators close.
/// Throws NotHermitian, UnknownGenerator, DuplicateParameter, DimensionMismatch.
Model to_model(const Manifest& manifest);

Manifest to_manifest(const Model& model, const std::string& name);

}  // namespace statemetric
