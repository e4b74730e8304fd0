#include "statemetric/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace statemetric {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

Complex as_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected a [re, im] pair");
  return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

Manifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  Manifest m;
  m.name = as_string(field(doc, "name", "$"), "$.name");
  const json& dim = field(doc, "dimension", "$");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) fail("$.dimension", "expected a positive integer");
  m.dimension = dim.get<int>();
  if (doc.contains("gamma")) {
    m.gamma = as_number(doc["gamma"], "$.gamma");
    if (!(m.gamma > 0.0)) fail("$.gamma", "must be positive");
  }
  if (doc.contains("truncation_aware")) {
    if (!doc["truncation_aware"].is_boolean()) fail("$.truncation_aware", "expected a boolean");
    m.truncation_aware = doc["truncation_aware"].get<bool>();
  }

  const json& gens = field(doc, "generators", "$");
  if (!gens.is_array() || gens.empty()) fail("$.generators", "expected a non-empty array");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string path = "$.generators[" + std::to_string(g) + "]";
    Generator gen;
    gen.name = as_string(field(gens[g], "name", path), path + ".name");
    const json& rows = field(gens[g], "matrix", path);
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m.dimension)) {
      fail(path + ".matrix", "expected " + std::to_string(m.dimension) + " rows");
    }
    gen.matrix.resize(m.dimension, m.dimension);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string row_path = path + ".matrix[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(m.dimension)) {
        fail(row_path, "expected " + std::to_string(m.dimension) + " entries");
      }
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        gen.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            as_complex(rows[r][c], row_path + "[" + std::to_string(c) + "]");
      }
    }
    m.generators.push_back(std::move(gen));
  }

  const json& circuit = field(doc, "circuit", "$");
  if (!circuit.is_array() || circuit.empty()) fail("$.circuit", "expected a non-empty array");
  for (std::size_t j = 0; j < circuit.size(); ++j) {
    const std::string path = "$.circuit[" + std::to_string(j) + "]";
    CircuitSpec::Factor f;
    f.generator = as_string(field(circuit[j], "generator", path), path + ".generator");
    f.parameter = as_string(field(circuit[j], "parameter", path), path + ".parameter");
    if (f.parameter.empty()) fail(path + ".parameter", "empty parameter name");
    m.circuit.push_back(std::move(f));
  }

  const json& state = field(doc, "initial_state", "$");
  if (!state.is_array() || state.size() != static_cast<std::size_t>(m.dimension)) {
    fail("$.initial_state", "expected " + std::to_string(m.dimension) + " amplitudes");
  }
  m.initial_state.resize(m.dimension);
  for (std::size_t k = 0; k < state.size(); ++k) {
    m.initial_state(static_cast<Eigen::Index>(k)) = as_complex(state[k], "$.initial_state[" + std::to_string(k) + "]");
  }
  return m;
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str());
}

std::string emit_manifest(const Manifest& m) {
  json doc;
  doc["name"] = m.name;
  doc["dimension"] = m.dimension;
  doc["gamma"] = m.gamma;
  doc["truncation_aware"] = m.truncation_aware;
  json gens = json::array();
  for (const Generator& g : m.generators) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) row.push_back(complex_json(g.matrix(r, c)));
      rows.push_back(std::move(row));
    }
    gens.push_back(json{{"name", g.name}, {"matrix", std::move(rows)}});
  }
  doc["generators"] = std::move(gens);
  json circuit = json::array();
  for (const auto& f : m.circuit) circuit.push_back(json{{"generator", f.generator}, {"parameter", f.parameter}});
  doc["circuit"] = std::move(circuit);
  json state = json::array();
  for (Eigen::Index k = 0; k < m.initial_state.size(); ++k) state.push_back(complex_json(m.initial_state(k)));
  doc["initial_state"] = std::move(state);
  return doc.dump(2) + "\n";
}

Model to_model(const Manifest& m) {
  auto generators = std::make_shared<const GeneratorSet>(m.generators);
  CircuitSpec circuit(generators, m.circuit);
  if (m.initial_state.size() != generators->dim()) {
    throw Error(ErrorCode::DimensionMismatch, "initial state dimension differs from generator dimension");
  }
  std::optional<LieAlgebraRep> algebra;
  try {
    algebra = extract_structure_constants(generators, ClosureOptions{.truncation_aware = m.truncation_aware});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotClosed && e.code() != ErrorCode::DependentGenerators) throw;
  }
  return Model{m.name, std::move(algebra), std::move(circuit), StateVector(m.initial_state), m.gamma};
}

Manifest to_manifest(const Model& model, const std::string& name) {
  Manifest m;
  m.name = name;
  m.dimension = static_cast<int>(model.circuit.dim());
  m.gamma = model.gamma;
  m.truncation_aware = model.algebra && model.algebra->truncation_aware();
  m.generators = model.circuit.generators().generators();
  m.circuit = model.circuit.factors();
  m.initial_state = model.initial.amplitudes();
  return m;
}

}  // namespace statemetric
