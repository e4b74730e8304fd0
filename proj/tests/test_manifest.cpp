#include <doctest.h>

#include <string>

#include "statemetric/manifest.hpp"
#include "statemetric/models.hpp"

using namespace statemetric;

namespace {

const char* kSpinHalf = R"({
  "name": "half",
  "dimension": 2,
  "generators": [
    {"name": "Z", "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]},
    {"name": "X", "matrix": [[[0, 0], [0.5, 0]], [[0.5, 0], [0, 0]]]},
    {"name": "Y", "matrix": [[[0, 0], [0, -0.5]], [[0, 0.5], [0, 0]]]}
  ],
  "circuit": [{"generator": "Z", "parameter": "a"}, {"generator": "X", "parameter": "b"}],
  "initial_state": [[1, 0], [0, 0]]
})";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("parse a hand-written manifest") {
  const Manifest m = parse_manifest(kSpinHalf);
  CHECK(m.name == "half");
  CHECK(m.gamma == 1.0);
  CHECK_FALSE(m.truncation_aware);
  REQUIRE(m.generators.size() == 3);
  CHECK(m.generators[2].matrix(0, 1) == Complex(0, -0.5));
  const Model model = to_model(m);
  CHECK(model.algebra.has_value());
  CHECK(model.circuit.parameter_names() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("parse errors name the offending field") {
  auto message = [](const std::string& text) {
    try {
      parse_manifest(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return std::string(e.what());
    }
    FAIL("no error");
    return std::string();
  };
  CHECK(message("{ not json").find("ParseError") != std::string::npos);
  CHECK(message(replace(kSpinHalf, R"(, "parameter": "b")", "")).find("$.circuit[1].parameter") != std::string::npos);
  CHECK(message(replace(kSpinHalf, R"("dimension": 2)", R"("dimension": "two")")).find("$.dimension") != std::string::npos);
  CHECK(message(replace(kSpinHalf, "[[1, 0], [0, 0]]", "[[1, 0]]")).find("$.initial_state") != std::string::npos);
  CHECK(message(replace(kSpinHalf, "[[0.5, 0], [0, 0]]", "[[0.5, 0]]")).find("$.generators[0].matrix") != std::string::npos);
  CHECK(message(replace(kSpinHalf, R"("name": "half",)", "")).find("$.name") != std::string::npos);
}

TEST_CASE("semantic errors surface when building the model") {
  const std::string non_hermitian = replace(kSpinHalf, "[[0, 0], [0.5, 0]], [[0.5, 0], [0, 0]]", "[[0, 0], [0.5, 0]], [[0.2, 0], [0, 0]]");
  CHECK(code_of([&] { to_model(parse_manifest(non_hermitian)); }) == ErrorCode::NotHermitian);
  const std::string unknown = replace(kSpinHalf, R"("generator": "X")", R"("generator": "W")");
  CHECK(code_of([&] { to_model(parse_manifest(unknown)); }) == ErrorCode::UnknownGenerator);
  const std::string duplicate = replace(kSpinHalf, R"("parameter": "b")", R"("parameter": "a")");
  CHECK(code_of([&] { to_model(parse_manifest(duplicate)); }) == ErrorCode::DuplicateParameter);
}

TEST_CASE("non-closing generators load without an algebra") {
  const std::string pair = replace(kSpinHalf, R"(,
    {"name": "Y", "matrix": [[[0, 0], [0, -0.5]], [[0, 0.5], [0, 0]]]})", "");
  const Model model = to_model(parse_manifest(pair));
  CHECK_FALSE(model.algebra.has_value());
}

TEST_CASE("emit and parse round trip for every catalog model") {
  std::vector<Model> catalog;
  catalog.push_back(models::spin_model({1.0, std::vector<Complex>{{0.6, 0}, {0, 0.48}, {0.64, 0}}, 1.5}));
  catalog.push_back(models::oscillator_model({1.0, 1.0, 1, 24, 1.0, 0.5}));
  models::TwoSpinModelSpec two;
  two.variant = models::TwoSpinVariant::Directional;
  two.eta = 0.3;
  two.chi = 1.9;
  two.initial = models::TwoSpinPreset::MinusPlus;
  catalog.push_back(models::two_spin_model(two));
  for (const Model& m : catalog) {
    const std::string text = emit_manifest(to_manifest(m, m.id));
    const Manifest parsed = parse_manifest(text);
    CHECK(emit_manifest(parsed) == text);
    const Model back = to_model(parsed);
    CHECK(back.gamma == m.gamma);
    CHECK(back.algebra.has_value());
    CHECK(back.algebra->truncation_aware() == m.algebra->truncation_aware());
    CHECK((back.initial.amplitudes() - m.initial.amplitudes()).norm() == 0.0);
    for (std::size_t j = 0; j < m.circuit.size(); ++j) CHECK(back.circuit.factor_matrix(j) == m.circuit.factor_matrix(j));
    CHECK(text.back() == '\n');
    CHECK(text.find("\"name\"") < text.find("\"dimension\""));
  }
}

TEST_CASE("reading a missing file is an IoError") {
  CHECK(code_of([] { read_manifest("/nonexistent/manifest.json"); }) == ErrorCode::IoError);
}
