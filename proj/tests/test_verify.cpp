#include <doctest.h>

#include <algorithm>

#include "statemetric/verify.hpp"

using namespace statemetric;

namespace {

/// Spin catalog with the sign of S_y flipped, which breaks [Sz, Sx] = i Sy.
Model flipped_sy(const models::SpinModelSpec& spec) {
  const Model good = models::spin_model(spec);
  std::vector<Generator> gens = good.circuit.generators().generators();
  for (auto& g : gens)
    if (g.name == "Sy") g.matrix = -g.matrix;
  auto set = std::make_shared<const GeneratorSet>(gens);
  std::optional<LieAlgebraRep> algebra;
  try {
    algebra = extract_structure_constants(set);
  } catch (const Error&) {
  }
  return Model{good.id, algebra, CircuitSpec(set, good.circuit.factors()), good.initial, good.gamma};
}

}  // namespace

TEST_CASE("criteria are numbered 1 to 10 and tagged") {
  const auto& criteria = verify::acceptance_criteria();
  REQUIRE(criteria.size() == 10);
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CHECK(criteria[i].number == static_cast<int>(i + 1));
    CHECK_FALSE(criteria[i].tags.empty());
  }
}

TEST_CASE("filtering by tag selects only matching criteria") {
  const auto results = verify::run_acceptance(verify::Catalog{}, {"sphere"});
  REQUIRE_FALSE(results.empty());
  for (const auto& r : results) {
    const auto& tags = verify::acceptance_criteria()[static_cast<std::size_t>(r.number - 1)].tags;
    CHECK(std::find(tags.begin(), tags.end(), "sphere") != tags.end());
  }
  CHECK(verify::run_acceptance(verify::Catalog{}, {"no-such-tag"}).empty());
  const auto by_number = verify::run_acceptance(verify::Catalog{}, {"6"});
  REQUIRE(by_number.size() == 1);
  CHECK(by_number[0].number == 6);
  CHECK(by_number[0].passed);
}

TEST_CASE("a sign error in S_y fails the suite and names the criterion") {
  verify::Catalog broken;
  broken.spin = flipped_sy;
  const auto results = verify::run_acceptance(broken, {"algebra", "sphere", "superposition"});
  REQUIRE_FALSE(results.empty());
  const bool any_failed = std::any_of(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  CHECK(any_failed);
  for (const auto& r : results) {
    if (!r.passed) CHECK(verify::format_result(r).rfind("[FAIL] " + std::to_string(r.number) + ".", 0) == 0);
  }
}
