#pragma once

#include <functional>
#include <string>
#include <vector>

#include "statemetric/models.hpp"

namespace statemetric::verify {

/// Model constructors the acceptance criteria draw from. Replaceable so a
/// deliberately broken catalog can be run through the same checks.
struct Catalog {
  std::function<Model(const models::SpinModelSpec&)> spin = models::spin_model;
  std::function<Model(const models::OscillatorModelSpec&)> oscillator = models::oscillator_model;
  std::function<Model(const models::TwoSpinModelSpec&)> two_spin = models::two_spin_model;
};

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int number = 0;
  std::vector<std::string> tags;
  std::string title;
  std::function<Outcome(const Catalog&)> run;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

const std::vector<Criterion>& acceptance_criteria();

/// Runs every criterion whose tags intersect `only` (all when empty). An
/// exception inside a criterion counts as a failure.
std::vector<CriterionResult> run_acceptance(const Catalog& catalog, const std::vector<std::string>& only = {});

/// "[PASS] 1 three-way agreement ... (detail)"
std::string format_result(const CriterionResult& result);

}  // namespace statemetric::verify
