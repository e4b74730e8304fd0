#include "statemetric/circuit.hpp"

#include <cmath>
#include <set>

namespace statemetric {

GeneratorSet::GeneratorSet(std::vector<Generator> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "generator set is empty");
  }
  const Eigen::Index d = generators_.front().matrix.rows();
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.name.empty()) {
      throw Error(ErrorCode::UnknownGenerator, "generator with empty name");
    }
    if (!seen.insert(g.name).second) {
      throw Error(ErrorCode::UnknownGenerator, "duplicate generator name '" + g.name + "'");
    }
    if (d < 1 || g.matrix.rows() != d || g.matrix.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "generator '" + g.name + "' is not " +
                                                    std::to_string(d) + "x" + std::to_string(d));
    }
    const double defect = hermiticity_defect(g.matrix);
    if (defect > kHermitianTol) {
      throw Error(ErrorCode::NotHermitian,
                  "generator '" + g.name + "' has Hermiticity defect " + format_value(defect));
    }
  }
}

std::size_t GeneratorSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  throw Error(ErrorCode::UnknownGenerator, "no generator named '" + name + "'");
}

bool GeneratorSet::contains(const std::string& name) const {
  for (const auto& g : generators_) {
    if (g.name == name) return true;
  }
  return false;
}

CircuitSpec::CircuitSpec(std::shared_ptr<const GeneratorSet> generators, std::vector<Factor> factors)
    : generators_(std::move(generators)), factors_(std::move(factors)) {
  if (!generators_) {
    throw Error(ErrorCode::UnknownGenerator, "circuit has no generator set");
  }
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    generator_index_.push_back(generators_->index_of(f.generator));
    if (f.parameter.empty()) {
      throw Error(ErrorCode::MissingParameter, "factor on '" + f.generator + "' has no parameter");
    }
    if (!seen.insert(f.parameter).second) {
      throw Error(ErrorCode::DuplicateParameter,
                  "parameter '" + f.parameter + "' drives more than one factor");
    }
    parameter_names_.push_back(f.parameter);
  }
}

std::size_t CircuitSpec::parameter_index(const std::string& name) const {
  for (std::size_t i = 0; i < parameter_names_.size(); ++i) {
    if (parameter_names_[i] == name) return i;
  }
  throw Error(ErrorCode::MissingParameter, "circuit has no parameter '" + name + "'");
}

Eigen::VectorXd CircuitSpec::bind(const ParameterBinding& values, bool default_zero) const {
  for (const auto& [name, value] : values) {
    parameter_index(name);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::MissingParameter, "parameter '" + name + "' is not finite");
    }
  }
  Eigen::VectorXd theta(static_cast<Eigen::Index>(parameter_names_.size()));
  for (std::size_t i = 0; i < parameter_names_.size(); ++i) {
    auto it = values.find(parameter_names_[i]);
    if (it == values.end()) {
      if (!default_zero) {
        throw Error(ErrorCode::MissingParameter, "parameter '" + parameter_names_[i] + "' is unbound");
      }
      theta(static_cast<Eigen::Index>(i)) = 0.0;
    } else {
      theta(static_cast<Eigen::Index>(i)) = it->second;
    }
  }
  return theta;
}

void check_point(const CircuitSpec& circuit, const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != circuit.size()) {
    throw Error(ErrorCode::MissingParameter, "expected " + std::to_string(circuit.size()) +
                                                 " parameter values, got " + std::to_string(theta.size()));
  }
  if (!theta.allFinite()) {
    throw Error(ErrorCode::MissingParameter, "parameter point is not finite");
  }
}

}  // namespace statemetric
