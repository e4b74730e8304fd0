#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "statemetric/generators.hpp"

namespace statemetric {

/// Parameter values keyed by name, as supplied by a caller.
using ParameterBinding = std::map<std::string, double>;

/// Ordered product U = exp(-i t_1 A_{g1}) exp(-i t_2 A_{g2}) ... with one
/// parameter per factor. Generators are referenced by name and may repeat.
class CircuitSpec {
 public:
  struct Factor {
    std::string generator;
    std::string parameter;
  };

  CircuitSpec(std::shared_ptr<const GeneratorSet> generators, std::vector<Factor> factors);

  const GeneratorSet& generators() const { return *generators_; }
  std::shared_ptr<const GeneratorSet> generators_ptr() const { return generators_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  Eigen::Index dim() const { return generators_->dim(); }

  /// Parameter names in factor order.
  const std::vector<std::string>& parameter_names() const { return parameter_names_; }
  std::size_t parameter_index(const std::string& name) const;

  /// Generator matrix driving factor j.
  const ComplexMatrix& factor_matrix(std::size_t j) const { return generators_->matrix(generator_index_[j]); }
  std::size_t factor_generator_index(std::size_t j) const { return generator_index_[j]; }

  /// Resolve a binding into a vector in factor order. Unbound parameters
  /// throw MissingParameter unless default_zero is set; names not in the
  /// circuit also throw MissingParameter.
  Eigen::VectorXd bind(const ParameterBinding& values, bool default_zero = false) const;

 private:
  std::shared_ptr<const GeneratorSet> generators_;
  std::vector<Factor> factors_;
  std::vector<std::size_t> generator_index_;
  std::vector<std::string> parameter_names_;
};

/// Throws MissingParameter when theta does not have one entry per factor or is not finite.
void check_point(const CircuitSpec& circuit, const Eigen::VectorXd& theta);

}  // namespace statemetric
