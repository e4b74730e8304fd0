#pragma once

#include <string>
#include <vector>

#include "statemetric/linalg.hpp"

namespace statemetric {

struct Generator {
  std::string name;
  ComplexMatrix matrix;
};

/// Ordered, uniquely named set of Hermitian operators of a common dimension.
class GeneratorSet {
 public:
  /// Throws NotHermitian (naming the offending generator), DimensionMismatch,
  /// or UnknownGenerator on an empty or duplicated name.
  explicit GeneratorSet(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  Eigen::Index dim() const { return generators_.front().matrix.rows(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const ComplexMatrix& matrix(std::size_t i) const { return generators_[i].matrix; }

  /// Throws UnknownGenerator.
  std::size_t index_of(const std::string& name) const;
  bool contains(const std::string& name) const;

 private:
  std::vector<Generator> generators_;
};

}  // namespace statemetric
