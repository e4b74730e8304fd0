#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statemetric/manifold.hpp"

namespace statemetric {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kCurvatureStep = 1e-3;
inline constexpr double kSectionDetTol = 1e-10;
inline constexpr double kFlatCurvatureTol = 1e-5;
inline constexpr double kFlatMetricTol = 1e-8;
inline constexpr double kSphereRelativeTol = 1e-4;

struct GridAxis {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double value(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

/// Swept axes plus the values of every parameter; swept entries of base are overwritten.
struct GridSpec {
  std::vector<GridAxis> axes;
  Eigen::VectorXd base;
};

/// Metric sampled on a grid. Nodes are ordered row-major over the axes in
/// declaration order (last axis fastest).
struct MetricField {
  std::shared_ptr<const Model> model;
  std::vector<GridAxis> axes;
  std::vector<std::size_t> axis_parameter;  // circuit parameter index per axis
  std::vector<Eigen::VectorXd> nodes;
  std::vector<MetricTensor> tensors;
  double gamma = 1.0;
};

/// Throws EmptyGrid (no axes or a count below 1) or MissingParameter.
MetricField metric_field(std::shared_ptr<const Model> model, const GridSpec& grid);

struct RankInfo {
  int rank = 0;
  Eigen::VectorXd eigenvalues;     // ascending
  Eigen::MatrixXd null_directions; // columns spanning the near-null space
};

/// rank = #{eigenvalues > 1e-10 * max(1, lambda_max)}
RankInfo rank_analysis(const MetricTensor& metric);

/// Gaussian curvature of the two-parameter section (p, q) through theta,
/// other parameters held fixed, by the Brioschi formula on central
/// differences of the section metric. Throws DegenerateSection when the
/// section determinant is at most 1e-10.
double gauss_curvature(const Model& model, const Eigen::VectorXd& theta, std::pair<std::size_t, std::size_t> section,
                       double step = kCurvatureStep);

/// Scalar curvature from Christoffel symbols of differenced metrics. Needs a
/// full-rank metric; throws DegenerateSection otherwise.
double scalar_curvature(const Model& model, const Eigen::VectorXd& theta, double step = kCurvatureStep);

struct Classification {
  enum class Kind { Flat, Sphere, Degenerate, Generic };
  Kind kind = Kind::Generic;
  double radius = 0.0;  // Sphere
  int rank = 0;         // Degenerate

  std::string label() const;
};

struct CurvatureReport {
  int rank = 0;
  Eigen::MatrixXd null_directions;
  std::optional<std::pair<std::size_t, std::size_t>> section;
  std::optional<double> gaussian_curvature;  // mean over nodes for the chosen section
  double curvature_spread = 0.0;             // max - min of that section's K over nodes
  std::optional<double> scalar_curvature;    // first node, full-rank metrics only
  double metric_variation = 0.0;             // max componentwise deviation from the first node
  double max_abs_section_curvature = 0.0;    // over all nondegenerate sections and nodes
  Classification classification;
};

/// Flat, sphere(R), degenerate(rank), or generic. Requires >= 3 nodes per
/// swept axis (InsufficientGrid).
CurvatureReport classify(const MetricField& field);

}  // namespace statemetric
