#include "statemetric/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "statemetric/parallel.hpp"

namespace statemetric {

MetricField metric_field(std::shared_ptr<const Model> model, const GridSpec& grid) {
  if (!model) throw Error(ErrorCode::EmptyGrid, "no model supplied");
  if (grid.axes.empty()) throw Error(ErrorCode::EmptyGrid, "grid has no swept parameter");
  const CircuitSpec& circuit = model->circuit;
  check_point(circuit, grid.base);

  MetricField field;
  field.model = model;
  field.axes = grid.axes;
  field.gamma = model->gamma;
  std::size_t total = 1;
  for (const GridAxis& axis : grid.axes) {
    if (axis.count < 1) throw Error(ErrorCode::EmptyGrid, "axis '" + axis.parameter + "' has no nodes");
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
      throw Error(ErrorCode::EmptyGrid, "axis '" + axis.parameter + "' has non-finite bounds");
    }
    field.axis_parameter.push_back(circuit.parameter_index(axis.parameter));
    total *= static_cast<std::size_t>(axis.count);
  }

  field.nodes.reserve(total);
  std::vector<int> counter(grid.axes.size(), 0);
  for (std::size_t node = 0; node < total; ++node) {
    Eigen::VectorXd theta = grid.base;
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
      theta(static_cast<Eigen::Index>(field.axis_parameter[a])) = grid.axes[a].value(counter[a]);
    }
    field.nodes.push_back(std::move(theta));
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      if (++counter[a] < grid.axes[a].count) break;
      counter[a] = 0;
    }
  }

  field.tensors.resize(total);
  parallel_for(total, [&](std::size_t i) { field.tensors[i] = analytic_metric(*model, field.nodes[i]); });
  return field;
}

RankInfo rank_analysis(const MetricTensor& metric) {
  RankInfo info;
  const Eigen::Index n = metric.dim();
  if (n == 0) return info;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (metric.g + metric.g.transpose()));
  info.eigenvalues = eig.eigenvalues();
  const double threshold = kRankTol * std::max(1.0, info.eigenvalues.maxCoeff());
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (info.eigenvalues(k) > threshold) {
      ++info.rank;
    } else {
      null_cols.push_back(k);
    }
  }
  info.null_directions.resize(n, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t c = 0; c < null_cols.size(); ++c) {
    info.null_directions.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(null_cols[c]);
  }
  return info;
}

namespace {

double section_det(const MetricTensor& m, std::size_t p, std::size_t q) {
  const auto ip = static_cast<Eigen::Index>(p), iq = static_cast<Eigen::Index>(q);
  return m.g(ip, ip) * m.g(iq, iq) - m.g(ip, iq) * m.g(ip, iq);
}

struct SectionMetric {
  double e, f, g;
};

}  // namespace

double gauss_curvature(const Model& model, const Eigen::VectorXd& theta, std::pair<std::size_t, std::size_t> section,
                       double step) {
  const auto [p, q] = section;
  const std::size_t n = model.circuit.size();
  if (p >= n || q >= n || p == q) {
    throw Error(ErrorCode::DegenerateSection, "section indices must name two distinct parameters");
  }
  const auto ip = static_cast<Eigen::Index>(p), iq = static_cast<Eigen::Index>(q);
  const auto at = [&](int du, int dv) {
    Eigen::VectorXd x = theta;
    x(ip) += du * step;
    x(iq) += dv * step;
    const MetricTensor m = analytic_metric(model, x);
    return SectionMetric{m.g(ip, ip), m.g(ip, iq), m.g(iq, iq)};
  };

  const SectionMetric c = at(0, 0);
  const double det = c.e * c.g - c.f * c.f;
  if (!(det > kSectionDetTol)) {
    throw Error(ErrorCode::DegenerateSection, "section (" + model.circuit.parameter_names()[p] + ", " +
                                                  model.circuit.parameter_names()[q] + ") has determinant " +
                                                  format_value(det));
  }
  const SectionMetric up = at(1, 0), um = at(-1, 0), vp = at(0, 1), vm = at(0, -1);
  const SectionMetric pp = at(1, 1), pm = at(1, -1), mp = at(-1, 1), mm = at(-1, -1);
  const double h = step, h2 = step * step;

  const double e_u = (up.e - um.e) / (2 * h), e_v = (vp.e - vm.e) / (2 * h);
  const double f_u = (up.f - um.f) / (2 * h), f_v = (vp.f - vm.f) / (2 * h);
  const double g_u = (up.g - um.g) / (2 * h), g_v = (vp.g - vm.g) / (2 * h);
  const double e_vv = (vp.e - 2 * c.e + vm.e) / h2;
  const double g_uu = (up.g - 2 * c.g + um.g) / h2;
  const double f_uv = (pp.f - pm.f - mp.f + mm.f) / (4 * h2);

  Eigen::Matrix3d a;
  a << -0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v,
       f_v - 0.5 * g_u, c.e, c.f,
       0.5 * g_v, c.f, c.g;
  Eigen::Matrix3d b;
  b << 0.0, 0.5 * e_v, 0.5 * g_u,
       0.5 * e_v, c.e, c.f,
       0.5 * g_u, c.f, c.g;
  return (a.determinant() - b.determinant()) / (det * det);
}

namespace {

using Christoffel = std::vector<Eigen::MatrixXd>;  // gamma[k](i, j) = Gamma^k_ij

Christoffel christoffel_at(const Model& model, const Eigen::VectorXd& theta, double step) {
  const Eigen::Index n = theta.size();
  const Eigen::MatrixXd g = analytic_metric(model, theta).g;
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n));  // dg[m] = d_m g
  for (Eigen::Index m = 0; m < n; ++m) {
    Eigen::VectorXd plus = theta, minus = theta;
    plus(m) += step;
    minus(m) -= step;
    dg[static_cast<std::size_t>(m)] = (analytic_metric(model, plus).g - analytic_metric(model, minus).g) / (2 * step);
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (lu.rank() < n) throw Error(ErrorCode::DegenerateSection, "metric is not full rank");
  const Eigen::MatrixXd inv = lu.inverse();

  Christoffel out(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        double sum = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
          sum += inv(k, l) * (dg[static_cast<std::size_t>(i)](l, j) + dg[static_cast<std::size_t>(j)](l, i) -
                              dg[static_cast<std::size_t>(l)](i, j));
        }
        out[static_cast<std::size_t>(k)](i, j) = 0.5 * sum;
      }
  return out;
}

}  // namespace

double scalar_curvature(const Model& model, const Eigen::VectorXd& theta, double step) {
  const Eigen::Index n = theta.size();
  const MetricTensor metric = analytic_metric(model, theta);
  if (rank_analysis(metric).rank < n) {
    throw Error(ErrorCode::DegenerateSection, "scalar curvature needs a full-rank metric");
  }
  const Christoffel gamma = christoffel_at(model, theta, step);
  std::vector<Christoffel> d_gamma(static_cast<std::size_t>(n));  // d_gamma[m][k](i, j) = d_m Gamma^k_ij
  for (Eigen::Index m = 0; m < n; ++m) {
    Eigen::VectorXd plus = theta, minus = theta;
    plus(m) += step;
    minus(m) -= step;
    const Christoffel gp = christoffel_at(model, plus, step), gm = christoffel_at(model, minus, step);
    Christoffel d(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (gp[k] - gm[k]) / (2 * step);
    d_gamma[static_cast<std::size_t>(m)] = std::move(d);
  }
  const auto G = [&](Eigen::Index k, Eigen::Index i, Eigen::Index j) { return gamma[static_cast<std::size_t>(k)](i, j); };
  const auto dG = [&](Eigen::Index m, Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    return d_gamma[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)](i, j);
  };

  // Ricci_{sv} = R^r_{s r v}, R^r_{s m v} = d_m G^r_{vs} - d_v G^r_{ms} + G^r_{ml} G^l_{vs} - G^r_{vl} G^l_{ms}
  Eigen::MatrixXd ricci = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index v = 0; v < n; ++v) {
      double sum = 0.0;
      for (Eigen::Index r = 0; r < n; ++r) {
        sum += dG(r, r, v, s) - dG(v, r, r, s);
        for (Eigen::Index l = 0; l < n; ++l) sum += G(r, r, l) * G(l, v, s) - G(r, v, l) * G(l, r, s);
      }
      ricci(s, v) = sum;
    }
  const Eigen::MatrixXd inv = metric.g.inverse();
  return (inv.cwiseProduct(ricci)).sum();
}

std::string Classification::label() const {
  switch (kind) {
    case Kind::Flat: return "flat";
    case Kind::Sphere: return "sphere";
    case Kind::Degenerate: return "degenerate";
    case Kind::Generic: return "generic";
  }
  return "generic";
}

CurvatureReport classify(const MetricField& field) {
  for (const GridAxis& axis : field.axes) {
    if (axis.count < 3) {
      throw Error(ErrorCode::InsufficientGrid, "axis '" + axis.parameter + "' needs at least 3 nodes, has " +
                                                   std::to_string(axis.count));
    }
  }
  if (field.tensors.empty() || !field.model) throw Error(ErrorCode::InsufficientGrid, "empty metric field");
  const Model& model = *field.model;
  const std::size_t dim = model.circuit.size();
  const std::size_t nodes = field.tensors.size();

  CurvatureReport report;
  int min_rank = std::numeric_limits<int>::max(), max_rank = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const RankInfo info = rank_analysis(field.tensors[i]);
    if (i == 0) {
      report.rank = info.rank;
      report.null_directions = info.null_directions;
    }
    min_rank = std::min(min_rank, info.rank);
    max_rank = std::max(max_rank, info.rank);
    report.metric_variation =
        std::max(report.metric_variation, (field.tensors[i].g - field.tensors[0].g).cwiseAbs().maxCoeff());
  }

  // Section curvature at every node for every nondegenerate parameter pair.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = p + 1; q < dim; ++q) pairs.emplace_back(p, q);
  std::vector<std::vector<std::optional<double>>> curvature(pairs.size(), std::vector<std::optional<double>>(nodes));
  std::vector<double> min_det(pairs.size(), std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < pairs.size(); ++s)
    for (std::size_t i = 0; i < nodes; ++i)
      min_det[s] = std::min(min_det[s], section_det(field.tensors[i], pairs[s].first, pairs[s].second));

  parallel_for(pairs.size() * nodes, [&](std::size_t task) {
    const std::size_t s = task / nodes, i = task % nodes;
    if (section_det(field.tensors[i], pairs[s].first, pairs[s].second) > kSectionDetTol) {
      curvature[s][i] = gauss_curvature(model, field.nodes[i], pairs[s]);
    }
  });
  for (const auto& row : curvature)
    for (const auto& k : row)
      if (k) report.max_abs_section_curvature = std::max(report.max_abs_section_curvature, std::abs(*k));

  // Section with the best-conditioned determinant over the whole grid.
  std::optional<std::size_t> best;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    if (min_det[s] > kSectionDetTol && (!best || min_det[s] > min_det[*best])) best = s;
  }
  if (best) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (const auto& k : curvature[*best]) {
      lo = std::min(lo, *k);
      hi = std::max(hi, *k);
      sum += *k;
    }
    report.section = pairs[*best];
    report.gaussian_curvature = sum / static_cast<double>(nodes);
    report.curvature_spread = hi - lo;
  }
  if (min_rank == static_cast<int>(dim) && dim >= 2) {
    report.scalar_curvature = scalar_curvature(model, field.nodes.front());
  }

  Classification& c = report.classification;
  if (report.metric_variation <= kFlatMetricTol && report.max_abs_section_curvature <= kFlatCurvatureTol) {
    c.kind = Classification::Kind::Flat;
  } else if (best && min_rank == 2 && max_rank == 2 && *report.gaussian_curvature > 0.0 &&
             report.curvature_spread <= kSphereRelativeTol * *report.gaussian_curvature) {
    c.kind = Classification::Kind::Sphere;
    c.radius = 1.0 / std::sqrt(*report.gaussian_curvature);
  } else if (max_rank < static_cast<int>(dim)) {
    c.kind = Classification::Kind::Degenerate;
    c.rank = max_rank;
  } else {
    c.kind = Classification::Kind::Generic;
  }
  return report;
}

}  // namespace statemetric
