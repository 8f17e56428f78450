#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sricci/curvature.hpp"
#include "sricci/outcome.hpp"
#include "sricci/spectral.hpp"
#include "sricci/transport.hpp"

namespace sricci {

/// Graph on the i-faces of a complex with an edge between faces sharing an
/// (i-1)-face. Vertex v is the i-face with index v.
struct DualGraph {
  int dim = 0;
  std::vector<std::vector<std::size_t>> adjacency;  // ascending
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // first < second, lexicographic
  HopMetric metric;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t degree(std::size_t v) const { return adjacency.at(v).size(); }

  bool has_edge(std::size_t x, std::size_t y) const {
    const auto& nb = adjacency.at(x);
    return std::binary_search(nb.begin(), nb.end(), y);
  }
};

inline DualGraph build_dual(const SimplicialComplex& k, int i) {
  if (!k.is_pure()) throw Error(ErrorKind::NotPure, "dual graph needs a pure complex");
  DualGraph g;
  g.dim = i;
  g.adjacency = face_adjacency(k, i).lists();
  for (std::size_t v = 0; v < g.adjacency.size(); ++v) {
    auto& nb = g.adjacency[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (std::size_t u : nb)
      if (v < u) g.edges.emplace_back(v, u);
  }
  g.metric = HopMetric(g.adjacency);
  return g;
}

/// Uniform measure on the neighbours of x (simple random walk, no laziness).
inline FaceMeasure neighbor_measure(const DualGraph& g, std::size_t x) {
  const auto& nb = g.adjacency.at(x);
  if (nb.empty()) throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(x) + " has no neighbours");
  FaceMeasure m;
  for (std::size_t y : nb) m.support.push_back({y, 1.0 / static_cast<double>(nb.size())});
  return m;
}

/// Ollivier curvature 1 - W(m_x, m_y) of a graph edge.
inline double graph_ricci(const DualGraph& g, std::size_t x, std::size_t y) {
  if (!g.has_edge(x, y)) throw Error(ErrorKind::NotAdjacent, "graph curvature is evaluated on edges");
  return 1.0 - wasserstein(neighbor_measure(g, x), neighbor_measure(g, y), g.metric).value;
}

struct GraphCurvature {
  std::vector<double> per_edge;  // aligned with DualGraph::edges
  double k_min = std::numeric_limits<double>::infinity();
};

inline GraphCurvature graph_curvature(const DualGraph& g) {
  GraphCurvature c;
  for (const auto& [x, y] : g.edges) {
    c.per_edge.push_back(graph_ricci(g, x, y));
    c.k_min = std::min(c.k_min, c.per_edge.back());
  }
  return c;
}

/// Spectrum of I - D^{-1/2} A D^{-1/2}.
inline Spectrum normalized_graph_spectrum(const DualGraph& g, double zero_threshold = kDefaultZeroThreshold) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " is isolated");
  for (const auto& [x, y] : g.edges) {
    const double value = -1.0 / std::sqrt(static_cast<double>(g.degree(x) * g.degree(y)));
    s(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = value;
    s(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = value;
  }
  return spectrum_of_symmetric(s, zero_threshold);
}

struct HjRelationCheck {
  Outcome outcome = Outcome::HypothesisUnmet;
  std::optional<ErrorKind> unmet;
  double factor = 0.0;  // (i+1)/2
  std::vector<double> lambda;  // top down Laplacian, ascending
  std::vector<double> mu;      // dual normalized Laplacian, ascending
  std::size_t lambda_zeros = 0;
  std::size_t mu_zeros = 0;
  bool positional_match = false;
  double positional_deviation = std::numeric_limits<double>::infinity();
  bool nonzero_match = false;
  double nonzero_deviation = std::numeric_limits<double>::infinity();
};

/// lambda_k = ((i+1)/2) mu_k between the top down Laplacian of an orientable
/// complex with all codimension-one degrees equal and its dual graph. The
/// outcome follows the nonzero parts; positional pairing and zero
/// multiplicities are reported alongside.
inline HjRelationCheck hj_relation_check(const SimplicialComplex& k, double zero_threshold = kDefaultZeroThreshold) {
  HjRelationCheck c;
  auto unmet = [&](ErrorKind kind) {
    c.unmet = kind;
    return c;
  };
  if (!k.is_pure()) return unmet(ErrorKind::NotPure);
  if (k.dim() < 1) return unmet(ErrorKind::DimensionOutOfRange);
  if (!is_regular(k, k.dim() - 1).regular) return unmet(ErrorKind::NotRegular);
  if (!orient(k)) return unmet(ErrorKind::NotOrientable);

  const int i = k.dim();
  c.factor = (i + 1) / 2.0;
  const auto lambda = spectrum(down_laplacian(k, i, delta_weights(k)), zero_threshold);
  const auto mu = normalized_graph_spectrum(build_dual(k, i), zero_threshold);
  c.lambda = lambda.eigenvalues;
  c.mu = mu.eigenvalues;
  c.lambda_zeros = lambda.zero_count();
  c.mu_zeros = mu.zero_count();

  std::vector<double> scaled = c.mu;
  for (double& v : scaled) v *= c.factor;
  if (auto dev = multiset_deviation(c.lambda, scaled)) {
    c.positional_deviation = *dev;
    c.positional_match = *dev <= kBoundTolerance;
  }
  std::vector<double> scaled_nonzero = mu.nonzero();
  for (double& v : scaled_nonzero) v *= c.factor;
  if (auto dev = multiset_deviation(lambda.nonzero(), scaled_nonzero)) {
    c.nonzero_deviation = *dev;
    c.nonzero_match = *dev <= kBoundTolerance;
  }
  c.outcome = pass_if(c.nonzero_match);
  return c;
}

struct CorollaryRelationCheck {
  Outcome outcome = Outcome::HypothesisUnmet;
  std::optional<ErrorKind> unmet;
  double k = 0.0;        // face curvature lower bound
  double k_graph = 0.0;  // dual graph curvature lower bound
  double lhs = 0.0;      // 1 - k_graph / 2
  double slack = 0.0;    // lhs - k
};

/// 1 - k^G/2 >= k, where k^G bounds the dual graph curvature from below and
/// must be positive.
inline CorollaryRelationCheck corollary_relation_check(const SimplicialComplex& k, CheckOptions opt = {},
                                                       const GlobalCurvatureSummary* summary = nullptr) {
  CorollaryRelationCheck c;
  auto unmet = [&](ErrorKind kind) {
    c.unmet = kind;
    return c;
  };
  if (!k.is_pure()) return unmet(ErrorKind::NotPure);
  if (k.dim() < 1) return unmet(ErrorKind::DimensionOutOfRange);
  if (!is_regular(k, k.dim() - 1).regular) return unmet(ErrorKind::NotRegular);
  if (!orient(k)) return unmet(ErrorKind::NotOrientable);

  std::optional<GlobalCurvatureSummary> own;
  if (!summary) own = global_curvature(FaceGeometry::top(k), 0, opt.ricci);
  c.k = (summary ? *summary : *own).k_min;
  c.k_graph = graph_curvature(build_dual(k, k.dim())).k_min;
  c.lhs = 1.0 - c.k_graph / 2.0;
  c.slack = c.lhs - c.k;
  if (!(c.k_graph > 0.0)) return unmet(ErrorKind::NonPositiveGraphCurvature);
  c.outcome = pass_if(c.slack >= -kBoundTolerance);
  return c;
}

}  // namespace sricci
