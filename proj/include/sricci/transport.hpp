#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "sricci/complex.hpp"
#include "sricci/lp.hpp"

namespace sricci {

/// All-pairs breadth-first hop distances over an undirected adjacency list.
/// Unreachable pairs have no distance.
class HopMetric {
 public:
  HopMetric() = default;

  explicit HopMetric(const std::vector<std::vector<std::size_t>>& adjacency)
      : n_(adjacency.size()), hops_(n_ * n_, kUnreachable) {
    for (std::size_t src = 0; src < n_; ++src) {
      int* row = &hops_[src * n_];
      row[src] = 0;
      std::queue<std::size_t> q;
      q.push(src);
      while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        for (std::size_t v : adjacency[u])
          if (row[v] == kUnreachable) {
            row[v] = row[u] + 1;
            q.push(v);
          }
      }
    }
  }

  std::size_t size() const { return n_; }

  std::optional<int> distance(std::size_t a, std::size_t b) const {
    const int h = hops_.at(a * n_ + b);
    if (h == kUnreachable) return std::nullopt;
    return h;
  }

  bool connected() const {
    return std::none_of(hops_.begin(), hops_.end(), [](int h) { return h == kUnreachable; });
  }

 private:
  static constexpr int kUnreachable = -1;
  std::size_t n_ = 0;
  std::vector<int> hops_;
};

template <class M>
concept GroundMetric = requires(const M& m, std::size_t a, std::size_t b) {
  { m.distance(a, b) } -> std::same_as<std::optional<int>>;
};

struct FaceNeighbor {
  std::size_t face;    // adjacent i-face
  std::size_t shared;  // the unique common (i-1)-face
};

/// For every i-face, the i-faces sharing an (i-1)-face with it.
struct FaceAdjacency {
  int dim = 0;
  std::vector<std::vector<FaceNeighbor>> neighbors;

  std::optional<std::size_t> shared_face(std::size_t a, std::size_t b) const {
    for (const auto& n : neighbors.at(a))
      if (n.face == b) return n.shared;
    return std::nullopt;
  }

  std::vector<std::vector<std::size_t>> lists() const {
    std::vector<std::vector<std::size_t>> out(neighbors.size());
    for (std::size_t f = 0; f < neighbors.size(); ++f)
      for (const auto& n : neighbors[f]) out[f].push_back(n.face);
    return out;
  }
};

inline FaceAdjacency face_adjacency(const SimplicialComplex& k, int i) {
  if (i < 1 || i > k.dim())
    throw Error(ErrorKind::DimensionOutOfRange, "face adjacency needs 1 <= i <= " + std::to_string(k.dim()));
  FaceAdjacency adj{i, std::vector<std::vector<FaceNeighbor>>(k.count(i))};
  for (std::size_t f = 0; f < k.count(i); ++f) {
    for (std::size_t e : k.boundary(i, f))
      for (std::size_t g : k.cofacets(i - 1, e))
        if (g != f) adj.neighbors[f].push_back({g, e});
    std::sort(adj.neighbors[f].begin(), adj.neighbors[f].end(),
              [](const FaceNeighbor& x, const FaceNeighbor& y) { return x.face < y.face; });
  }
  return adj;
}

/// Hop metric on the i-faces of a complex.
struct FaceMetric : HopMetric {
  int dim = 0;

  FaceMetric() = default;
  FaceMetric(int d, const FaceAdjacency& adjacency) : HopMetric(adjacency.lists()), dim(d) {}
};

inline FaceMetric face_metric(const SimplicialComplex& k, int i) { return {i, face_adjacency(k, i)}; }

struct Mass {
  std::size_t point;
  double mass;
};

/// Finitely supported measure; entries sorted by point, no duplicates.
struct FaceMeasure {
  std::vector<Mass> support;

  double total() const {
    double sum = 0.0;
    for (const auto& m : support) sum += m.mass;
    return sum;
  }

  double at(std::size_t point) const {
    auto it = std::lower_bound(support.begin(), support.end(), point,
                               [](const Mass& m, std::size_t p) { return m.point < p; });
    return (it != support.end() && it->point == point) ? it->mass : 0.0;
  }

  static FaceMeasure dirac(std::size_t point) { return {{{point, 1.0}}}; }
};

struct Transfer {
  std::size_t from;
  std::size_t to;
  double mass;
};

/// A transport plan; pairs not listed carry no mass.
struct Coupling {
  std::vector<Transfer> transfers;

  double row_sum(std::size_t from) const {
    double s = 0.0;
    for (const auto& t : transfers)
      if (t.from == from) s += t.mass;
    return s;
  }

  double column_sum(std::size_t to) const {
    double s = 0.0;
    for (const auto& t : transfers)
      if (t.to == to) s += t.mass;
    return s;
  }
};

struct TransportResult {
  double value = 0.0;
  Coupling coupling;
};

/// A 1-Lipschitz function on the union of two supports.
struct LipschitzCertificate {
  std::vector<Mass> values;  // point -> f(point), reusing the Mass layout

  double at(std::size_t point) const {
    for (const auto& v : values)
      if (v.point == point) return v.mass;
    return 0.0;
  }
};

struct DualResult {
  double value = 0.0;
  LipschitzCertificate certificate;
};

namespace detail {

inline std::vector<std::size_t> support_union(const FaceMeasure& mu, const FaceMeasure& nu) {
  std::vector<std::size_t> pts;
  for (const auto& m : mu.support) pts.push_back(m.point);
  for (const auto& m : nu.support) pts.push_back(m.point);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <GroundMetric M>
int finite_distance(const M& metric, std::size_t a, std::size_t b) {
  const auto d = metric.distance(a, b);
  if (!d)
    throw Error(ErrorKind::DisconnectedSupports,
                "faces " + std::to_string(a) + " and " + std::to_string(b) + " are not connected");
  return *d;
}

constexpr double kMassEps = 1e-14;

}  // namespace detail

/// Exact 1-Wasserstein distance with an optimal coupling. Mass common to both
/// measures stays in place; the excess is routed by successive shortest
/// augmenting paths on the bipartite transport network.
template <GroundMetric M>
TransportResult wasserstein(const FaceMeasure& mu, const FaceMeasure& nu, const M& metric) {
  for (const auto& a : mu.support)
    for (const auto& b : nu.support) detail::finite_distance(metric, a.point, b.point);

  TransportResult out;
  std::vector<Mass> sources, sinks;
  for (std::size_t p : detail::support_union(mu, nu)) {
    const double a = mu.at(p), b = nu.at(p);
    const double kept = std::min(a, b);
    if (kept > 0.0) out.coupling.transfers.push_back({p, p, kept});
    if (a - kept > detail::kMassEps) sources.push_back({p, a - kept});
    if (b - kept > detail::kMassEps) sinks.push_back({p, b - kept});
  }

  const std::size_t ns = sources.size(), nt = sinks.size();
  std::vector<int> cost(ns * nt);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) cost[i * nt + j] = detail::finite_distance(metric, sources[i].point, sinks[j].point);
  std::vector<double> flow(ns * nt, 0.0);

  // Nodes: 0..ns-1 sources, ns..ns+nt-1 sinks. Bellman-Ford from every source
  // with spare supply to the cheapest sink with spare demand.
  const std::size_t nodes = ns + nt;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<double> dist(nodes, kInf);
    std::vector<std::ptrdiff_t> pred(nodes, -1);
    for (std::size_t i = 0; i < ns; ++i)
      if (sources[i].mass > detail::kMassEps) dist[i] = 0.0;
    for (std::size_t round = 0; round < nodes; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
          const double c = cost[i * nt + j];
          if (dist[i] + c < dist[ns + j]) {
            dist[ns + j] = dist[i] + c;
            pred[ns + j] = static_cast<std::ptrdiff_t>(i);
            changed = true;
          }
          if (flow[i * nt + j] > 0.0 && dist[ns + j] - c < dist[i]) {
            dist[i] = dist[ns + j] - c;
            pred[i] = static_cast<std::ptrdiff_t>(ns + j);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::ptrdiff_t target = -1;
    for (std::size_t j = 0; j < nt; ++j)
      if (sinks[j].mass > detail::kMassEps && dist[ns + j] < kInf &&
          (target < 0 || dist[ns + j] < dist[static_cast<std::size_t>(target)]))
        target = static_cast<std::ptrdiff_t>(ns + j);
    if (target < 0) break;

    // Walk back to the originating source, collecting the bottleneck.
    double push = sinks[static_cast<std::size_t>(target) - ns].mass;
    std::size_t node = static_cast<std::size_t>(target);
    while (pred[node] >= 0) {
      const auto prev = static_cast<std::size_t>(pred[node]);
      if (node < ns) push = std::min(push, flow[node * nt + (prev - ns)]);  // backward arc sink->source
      node = prev;
    }
    push = std::min(push, sources[node].mass);

    sources[node].mass -= push;
    sinks[static_cast<std::size_t>(target) - ns].mass -= push;
    node = static_cast<std::size_t>(target);
    while (pred[node] >= 0) {
      const auto prev = static_cast<std::size_t>(pred[node]);
      if (node >= ns)
        flow[prev * nt + (node - ns)] += push;
      else
        flow[node * nt + (prev - ns)] -= push;
      node = prev;
    }
  }

  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j)
      if (flow[i * nt + j] > 0.0) {
        out.coupling.transfers.push_back({sources[i].point, sinks[j].point, flow[i * nt + j]});
        out.value += flow[i * nt + j] * cost[i * nt + j];
      }
  std::sort(out.coupling.transfers.begin(), out.coupling.transfers.end(),
            [](const Transfer& x, const Transfer& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });
  return out;
}

/// Kantorovich-Rubinstein dual: maximize sum f (mu - nu) over 1-Lipschitz f on
/// the support union. f is pinned to 0 at the first point and shifted by its
/// distance to that point, which makes every constraint right-hand side
/// nonnegative by the triangle inequality.
template <GroundMetric M>
DualResult kantorovich_dual(const FaceMeasure& mu, const FaceMeasure& nu, const M& metric) {
  const auto pts = detail::support_union(mu, nu);
  const std::size_t n = pts.size();
  DualResult out;
  if (n == 0) return out;

  Eigen::MatrixXi dist(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      dist(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = detail::finite_distance(metric, pts[a], pts[b]);
  auto d = [&](std::size_t a, std::size_t b) {
    return static_cast<double>(dist(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
  };

  // Variables h_a = f_a + d(a, 0) for a = 1..n-1, h_0 = 0.
  const std::size_t vars = n - 1;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (std::size_t a = 1; a < n; ++a) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vars));
    row(static_cast<Eigen::Index>(a - 1)) = 1.0;
    rows.push_back(row);
    rhs.push_back(2.0 * d(a, 0));
    for (std::size_t b = 1; b < n; ++b) {
      if (a == b) continue;
      Eigen::VectorXd pair = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vars));
      pair(static_cast<Eigen::Index>(a - 1)) = 1.0;
      pair(static_cast<Eigen::Index>(b - 1)) = -1.0;
      rows.push_back(pair);
      rhs.push_back(d(a, b) + d(a, 0) - d(b, 0));
    }
  }

  Eigen::VectorXd gain(static_cast<Eigen::Index>(vars));
  double offset = 0.0;
  for (std::size_t a = 1; a < n; ++a) {
    const double g = mu.at(pts[a]) - nu.at(pts[a]);
    gain(static_cast<Eigen::Index>(a - 1)) = g;
    offset += g * d(a, 0);
  }

  out.certificate.values.push_back({pts[0], 0.0});
  if (vars == 0) return out;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(vars));
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  const LpSolution lp = maximize_leq(a, b, gain);
  out.value = lp.objective - offset;
  for (std::size_t p = 1; p < n; ++p)
    out.certificate.values.push_back({pts[p], lp.x(static_cast<Eigen::Index>(p - 1)) - d(p, 0)});
  return out;
}

}  // namespace sricci
