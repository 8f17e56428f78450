#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sricci/error.hpp"

namespace sricci {

using VertexId = std::uint32_t;
using VertexLabel = std::int64_t;

/// A face stored in canonical form: strictly ascending dense vertex ids.
struct Face {
  std::vector<VertexId> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  auto operator<=>(const Face&) const = default;
  bool operator==(const Face&) const = default;
};

/// A face together with its orientation relative to the ascending order.
struct OrientedFace {
  Face face;
  int sign = 1;
};

/// One term (-1)^j [F_j] of a boundary expansion.
struct BoundaryTerm {
  Face face;
  int sign;
};

/// The codimension-one faces of [F], in order of the removed position j, each
/// carrying sgn([F_j], d[F]) = sign(F) * (-1)^j.
inline std::vector<BoundaryTerm> boundary_with_signs(const OrientedFace& oriented) {
  const auto& v = oriented.face.vertices;
  std::vector<BoundaryTerm> terms;
  if (v.size() <= 1) return terms;  // boundary of a vertex is the empty face
  terms.reserve(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Face sub;
    sub.vertices.reserve(v.size() - 1);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (k != j) sub.vertices.push_back(v[k]);
    terms.push_back({std::move(sub), oriented.sign * (j % 2 == 0 ? 1 : -1)});
  }
  return terms;
}

class SimplicialComplex {
 public:
  /// Inclusion-closure of a facet list given in original vertex labels.
  /// Dense ids follow the order of first appearance of each label.
  static SimplicialComplex build(const std::vector<std::vector<VertexLabel>>& facets) {
    if (facets.empty()) throw Error(ErrorKind::EmptyInput, "facet list is empty");

    SimplicialComplex k;
    std::unordered_map<VertexLabel, VertexId> dense;
    std::vector<std::vector<VertexId>> tops;
    tops.reserve(facets.size());
    int max_dim = -1;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      const auto& raw = facets[f];
      if (raw.empty())
        throw Error(ErrorKind::MalformedFacet, "facet " + std::to_string(f) + " is empty");
      std::vector<VertexId> ids;
      ids.reserve(raw.size());
      for (VertexLabel label : raw) {
        if (label < 0)
          throw Error(ErrorKind::MalformedFacet,
                      "facet " + std::to_string(f) + " has negative vertex " + std::to_string(label));
        auto [it, inserted] = dense.try_emplace(label, static_cast<VertexId>(k.labels_.size()));
        if (inserted) k.labels_.push_back(label);
        ids.push_back(it->second);
      }
      std::sort(ids.begin(), ids.end());
      if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw Error(ErrorKind::MalformedFacet, "facet " + std::to_string(f) + " repeats a vertex");
      max_dim = std::max(max_dim, static_cast<int>(ids.size()) - 1);
      tops.push_back(std::move(ids));
    }

    // Close downward one dimension at a time so every face is generated from
    // its cofaces only once per level.
    std::vector<std::vector<Face>> levels(static_cast<std::size_t>(max_dim + 1));
    for (auto& ids : tops) levels[ids.size() - 1].push_back(Face{std::move(ids)});
    for (int d = max_dim; d >= 0; --d) {
      auto& level = levels[static_cast<std::size_t>(d)];
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
      if (d == 0) break;
      auto& below = levels[static_cast<std::size_t>(d - 1)];
      for (const auto& face : level)
        for (auto& term : boundary_with_signs({face, 1})) below.push_back(std::move(term.face));
    }
    k.faces_ = std::move(levels);
    k.index_cache();
    return k;
  }

  int dim() const { return static_cast<int>(faces_.size()) - 1; }
  std::size_t vertex_count() const { return labels_.size(); }

  std::size_t count(int d) const {
    return (d < 0 || d > dim()) ? 0 : faces_[static_cast<std::size_t>(d)].size();
  }

  std::span<const Face> faces(int d) const {
    if (d < 0 || d > dim()) return {};
    return faces_[static_cast<std::size_t>(d)];
  }

  const Face& face(int d, std::size_t idx) const { return faces_.at(static_cast<std::size_t>(d)).at(idx); }

  std::optional<std::size_t> find(const Face& f) const {
    const int d = f.dim();
    if (d < 0 || d > dim()) return std::nullopt;
    const auto& map = index_[static_cast<std::size_t>(d)];
    auto it = map.find(f.vertices);
    if (it == map.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Face& f) const {
    if (auto idx = find(f)) return *idx;
    throw Error(ErrorKind::FaceNotInComplex, "face " + describe(f) + " is not in the complex");
  }

  /// Indices of the (d+1)-faces containing the d-face `idx`, ascending.
  std::span<const std::size_t> cofacets(int d, std::size_t idx) const {
    if (d < 0 || d >= dim()) return {};
    return cofacets_[static_cast<std::size_t>(d)][idx];
  }

  /// Indices of the (d-1)-faces of the d-face `idx`; entry j drops vertex j,
  /// so its incidence sign is (-1)^j.
  std::span<const std::size_t> boundary(int d, std::size_t idx) const {
    if (d <= 0 || d > dim()) return {};
    return boundary_[static_cast<std::size_t>(d)][idx];
  }

  /// Inclusion-maximal faces, ordered lexicographically by vertex sequence.
  const std::vector<Face>& facets() const { return facets_; }

  bool is_pure() const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Face& f) { return f.dim() == dim(); });
  }

  VertexLabel label(VertexId v) const { return labels_.at(v); }
  const std::vector<VertexLabel>& labels() const { return labels_; }

  /// Original labels of a face, ascending by label.
  std::vector<VertexLabel> labels_of(const Face& f) const {
    std::vector<VertexLabel> out;
    out.reserve(f.vertices.size());
    for (VertexId v : f.vertices) out.push_back(labels_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string describe(const Face& f) const {
    std::string s = "[";
    for (std::size_t j = 0; j < f.vertices.size(); ++j) {
      if (j) s += ",";
      const VertexId v = f.vertices[j];
      s += std::to_string(v < labels_.size() ? labels_[v] : static_cast<VertexLabel>(v));
    }
    return s + "]";
  }

 private:
  void index_cache() {
    const auto levels = faces_.size();
    index_.assign(levels, {});
    cofacets_.assign(levels, {});
    boundary_.assign(levels, {});
    for (std::size_t d = 0; d < levels; ++d) {
      for (std::size_t i = 0; i < faces_[d].size(); ++i) index_[d].emplace(faces_[d][i].vertices, i);
      cofacets_[d].assign(faces_[d].size(), {});
    }
    for (std::size_t d = 1; d < levels; ++d) {
      boundary_[d].resize(faces_[d].size());
      for (std::size_t i = 0; i < faces_[d].size(); ++i) {
        for (const auto& term : boundary_with_signs({faces_[d][i], 1})) {
          const std::size_t sub = index_[d - 1].at(term.face.vertices);
          boundary_[d][i].push_back(sub);
          cofacets_[d - 1][sub].push_back(i);
        }
      }
    }
    facets_.clear();
    for (std::size_t d = 0; d < levels; ++d)
      for (std::size_t i = 0; i < faces_[d].size(); ++i)
        if (d + 1 == levels || cofacets_[d][i].empty()) facets_.push_back(faces_[d][i]);
    std::sort(facets_.begin(), facets_.end(),
              [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
  }

  std::vector<VertexLabel> labels_;
  std::vector<std::vector<Face>> faces_;
  std::vector<std::map<std::vector<VertexId>, std::size_t>> index_;
  std::vector<std::vector<std::vector<std::size_t>>> cofacets_;
  std::vector<std::vector<std::vector<std::size_t>>> boundary_;
  std::vector<Face> facets_;
};

enum class WeightScheme { Unit, Delta, Custom };

constexpr std::string_view to_string(WeightScheme s) {
  switch (s) {
    case WeightScheme::Unit: return "unit";
    case WeightScheme::Delta: return "delta";
    case WeightScheme::Custom: return "custom";
  }
  return "unknown";
}

/// Positive weight per nonempty face, indexed like SimplicialComplex::faces.
/// The empty face always has weight 0.
class WeightAssignment {
 public:
  WeightAssignment(WeightScheme scheme, std::vector<std::vector<double>> values)
      : scheme_(scheme), values_(std::move(values)) {
    for (std::size_t d = 0; d < values_.size(); ++d)
      for (std::size_t i = 0; i < values_[d].size(); ++i)
        if (!(values_[d][i] > 0.0) || !std::isfinite(values_[d][i]))
          throw Error(ErrorKind::InvalidWeights, "weight of face " + std::to_string(i) + " in dimension " +
                                                     std::to_string(d) + " is not a positive finite number");
  }

  WeightScheme scheme() const { return scheme_; }

  double operator()(int d, std::size_t idx) const {
    if (d < 0) return 0.0;
    return values_.at(static_cast<std::size_t>(d)).at(idx);
  }

  std::span<const double> dimension(int d) const {
    if (d < 0 || static_cast<std::size_t>(d) >= values_.size()) return {};
    return values_[static_cast<std::size_t>(d)];
  }

 private:
  WeightScheme scheme_;
  std::vector<std::vector<double>> values_;
};

/// Sum of the weights of the cofacets of a face.
inline double degree(const SimplicialComplex& k, int d, std::size_t idx, const WeightAssignment& w) {
  double sum = 0.0;
  for (std::size_t up : k.cofacets(d, idx)) sum += w(d + 1, up);
  return sum;
}

inline double degree(const SimplicialComplex& k, const Face& f, const WeightAssignment& w) {
  return degree(k, f.dim(), k.index_of(f), w);
}

inline WeightAssignment unit_weights(const SimplicialComplex& k) {
  std::vector<std::vector<double>> values;
  for (int d = 0; d <= k.dim(); ++d) values.emplace_back(k.count(d), 1.0);
  return {WeightScheme::Unit, std::move(values)};
}

/// Facets get weight 1 and every other face its degree, assigned top-down.
inline WeightAssignment delta_weights(const SimplicialComplex& k) {
  if (!k.is_pure()) throw Error(ErrorKind::NotPure, "delta weights need a pure complex");
  std::vector<std::vector<double>> values(static_cast<std::size_t>(k.dim() + 1));
  values.back().assign(k.count(k.dim()), 1.0);
  for (int d = k.dim() - 1; d >= 0; --d) {
    auto& level = values[static_cast<std::size_t>(d)];
    const auto& above = values[static_cast<std::size_t>(d + 1)];
    level.assign(k.count(d), 0.0);
    for (std::size_t i = 0; i < level.size(); ++i)
      for (std::size_t up : k.cofacets(d, i)) level[i] += above[up];
  }
  return {WeightScheme::Delta, std::move(values)};
}

/// Signs of the top-dimensional faces relative to ascending order.
struct Orientation {
  int dim = 0;
  std::vector<int> signs;
};

/// Breadth-first sign propagation over facet adjacency. Returns nullopt when
/// some codimension-one face has three or more cofacets or propagation closes
/// inconsistently.
inline std::optional<Orientation> orient(const SimplicialComplex& k) {
  if (!k.is_pure()) throw Error(ErrorKind::NotPure, "orientability is decided for pure complexes only");
  const int top = k.dim();
  if (top < 1) throw Error(ErrorKind::DimensionOutOfRange, "orientation needs dimension >= 1");

  // sgn([E], d[F]) for the j-th boundary face is (-1)^j.
  auto incidence = [&](std::size_t f, std::size_t e) {
    const auto bd = k.boundary(top, f);
    const auto pos = static_cast<std::size_t>(std::find(bd.begin(), bd.end(), e) - bd.begin());
    return pos % 2 == 0 ? 1 : -1;
  };

  for (std::size_t e = 0; e < k.count(top - 1); ++e)
    if (k.cofacets(top - 1, e).size() > 2) return std::nullopt;

  Orientation o{top, std::vector<int>(k.count(top), 0)};
  for (std::size_t seed = 0; seed < o.signs.size(); ++seed) {
    if (o.signs[seed] != 0) continue;
    o.signs[seed] = 1;
    std::queue<std::size_t> pending;
    pending.push(seed);
    while (!pending.empty()) {
      const std::size_t f = pending.front();
      pending.pop();
      for (std::size_t e : k.boundary(top, f)) {
        for (std::size_t g : k.cofacets(top - 1, e)) {
          if (g == f) continue;
          const int want = -o.signs[f] * incidence(f, e) * incidence(g, e);
          if (o.signs[g] == 0) {
            o.signs[g] = want;
            pending.push(g);
          } else if (o.signs[g] != want) {
            return std::nullopt;
          }
        }
      }
    }
  }
  return o;
}

struct Regularity {
  bool regular = false;
  double degree = 0.0;  // common degree when regular
};

/// Whether every j-face has the same degree under delta weights.
inline Regularity is_regular(const SimplicialComplex& k, int j) {
  if (!k.is_pure()) throw Error(ErrorKind::NotPure, "regularity is defined for pure complexes only");
  if (j < 0 || j > k.dim()) throw Error(ErrorKind::DimensionOutOfRange, "no faces of dimension " + std::to_string(j));
  const auto w = delta_weights(k);
  Regularity r;
  if (k.count(j) == 0) return r;
  r.degree = degree(k, j, 0, w);
  r.regular = true;
  for (std::size_t i = 1; i < k.count(j); ++i)
    if (std::abs(degree(k, j, i, w) - r.degree) > 1e-12 * std::max(1.0, r.degree)) r.regular = false;
  if (!r.regular) r.degree = 0.0;
  return r;
}

}  // namespace sricci
