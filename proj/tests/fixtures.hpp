#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "sricci/generators.hpp"

namespace fixtures {

struct Fixture {
  std::string name;
  sricci::ComplexDocument doc;
};

/// Every generator at a few sizes, all small enough for exhaustive checks.
inline std::vector<Fixture> all() {
  using namespace sricci;
  return {
      {"tetrahedron", tetrahedron()},
      {"torus_grid_3_3", torus_grid(3, 3)},
      {"torus_grid_4_4", torus_grid(4, 4)},
      {"torus_grid_3_5", torus_grid(3, 5)},
      {"cycle_3", cycle(3)},
      {"cycle_4", cycle(4)},
      {"cycle_5", cycle(5)},
      {"cycle_6", cycle(6)},
      {"cycle_8", cycle(8)},
      {"complete_graph_4", complete_graph(4)},
      {"complete_graph_5", complete_graph(5)},
      {"circulant_8_1_2", circulant(8, {1, 2})},
      {"circulant_9_1_3", circulant(9, {1, 3})},
  };
}

inline std::vector<oracle::Labels> labels(const sricci::ComplexDocument& doc) {
  std::vector<oracle::Labels> out;
  for (const auto& f : doc.facets) out.emplace_back(f.begin(), f.end());
  return out;
}

/// Index in the library complex of an oracle face.
inline std::size_t library_index(const sricci::SimplicialComplex& k, const oracle::Labels& labels) {
  sricci::Face f;
  for (long l : labels) {
    const auto& all = k.labels();
    f.vertices.push_back(static_cast<sricci::VertexId>(std::find(all.begin(), all.end(), l) - all.begin()));
  }
  std::sort(f.vertices.begin(), f.vertices.end());
  return k.index_of(f);
}

}  // namespace fixtures
