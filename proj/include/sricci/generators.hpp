#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "sricci/document.hpp"

namespace sricci {

inline ComplexDocument tetrahedron() {
  ComplexDocument doc;
  doc.facets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  doc.metadata = {"tetrahedron", "boundary of the 3-simplex"};
  return doc;
}

/// Diagonal triangulation of the m x n flat torus: vertex (r, c) has label
/// r*n + c and each grid square splits along its (r, c)-(r+1, c+1) diagonal.
inline ComplexDocument torus_grid(long m, long n) {
  if (m < 3 || n < 3) throw Error(ErrorKind::BadParams, "torus_grid needs m, n >= 3");
  auto v = [&](long r, long c) { return static_cast<VertexLabel>((r % m) * n + (c % n)); };
  ComplexDocument doc;
  for (long r = 0; r < m; ++r)
    for (long c = 0; c < n; ++c) {
      doc.facets.push_back({v(r, c), v(r + 1, c), v(r + 1, c + 1)});
      doc.facets.push_back({v(r, c), v(r, c + 1), v(r + 1, c + 1)});
    }
  doc.metadata = {"torus_grid(" + std::to_string(m) + "," + std::to_string(n) + ")",
                  "diagonal triangulation of the flat torus"};
  return doc;
}

inline ComplexDocument cycle(long n) {
  if (n < 3) throw Error(ErrorKind::BadParams, "cycle needs n >= 3");
  ComplexDocument doc;
  for (long j = 0; j < n; ++j) doc.facets.push_back({j, (j + 1) % n});
  doc.metadata = {"cycle(" + std::to_string(n) + ")", "cycle graph"};
  return doc;
}

inline ComplexDocument complete_graph(long n) {
  if (n < 2) throw Error(ErrorKind::BadParams, "complete_graph needs n >= 2");
  ComplexDocument doc;
  for (long a = 0; a < n; ++a)
    for (long b = a + 1; b < n; ++b) doc.facets.push_back({a, b});
  doc.metadata = {"complete_graph(" + std::to_string(n) + ")", "complete graph"};
  return doc;
}

/// Vertex j joined to j +- s (mod n) for every offset s, 1 <= s <= n/2.
inline ComplexDocument circulant(long n, const std::vector<long>& offsets) {
  if (n < 3) throw Error(ErrorKind::BadParams, "circulant needs n >= 3");
  if (offsets.empty()) throw Error(ErrorKind::BadParams, "circulant needs at least one offset");
  std::set<std::pair<long, long>> edges;
  for (long s : offsets) {
    if (s < 1 || 2 * s > n) throw Error(ErrorKind::BadParams, "circulant offsets must lie in [1, n/2]");
    for (long j = 0; j < n; ++j) {
      const long other = (j + s) % n;
      edges.emplace(std::min(j, other), std::max(j, other));
    }
  }
  ComplexDocument doc;
  for (const auto& [a, b] : edges) doc.facets.push_back({a, b});
  std::string name = "circulant(" + std::to_string(n);
  for (long s : offsets) name += "," + std::to_string(s);
  doc.metadata = {name + ")", "circulant graph"};
  return doc;
}

/// Fixture by name; `params` are the integer arguments in order.
inline ComplexDocument generate(const std::string& name, const std::vector<long>& params) {
  auto expect = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorKind::BadParams, name + " takes " + std::to_string(count) + " parameter(s), got " +
                                            std::to_string(params.size()));
  };
  if (name == "tetrahedron") {
    expect(0);
    return tetrahedron();
  }
  if (name == "torus_grid") {
    expect(2);
    return torus_grid(params[0], params[1]);
  }
  if (name == "cycle") {
    expect(1);
    return cycle(params[0]);
  }
  if (name == "complete_graph") {
    expect(1);
    return complete_graph(params[0]);
  }
  if (name == "circulant") {
    if (params.size() < 2) throw Error(ErrorKind::BadParams, "circulant takes n and at least one offset");
    return circulant(params[0], {params.begin() + 1, params.end()});
  }
  throw Error(ErrorKind::UnknownGenerator, "no generator named \"" + name + "\"");
}

}  // namespace sricci
