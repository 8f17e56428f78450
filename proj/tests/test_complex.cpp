#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sricci/complex.hpp"

using namespace sricci;

namespace {

SimplicialComplex tetra() { return SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

SimplicialComplex mobius() {
  return SimplicialComplex::build({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}});
}

std::vector<std::vector<VertexLabel>> to_facets(const std::vector<oracle::Labels>& in) {
  std::vector<std::vector<VertexLabel>> out;
  for (const auto& f : in) out.emplace_back(f.begin(), f.end());
  return out;
}

}  // namespace

TEST(Complex, TetrahedronCounts) {
  const auto k = tetra();
  EXPECT_EQ(k.dim(), 2);
  EXPECT_EQ(k.count(0), 4u);
  EXPECT_EQ(k.count(1), 6u);
  EXPECT_EQ(k.count(2), 4u);
  EXPECT_EQ(k.count(3), 0u);
  EXPECT_EQ(k.count(-1), 0u);
  EXPECT_TRUE(k.is_pure());
  EXPECT_EQ(k.facets().size(), 4u);
}

TEST(Complex, FacesAreLexicographic) {
  const auto k = tetra();
  const auto edges = k.faces(1);
  for (std::size_t j = 1; j < edges.size(); ++j) EXPECT_LT(edges[j - 1].vertices, edges[j].vertices);
  EXPECT_EQ(k.face(1, 0).vertices, (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(k.face(1, 5).vertices, (std::vector<VertexId>{2, 3}));
}

TEST(Complex, LabelsRemapInOrderOfFirstAppearance) {
  const auto k = SimplicialComplex::build({{10, 7}, {7, 3}});
  EXPECT_EQ(k.labels(), (std::vector<VertexLabel>{10, 7, 3}));
  EXPECT_EQ(k.label(2), 3);
  const auto& e = k.face(1, 0);
  EXPECT_EQ(k.labels_of(e), (std::vector<VertexLabel>{7, 10}));
}

TEST(Complex, RejectsBadInput) {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::BadParams;
  };
  EXPECT_EQ(kind([] { SimplicialComplex::build({}); }), ErrorKind::EmptyInput);
  EXPECT_EQ(kind([] { SimplicialComplex::build({{}}); }), ErrorKind::MalformedFacet);
  EXPECT_EQ(kind([] { SimplicialComplex::build({{0, 0, 1}}); }), ErrorKind::MalformedFacet);
  EXPECT_EQ(kind([] { SimplicialComplex::build({{0, -1}}); }), ErrorKind::MalformedFacet);
  const auto k = tetra();
  EXPECT_EQ(kind([&] { k.index_of(Face{{0, 1, 2, 3}}); }), ErrorKind::FaceNotInComplex);
}

TEST(Complex, DuplicateAndNestedFacetsCollapse) {
  const auto k = SimplicialComplex::build({{0, 1, 2}, {2, 1, 0}, {0, 1}});
  EXPECT_EQ(k.count(2), 1u);
  EXPECT_EQ(k.facets().size(), 1u);
  EXPECT_TRUE(k.is_pure());
}

TEST(Complex, MixedDimensionsAreImpure) {
  const auto k = SimplicialComplex::build({{0, 1, 2}, {2, 3}});
  EXPECT_FALSE(k.is_pure());
  EXPECT_EQ(k.facets().size(), 2u);
  try {
    delta_weights(k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPure);
  }
}

TEST(Complex, ClosureIsDownwardClosedOnRandomInputs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> size(1, 4), vert(0, 7), count(1, 6);
    std::vector<std::vector<VertexLabel>> facets;
    for (int f = count(rng); f > 0; --f) {
      std::set<VertexLabel> s;
      for (int n = size(rng); static_cast<int>(s.size()) < n;) s.insert(vert(rng));
      facets.emplace_back(s.begin(), s.end());
    }
    const auto k = SimplicialComplex::build(facets);
    for (int d = 1; d <= k.dim(); ++d)
      for (std::size_t i = 0; i < k.count(d); ++i) {
        const auto bd = k.boundary(d, i);
        ASSERT_EQ(bd.size(), static_cast<std::size_t>(d + 1));
        for (std::size_t j = 0; j < bd.size(); ++j) {
          // entry j drops vertex j
          auto expect = k.face(d, i).vertices;
          expect.erase(expect.begin() + static_cast<long>(j));
          EXPECT_EQ(k.face(d - 1, bd[j]).vertices, expect);
          const auto up = k.cofacets(d - 1, bd[j]);
          EXPECT_NE(std::find(up.begin(), up.end(), i), up.end());
        }
      }
    for (const auto& f : facets) {
      Face face;
      for (auto l : f)
        face.vertices.push_back(static_cast<VertexId>(
            std::find(k.labels().begin(), k.labels().end(), l) - k.labels().begin()));
      std::sort(face.vertices.begin(), face.vertices.end());
      EXPECT_TRUE(k.find(face).has_value());
    }
  }
}

TEST(Complex, BoundaryWithSignsAlternates) {
  const auto terms = boundary_with_signs({Face{{0, 1, 2}}, -1});
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[0].face.vertices, (std::vector<VertexId>{1, 2}));
  EXPECT_EQ(terms[0].sign, -1);
  EXPECT_EQ(terms[1].face.vertices, (std::vector<VertexId>{0, 2}));
  EXPECT_EQ(terms[1].sign, 1);
  EXPECT_EQ(terms[2].sign, -1);
}

TEST(Weights, DeltaOnTetrahedron) {
  const auto k = tetra();
  const auto w = delta_weights(k);
  EXPECT_EQ(w.scheme(), WeightScheme::Delta);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(w(2, i), 1.0);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(w(1, i), 2.0);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(w(0, i), 6.0);
  EXPECT_DOUBLE_EQ(w(-1, 0), 0.0);
}

TEST(Weights, DegreeIsCofacetWeightSum) {
  const auto k = SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  const auto w = unit_weights(k);
  EXPECT_DOUBLE_EQ(degree(k, Face{{0, 1}}, w), 3.0);
  EXPECT_DOUBLE_EQ(degree(k, Face{{0}}, w), 4.0);  // edges 01 02 03 04
  EXPECT_DOUBLE_EQ(degree(k, 2, 0, w), 0.0);
  const auto dw = delta_weights(k);
  EXPECT_DOUBLE_EQ(dw(1, k.index_of(Face{{0, 1}})), 3.0);
  EXPECT_DOUBLE_EQ(dw(0, k.index_of(Face{{0}})), 3.0 + 1.0 + 1.0 + 1.0);
}

TEST(Weights, RejectsNonPositive) {
  EXPECT_THROW(WeightAssignment(WeightScheme::Custom, {{1.0, 0.0}}), Error);
  EXPECT_THROW(WeightAssignment(WeightScheme::Custom, {{1.0, -2.0}}), Error);
  EXPECT_THROW(WeightAssignment(WeightScheme::Custom, {{std::nan("")}}), Error);
}

TEST(Orientation, TetrahedronAndTorusAreOrientable) {
  EXPECT_TRUE(orient(tetra()).has_value());
  const auto torus = SimplicialComplex::build(torus_grid(3, 3).facets);
  const auto o = orient(torus);
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(o->signs.size(), 18u);
}

TEST(Orientation, SignsMakeSharedRidgesCancel) {
  for (const auto& fx : fixtures::all()) {
    const auto k = SimplicialComplex::build(fx.doc.facets);
    const auto o = orient(k);
    if (!o) continue;
    const int top = k.dim();
    std::vector<int> total(k.count(top - 1), 0);
    for (std::size_t f = 0; f < k.count(top); ++f) {
      const auto bd = k.boundary(top, f);
      for (std::size_t j = 0; j < bd.size(); ++j) total[bd[j]] += o->signs[f] * (j % 2 == 0 ? 1 : -1);
    }
    for (std::size_t e = 0; e < total.size(); ++e)
      if (k.cofacets(top - 1, e).size() == 2) {
        EXPECT_EQ(total[e], 0) << fx.name;
      }
  }
}

TEST(Orientation, MobiusStripAndBranchingAreNot) {
  EXPECT_FALSE(orient(mobius()).has_value());
  EXPECT_FALSE(orient(SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}})).has_value());
  EXPECT_FALSE(orient(SimplicialComplex::build(complete_graph(4).facets)).has_value());
  EXPECT_TRUE(orient(SimplicialComplex::build(cycle(5).facets)).has_value());
}

TEST(Orientation, HypothesisErrors) {
  EXPECT_THROW(orient(SimplicialComplex::build({{0, 1, 2}, {3, 4}})), Error);
  EXPECT_THROW(orient(SimplicialComplex::build({{0}, {1}})), Error);
}

TEST(Orientation, AgreesWithExhaustiveSearchOnRandomComplexes) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    std::uniform_int_distribution<int> vcount(3, 8), fcount(1, 7);
    const int v = vcount(rng);
    const int max_f = v * (v - 1) * (v - 2) / 6;
    const auto tris = oracle::random_triangles(rng, v, std::min(fcount(rng), max_f));
    const auto k = SimplicialComplex::build(to_facets(tris));
    EXPECT_EQ(orient(k).has_value(), oracle::orientable_exhaustive(tris)) << "trial " << trial;
  }
}

TEST(Regularity, Fixtures) {
  EXPECT_TRUE(is_regular(tetra(), 1).regular);
  EXPECT_DOUBLE_EQ(is_regular(tetra(), 1).degree, 2.0);
  EXPECT_TRUE(is_regular(SimplicialComplex::build(complete_graph(5).facets), 0).regular);
  EXPECT_DOUBLE_EQ(is_regular(SimplicialComplex::build(complete_graph(5).facets), 0).degree, 4.0);
  EXPECT_FALSE(is_regular(SimplicialComplex::build({{0, 1}, {1, 2}}), 0).regular);
  EXPECT_THROW(is_regular(tetra(), 3), Error);
}
