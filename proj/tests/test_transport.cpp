#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sricci/lp.hpp"
#include "sricci/transport.hpp"

using namespace sricci;

namespace {

/// Path 0 - 1 - ... - (n-1).
HopMetric path(std::size_t n) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    adj[j].push_back(j + 1);
    adj[j + 1].push_back(j);
  }
  return HopMetric(adj);
}

FaceMeasure random_measure(std::mt19937& rng, std::size_t points, std::size_t support) {
  std::vector<std::size_t> all(points);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  FaceMeasure m;
  double total = 0.0;
  for (std::size_t j = 0; j < support; ++j) {
    m.support.push_back({all[j], u(rng)});
    total += m.support.back().mass;
  }
  for (auto& e : m.support) e.mass /= total;
  std::sort(m.support.begin(), m.support.end(), [](const Mass& a, const Mass& b) { return a.point < b.point; });
  return m;
}

std::vector<std::vector<int>> distances(const HopMetric& m) {
  std::vector<std::vector<int>> d(m.size(), std::vector<int>(m.size()));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) d[a][b] = *m.distance(a, b);
  return d;
}

double oracle_w(const FaceMeasure& mu, const FaceMeasure& nu, const std::vector<std::vector<int>>& d) {
  std::vector<std::size_t> pts;
  for (const auto& e : mu.support) pts.push_back(e.point);
  for (const auto& e : nu.support)
    if (std::find(pts.begin(), pts.end(), e.point) == pts.end()) pts.push_back(e.point);
  std::vector<double> c;
  for (auto p : pts) c.push_back(nu.at(p) - mu.at(p));
  return oracle::integer_lipschitz_max(pts, c, d);
}

void expect_marginals(const TransportResult& r, const FaceMeasure& mu, const FaceMeasure& nu) {
  for (const auto& e : mu.support) EXPECT_NEAR(r.coupling.row_sum(e.point), e.mass, 1e-10);
  for (const auto& e : nu.support) EXPECT_NEAR(r.coupling.column_sum(e.point), e.mass, 1e-10);
  for (const auto& t : r.coupling.transfers) EXPECT_GE(t.mass, 0.0);
}

}  // namespace

TEST(HopMetric, PathDistances) {
  const auto m = path(5);
  EXPECT_EQ(m.distance(0, 4), 4);
  EXPECT_EQ(m.distance(3, 3), 0);
  EXPECT_TRUE(m.connected());
  const HopMetric split({{1}, {0}, {}});
  EXPECT_FALSE(split.distance(0, 2).has_value());
  EXPECT_FALSE(split.connected());
}

TEST(FaceAdjacency, TetrahedronTriangles) {
  const auto k = SimplicialComplex::build(tetrahedron().facets);
  const auto adj = face_adjacency(k, 2);
  for (const auto& nb : adj.neighbors) EXPECT_EQ(nb.size(), 3u);
  EXPECT_TRUE(adj.shared_face(0, 1).has_value());
  EXPECT_FALSE(adj.shared_face(0, 0).has_value());
  EXPECT_THROW(face_adjacency(k, 0), Error);
  const auto m = face_metric(k, 2);
  EXPECT_EQ(m.distance(0, 3), 1);
}

TEST(Lp, SmallProgram) {
  // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6, x <= 3
  Eigen::MatrixXd a(3, 2);
  a << 1, 1, 1, 3, 1, 0;
  const auto s = maximize_leq(a, Eigen::Vector3d(4, 6, 3), Eigen::Vector2d(3, 2));
  EXPECT_NEAR(s.objective, 11.0, 1e-12);
  EXPECT_NEAR(s.x(0), 3.0, 1e-12);
  EXPECT_NEAR(s.x(1), 1.0, 1e-12);
}

TEST(Lp, Unbounded) {
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  try {
    maximize_leq(a, Eigen::VectorXd::Ones(1), Eigen::Vector2d(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LpUnbounded);
  }
}

TEST(Wasserstein, DiracsCostTheirDistance) {
  const auto m = path(6);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      EXPECT_NEAR(wasserstein(FaceMeasure::dirac(a), FaceMeasure::dirac(b), m).value, *m.distance(a, b), 1e-12);
      EXPECT_NEAR(kantorovich_dual(FaceMeasure::dirac(a), FaceMeasure::dirac(b), m).value, *m.distance(a, b), 1e-12);
    }
}

TEST(Wasserstein, MatchesExhaustiveDualOnRandomPairs) {
  std::mt19937 rng(17);
  const auto k = SimplicialComplex::build(torus_grid(3, 3).facets);
  const auto m = face_metric(k, 2);
  const auto d = distances(m);
  for (int trial = 0; trial < 150; ++trial) {
    std::uniform_int_distribution<std::size_t> s(1, 3);
    const auto mu = random_measure(rng, m.size(), s(rng));
    const auto nu = random_measure(rng, m.size(), s(rng));
    const auto primal = wasserstein(mu, nu, m);
    const auto dual = kantorovich_dual(mu, nu, m);
    const double expect = oracle_w(mu, nu, d);
    EXPECT_NEAR(primal.value, expect, 1e-10);
    EXPECT_NEAR(dual.value, expect, 1e-10);
    expect_marginals(primal, mu, nu);
  }
}

TEST(Wasserstein, DualCertificateIsOneLipschitz) {
  std::mt19937 rng(23);
  const auto m = path(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto mu = random_measure(rng, 9, 4);
    const auto nu = random_measure(rng, 9, 3);
    const auto dual = kantorovich_dual(mu, nu, m);
    double value = 0.0;
    for (const auto& a : dual.certificate.values) {
      value += a.mass * (mu.at(a.point) - nu.at(a.point));
      for (const auto& b : dual.certificate.values)
        EXPECT_LE(std::abs(a.mass - b.mass), *m.distance(a.point, b.point) + 1e-12);
    }
    EXPECT_NEAR(value, dual.value, 1e-12);
    EXPECT_NEAR(dual.value, wasserstein(mu, nu, m).value, 1e-10);
  }
}

TEST(Wasserstein, MetricProperties) {
  std::mt19937 rng(29);
  const auto k = SimplicialComplex::build(torus_grid(4, 4).facets);
  const auto m = face_metric(k, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_measure(rng, m.size(), 5);
    const auto b = random_measure(rng, m.size(), 4);
    const auto c = random_measure(rng, m.size(), 6);
    const double ab = wasserstein(a, b, m).value;
    EXPECT_NEAR(ab, wasserstein(b, a, m).value, 1e-10);
    EXPECT_LE(wasserstein(a, c, m).value, ab + wasserstein(b, c, m).value + 1e-10);
    EXPECT_NEAR(wasserstein(a, a, m).value, 0.0, 1e-12);
  }
}

TEST(Wasserstein, PermutationInvariance) {
  // Reversing a path relabels every point; the cost must not move.
  std::mt19937 rng(31);
  const auto m = path(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto mu = random_measure(rng, 7, 3);
    const auto nu = random_measure(rng, 7, 3);
    auto flip = [](FaceMeasure f) {
      for (auto& e : f.support) e.point = 6 - e.point;
      std::sort(f.support.begin(), f.support.end(), [](const Mass& a, const Mass& b) { return a.point < b.point; });
      return f;
    };
    EXPECT_NEAR(wasserstein(mu, nu, m).value, wasserstein(flip(mu), flip(nu), m).value, 1e-10);
  }
}

TEST(Wasserstein, DisconnectedSupports) {
  const HopMetric split({{1}, {0}, {}});
  try {
    wasserstein(FaceMeasure::dirac(0), FaceMeasure::dirac(2), split);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DisconnectedSupports);
  }
  EXPECT_THROW(kantorovich_dual(FaceMeasure::dirac(0), FaceMeasure::dirac(2), split), Error);
}
