#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sricci/complex.hpp"
#include "sricci/outcome.hpp"
#include "sricci/spectral.hpp"
#include "sricci/transport.hpp"

namespace sricci {

/// The i-faces of a complex under a fixed weight function, with the adjacency
/// and hop metric every curvature evaluation needs. Holds a reference to the
/// complex, which must outlive it.
class FaceGeometry {
 public:
  FaceGeometry(const SimplicialComplex& k, int i, WeightAssignment w)
      : k_(&k), dim_(i), w_(std::move(w)), adjacency_(face_adjacency(k, i)), metric_(i, adjacency_) {
    boundary_degree_.resize(k.count(i - 1));
    for (std::size_t e = 0; e < boundary_degree_.size(); ++e) boundary_degree_[e] = degree(k, i - 1, e, w_);
  }

  /// Top-dimensional faces under delta weights.
  static FaceGeometry top(const SimplicialComplex& k) { return {k, k.dim(), delta_weights(k)}; }

  const SimplicialComplex& complex() const { return *k_; }
  int dim() const { return dim_; }
  std::size_t size() const { return k_->count(dim_); }
  const WeightAssignment& weights() const { return w_; }
  double weight(std::size_t f) const { return w_(dim_, f); }
  const FaceAdjacency& adjacency() const { return adjacency_; }
  const FaceMetric& metric() const { return metric_; }
  std::span<const std::size_t> boundary(std::size_t f) const { return k_->boundary(dim_, f); }
  double boundary_degree(std::size_t e) const { return boundary_degree_[e]; }

  std::optional<int> distance(std::size_t a, std::size_t b) const { return metric_.distance(a, b); }

  /// (1/(i+1)) sum_{E in dF} w(F)/deg E
  double retention(std::size_t f) const {
    double s = 0.0;
    for (std::size_t e : boundary(f)) s += weight(f) / boundary_degree(e);
    return s / (dim_ + 1);
  }

  /// Faces adjacent to both a and b through a boundary face of `a` other than
  /// their own shared face (empty unless a and b are adjacent).
  struct CommonNeighbor {
    std::size_t face;
    std::size_t via_first;   // dF cap dG
    std::size_t via_second;  // dF' cap dG
  };

  std::vector<CommonNeighbor> common_neighbors(std::size_t a, std::size_t b) const {
    std::vector<CommonNeighbor> out;
    const auto shared = adjacency_.shared_face(a, b);
    if (!shared) return out;
    for (const auto& n : adjacency_.neighbors[a]) {
      if (n.shared == *shared || n.face == b) continue;
      if (auto other = adjacency_.shared_face(b, n.face)) out.push_back({n.face, n.shared, *other});
    }
    return out;
  }

 private:
  const SimplicialComplex* k_;
  int dim_;
  WeightAssignment w_;
  FaceAdjacency adjacency_;
  FaceMetric metric_;
  std::vector<double> boundary_degree_;
};

inline constexpr double kMeasureTolerance = 1e-12;

/// Keeps 1 - eps + eps * retention at F and sends eps w(F')/((i+1) deg E) to
/// each F' across E.
inline FaceMeasure dispersion_measure(const FaceGeometry& g, std::size_t f, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorKind::BadParams, "eps must lie in [0, 1]");
  for (std::size_t e : g.boundary(f))
    if (!(g.boundary_degree(e) > 0.0))
      throw Error(ErrorKind::BoundaryDegreeZero, "boundary face " + std::to_string(e) + " has degree 0");

  const double scale = eps / (g.dim() + 1);
  FaceMeasure m;
  m.support.push_back({f, 1.0 - eps + eps * g.retention(f)});
  for (const auto& n : g.adjacency().neighbors[f])
    m.support.push_back({n.face, scale * g.weight(n.face) / g.boundary_degree(n.shared)});
  std::sort(m.support.begin(), m.support.end(), [](const Mass& x, const Mass& y) { return x.point < y.point; });

  for (const auto& entry : m.support)
    if (entry.mass < 0.0) throw Error(ErrorKind::InvalidMeasure, "negative mass in dispersion measure");
  if (std::abs(m.total() - 1.0) > kMeasureTolerance)
    throw Error(ErrorKind::InvalidMeasure, "dispersion measure does not sum to 1");
  return m;
}

namespace detail {

inline int pair_distance(const FaceGeometry& g, std::size_t a, std::size_t b) {
  if (a == b) throw Error(ErrorKind::BadParams, "curvature needs two distinct faces");
  const auto d = g.distance(a, b);
  if (!d) throw Error(ErrorKind::DisconnectedPair, "faces are in different components");
  return *d;
}

}  // namespace detail

/// 1 - W(m_F^eps, m_F'^eps) / d(F, F')
inline double epsilon_ricci(const FaceGeometry& g, std::size_t a, std::size_t b, double eps) {
  const int d = detail::pair_distance(g, a, b);
  const auto w = wasserstein(dispersion_measure(g, a, eps), dispersion_measure(g, b, eps), g.metric());
  return 1.0 - w.value / d;
}

/// The cap (eps/d)(2 - retention(F) - retention(F')) on the eps-curvature.
inline double kappa_eps_upper_lemma(const FaceGeometry& g, std::size_t a, std::size_t b, double eps) {
  const int d = detail::pair_distance(g, a, b);
  return eps / d * (2.0 - g.retention(a) - g.retention(b));
}

/// Lower bound on the curvature of an adjacent pair from an explicit
/// three-step transport plan.
inline double prop_lower_bound(const FaceGeometry& g, std::size_t a, std::size_t b) {
  const auto shared = g.adjacency().shared_face(a, b);
  if (!shared) throw Error(ErrorKind::NotAdjacent, "faces do not share a boundary face");
  double sum = 3.0;
  for (const auto& c : g.common_neighbors(a, b)) {
    const double d1 = g.boundary_degree(c.via_first), d2 = g.boundary_degree(c.via_second);
    sum += 2.0 * g.weight(c.face) / std::min(d1, d2) + g.weight(c.face) / std::max(d1, d2);
  }
  const double n = g.dim() + 1;
  return sum / n - (g.weight(a) + g.weight(b)) / (n * g.boundary_degree(*shared)) - 2.0;
}

/// Upper bound on the curvature of an adjacent pair from the mass that can
/// stay in place.
inline double prop_upper_bound(const FaceGeometry& g, std::size_t a, std::size_t b) {
  if (!g.adjacency().shared_face(a, b)) throw Error(ErrorKind::NotAdjacent, "faces do not share a boundary face");
  double sum = 1.0;
  for (const auto& c : g.common_neighbors(a, b))
    sum += g.weight(c.face) / std::max(g.boundary_degree(c.via_first), g.boundary_degree(c.via_second));
  return sum / (g.dim() + 1);
}

struct EpsSample {
  double eps;
  double kappa_eps;
};

struct CurvatureResult {
  std::size_t first = 0;
  std::size_t second = 0;
  int distance = 0;
  std::vector<EpsSample> samples;
  double kappa = 0.0;
  std::optional<double> lower_bound;  // adjacent pairs only
  std::optional<double> upper_bound;
  bool converged = false;
  int halvings = 0;
};

struct RicciOptions {
  double agreement = 1e-9;  // consecutive kappa_eps/eps agreement
  int max_halvings = 40;
};

/// Limit of kappa_eps/eps as eps -> 0, sampled at eps = 2^-j until two
/// consecutive ratios agree. The ratio is constant on the first linear piece
/// of the transport value, so agreement is exact there.
inline CurvatureResult ricci(const FaceGeometry& g, std::size_t a, std::size_t b, RicciOptions opt = {}) {
  CurvatureResult r;
  r.first = a;
  r.second = b;
  r.distance = detail::pair_distance(g, a, b);
  double eps = 1.0;
  std::optional<double> previous;
  for (int j = 1; j <= opt.max_halvings; ++j) {
    eps *= 0.5;
    const double k_eps = epsilon_ricci(g, a, b, eps);
    r.samples.push_back({eps, k_eps});
    const double ratio = k_eps / eps;
    r.kappa = ratio;
    r.halvings = j;
    if (previous && std::abs(ratio - *previous) <= opt.agreement) {
      r.converged = true;
      break;
    }
    previous = ratio;
  }
  if (r.distance == 1) {
    r.lower_bound = prop_lower_bound(g, a, b);
    r.upper_bound = prop_upper_bound(g, a, b);
  }
  return r;
}

struct DiameterCheck {
  Outcome outcome = Outcome::Pass;
  double k = 0.0;
  std::size_t pairs_checked = 0;
  std::optional<std::size_t> tightest_first;
  std::optional<std::size_t> tightest_second;
  double tightest_distance = 0.0;
  double tightest_bound = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
};

/// d(F, F') <= (1/k)(2 - retention(F) - retention(F')) for every connected pair.
inline DiameterCheck diameter_bound_check(const FaceGeometry& g, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::NonPositiveK, "diameter bound needs k > 0");
  DiameterCheck c;
  c.k = k;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      const auto d = g.distance(a, b);
      if (!d) continue;
      const double bound = (2.0 - g.retention(a) - g.retention(b)) / k;
      const double slack = bound - *d;
      ++c.pairs_checked;
      if (slack < c.min_slack) {
        c.min_slack = slack;
        c.tightest_first = a;
        c.tightest_second = b;
        c.tightest_distance = *d;
        c.tightest_bound = bound;
      }
    }
  c.outcome = pass_if(c.min_slack >= -kBoundTolerance);
  return c;
}

struct NeighborLemmaCheck {
  Outcome outcome = Outcome::Pass;
  std::size_t checks = 0;
  std::size_t max_count = 0;
};

/// |Gamma_{E'}(F) cap Gamma(F')| <= 1 for adjacent F, F' and E' in dF other
/// than the shared face.
inline NeighborLemmaCheck neighbor_lemma_check(const SimplicialComplex& k, int i) {
  const auto adj = face_adjacency(k, i);
  NeighborLemmaCheck c;
  for (std::size_t a = 0; a < adj.neighbors.size(); ++a) {
    for (const auto& nb : adj.neighbors[a]) {
      for (std::size_t e : k.boundary(i, a)) {
        if (e == nb.shared) continue;
        std::size_t count = 0;
        for (const auto& x : adj.neighbors[a])
          if (x.shared == e && x.face != nb.face && adj.shared_face(nb.face, x.face)) ++count;
        ++c.checks;
        c.max_count = std::max(c.max_count, count);
      }
    }
  }
  c.outcome = pass_if(c.max_count <= 1);
  return c;
}

struct GlobalCurvatureSummary {
  std::vector<CurvatureResult> adjacent;  // sorted by (first, second)
  double k_min = std::numeric_limits<double>::infinity();
  std::vector<CurvatureResult> distant_sample;
  Outcome distant_outcome = Outcome::Pass;  // kappa >= k_min on the sample
  bool disconnected = false;                // some pairs at infinite distance were skipped
  bool all_converged = true;
};

/// Curvature of every adjacent pair, plus a deterministic sample of
/// non-adjacent pairs checked against the adjacent minimum.
inline GlobalCurvatureSummary global_curvature(const FaceGeometry& g, std::size_t distant_limit = 32,
                                               RicciOptions opt = {}) {
  GlobalCurvatureSummary s;
  std::vector<std::pair<std::size_t, std::size_t>> distant;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      const auto d = g.distance(a, b);
      if (!d) {
        s.disconnected = true;
        continue;
      }
      if (*d == 1) {
        s.adjacent.push_back(ricci(g, a, b, opt));
        s.k_min = std::min(s.k_min, s.adjacent.back().kappa);
        s.all_converged = s.all_converged && s.adjacent.back().converged;
      } else {
        distant.emplace_back(a, b);
      }
    }
  const std::size_t stride = std::max<std::size_t>(1, distant.size() / std::max<std::size_t>(1, distant_limit));
  for (std::size_t j = 0; j < distant.size() && s.distant_sample.size() < distant_limit; j += stride) {
    s.distant_sample.push_back(ricci(g, distant[j].first, distant[j].second, opt));
    if (s.distant_sample.back().kappa < s.k_min - kBoundTolerance) s.distant_outcome = Outcome::Fail;
  }
  return s;
}

struct ConcavityCheck {
  Outcome outcome = Outcome::Pass;
  std::vector<EpsSample> samples;
  double min_gap = std::numeric_limits<double>::infinity();  // kappa(mid) - chord(mid)
  std::size_t triples = 0;
};

/// kappa_eps is concave in eps: each interior grid value lies on or above the
/// chord through its two neighbours.
inline ConcavityCheck concavity_check(const FaceGeometry& g, std::size_t a, std::size_t b, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  ConcavityCheck c;
  for (double eps : grid) c.samples.push_back({eps, epsilon_ricci(g, a, b, eps)});
  for (std::size_t j = 1; j + 1 < c.samples.size(); ++j) {
    const auto& lo = c.samples[j - 1];
    const auto& mid = c.samples[j];
    const auto& hi = c.samples[j + 1];
    const double t = (mid.eps - lo.eps) / (hi.eps - lo.eps);
    const double chord = (1.0 - t) * lo.kappa_eps + t * hi.kappa_eps;
    c.min_gap = std::min(c.min_gap, mid.kappa_eps - chord);
    ++c.triples;
  }
  c.outcome = pass_if(c.triples == 0 || c.min_gap >= -1e-9);
  return c;
}

inline std::vector<double> uniform_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t j = 0; j < points; ++j) grid[j] = points == 1 ? 0.0 : static_cast<double>(j) / (points - 1);
  return grid;
}

struct EigenvalueSlack {
  double eigenvalue;
  double slack;
};

struct TheoremEstimateCheck {
  Outcome outcome = Outcome::HypothesisUnmet;
  std::optional<ErrorKind> unmet;  // which hypothesis failed
  int dim = 0;
  double k = 0.0;
  double inv_d = 0.0;             // 1/D
  double bound = 0.0;             // (i+1)(k-1) + 2/D
  double excluded_eigenvalue = 0.0;  // sum 2/deg E - (i+1)
  std::vector<EigenvalueSlack> eigenvalues;
  double min_slack = std::numeric_limits<double>::infinity();
};

struct CheckOptions {
  double zero_threshold = kDefaultZeroThreshold;
  RicciOptions ricci;
};

/// lambda >= (i+1)(k-1) + 2/D for every nonzero eigenvalue of the top down
/// Laplacian other than the constant-function eigenvalue, under delta weights.
/// `summary`, when supplied, must come from FaceGeometry::top(k).
inline TheoremEstimateCheck theorem_estimate_check(const SimplicialComplex& k, CheckOptions opt = {},
                                                   const GlobalCurvatureSummary* summary = nullptr) {
  TheoremEstimateCheck c;
  c.dim = k.dim();
  auto unmet = [&](ErrorKind kind) {
    c.unmet = kind;
    return c;
  };
  if (!k.is_pure()) return unmet(ErrorKind::NotPure);
  if (k.dim() < 1) return unmet(ErrorKind::DimensionOutOfRange);
  const auto orientation = orient(k);
  if (!orientation) return unmet(ErrorKind::NotOrientable);
  const auto w = delta_weights(k);
  const auto inv_d = homogeneous_reciprocal_degree(k, w);
  if (!inv_d) return unmet(ErrorKind::HeterogeneousDegreeSum);

  c.inv_d = *inv_d;
  c.excluded_eigenvalue = 2.0 * c.inv_d - (c.dim + 1);
  const auto spec = spectrum(down_laplacian(k, c.dim, w), opt.zero_threshold);
  std::vector<double> qualifying;
  for (double v : spec.nonzero())
    if (std::abs(v - c.excluded_eigenvalue) > opt.zero_threshold) qualifying.push_back(v);
  if (qualifying.empty()) return unmet(ErrorKind::NoQualifyingEigenvalue);

  std::optional<GlobalCurvatureSummary> own;
  if (!summary) own = global_curvature(FaceGeometry::top(k), 0, opt.ricci);
  c.k = (summary ? *summary : *own).k_min;
  c.bound = (c.dim + 1) * (c.k - 1.0) + 2.0 * c.inv_d;
  for (double v : qualifying) {
    c.eigenvalues.push_back({v, v - c.bound});
    c.min_slack = std::min(c.min_slack, v - c.bound);
  }
  c.outcome = pass_if(c.min_slack >= -kBoundTolerance);
  return c;
}

struct CorollaryRegularCheck {
  Outcome outcome = Outcome::HypothesisUnmet;
  std::optional<ErrorKind> unmet;
  double k = 0.0;
  double bound = 0.0;  // (i+1) k
  std::vector<EigenvalueSlack> eigenvalues;
  double min_slack = std::numeric_limits<double>::infinity();
};

/// lambda >= (i+1) k for every nonzero eigenvalue of the top down Laplacian of
/// an orientable complex whose codimension-one faces share one degree.
inline CorollaryRegularCheck corollary_regular_check(const SimplicialComplex& k, CheckOptions opt = {},
                                                     const GlobalCurvatureSummary* summary = nullptr) {
  CorollaryRegularCheck c;
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
  c.bound = (k.dim() + 1) * c.k;
  const auto spec = spectrum(down_laplacian(k, k.dim(), delta_weights(k)), opt.zero_threshold);
  for (double v : spec.nonzero()) {
    c.eigenvalues.push_back({v, v - c.bound});
    c.min_slack = std::min(c.min_slack, v - c.bound);
  }
  c.outcome = pass_if(c.min_slack >= -kBoundTolerance);
  return c;
}

/// Two readings of the eigenvalue estimate on an r-regular graph viewed as a
/// 1-complex: 2/D = 4/r from 1/D = 2/r, and the alternative 2/D = r obtained by
/// taking D itself to be 2/r. Informational; neither reading is asserted.
struct RegularGraphBoundReadings {
  bool applicable = false;
  double r = 0.0;
  double k = 0.0;
  bool orientable = false;
  double theorem_bound = 0.0;      // 2(k-1) + 4/r
  double alternative_bound = 0.0;  // 2(k-1) + r
  std::vector<double> qualifying;
  bool theorem_holds = false;
  bool alternative_holds = false;
};

inline RegularGraphBoundReadings regular_graph_bound_readings(const SimplicialComplex& k, CheckOptions opt = {},
                                                              const GlobalCurvatureSummary* summary = nullptr) {
  RegularGraphBoundReadings out;
  if (k.dim() != 1 || !k.is_pure()) return out;
  const auto reg = is_regular(k, 0);
  if (!reg.regular) return out;
  out.applicable = true;
  out.r = reg.degree;
  out.orientable = orient(k).has_value();
  std::optional<GlobalCurvatureSummary> own;
  if (!summary) own = global_curvature(FaceGeometry::top(k), 0, opt.ricci);
  out.k = (summary ? *summary : *own).k_min;
  out.theorem_bound = 2.0 * (out.k - 1.0) + 4.0 / out.r;
  out.alternative_bound = 2.0 * (out.k - 1.0) + out.r;
  const double excluded = 4.0 / out.r - 2.0;
  const auto spec = spectrum(down_laplacian(k, 1, delta_weights(k)), opt.zero_threshold);
  for (double v : spec.nonzero())
    if (std::abs(v - excluded) > opt.zero_threshold) out.qualifying.push_back(v);
  out.theorem_holds = std::all_of(out.qualifying.begin(), out.qualifying.end(),
                                  [&](double v) { return v >= out.theorem_bound - kBoundTolerance; });
  out.alternative_holds = std::all_of(out.qualifying.begin(), out.qualifying.end(),
                                      [&](double v) { return v >= out.alternative_bound - kBoundTolerance; });
  return out;
}

}  // namespace sricci
