#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sricci/complex.hpp"
#include "sricci/curvature.hpp"
#include "sricci/document.hpp"
#include "sricci/dual_graph.hpp"
#include "sricci/outcome.hpp"
#include "sricci/spectral.hpp"

namespace sricci {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

enum class Command { Summary, Spectrum, Curvature, Verify, Dual };

inline Command parse_command(const std::string& name) {
  if (name == "summary") return Command::Summary;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "curvature") return Command::Curvature;
  if (name == "verify") return Command::Verify;
  if (name == "dual") return Command::Dual;
  throw Error(ErrorKind::UnknownCommand, "no command named \"" + name + "\"");
}

constexpr std::string_view to_string(Command c) {
  switch (c) {
    case Command::Summary: return "summary";
    case Command::Spectrum: return "spectrum";
    case Command::Curvature: return "curvature";
    case Command::Verify: return "verify";
    case Command::Dual: return "dual";
  }
  return "unknown";
}

enum class Format { Readable, Machine };

inline Format parse_format(const std::string& name) {
  if (name == "readable") return Format::Readable;
  if (name == "machine") return Format::Machine;
  throw Error(ErrorKind::BadParams, "format must be readable or machine");
}

inline WeightScheme parse_weight_scheme(const std::string& name) {
  if (name == "delta") return WeightScheme::Delta;
  if (name == "unit") return WeightScheme::Unit;
  if (name == "custom") return WeightScheme::Custom;
  throw Error(ErrorKind::BadParams, "weights must be delta, unit or custom");
}

struct RunFlags {
  std::optional<int> dim;  // top dimension when absent
  WeightScheme weights = WeightScheme::Delta;
  double zero_threshold = kDefaultZeroThreshold;
  double eps_tolerance = RicciOptions{}.agreement;
  std::size_t distant_limit = 32;
  std::size_t concavity_pairs = 16;
  std::size_t concavity_points = 9;
};

struct AnalysisReport {
  Json body;
  int exit_code = 0;  // 0 ok, 1 some check failed
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

namespace detail {

inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

inline Json face_json(const SimplicialComplex& k, int d, std::size_t idx) { return k.labels_of(k.face(d, idx)); }

inline Json spectrum_json(const Spectrum& s) {
  Json eig = Json::array();
  for (double v : s.eigenvalues) eig.push_back(s.is_zero(v) ? 0.0 : v);
  return {{"eigenvalues", eig}, {"zero_count", s.zero_count()}};
}

inline Json check_json(std::string name, Outcome outcome, std::optional<ErrorKind> unmet = std::nullopt) {
  Json j;
  j["name"] = std::move(name);
  j["outcome"] = std::string(to_string(outcome));
  j["unmet"] = unmet ? Json(std::string(to_string(*unmet))) : Json(nullptr);
  return j;
}

inline WeightAssignment select_weights(const SimplicialComplex& k, const ComplexDocument& doc, WeightScheme s) {
  switch (s) {
    case WeightScheme::Unit: return unit_weights(k);
    case WeightScheme::Custom: return custom_weights(doc, k);
    case WeightScheme::Delta: break;
  }
  return delta_weights(k);
}

inline int resolve_dim(const SimplicialComplex& k, const RunFlags& f, int lowest) {
  const int i = f.dim.value_or(k.dim());
  if (i < lowest || i > k.dim())
    throw Error(ErrorKind::DimensionOutOfRange,
                "--dim " + std::to_string(i) + " outside [" + std::to_string(lowest) + ", " + std::to_string(k.dim()) + "]");
  return i;
}

inline Json summary_json(const SimplicialComplex& k) {
  Json s;
  s["dim"] = k.dim();
  Json counts = Json::array();
  long euler = 0;
  for (int d = 0; d <= k.dim(); ++d) {
    counts.push_back(k.count(d));
    euler += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k.count(d));
  }
  s["counts"] = counts;
  s["facet_count"] = k.facets().size();
  s["euler_characteristic"] = euler;
  s["pure"] = k.is_pure();
  if (k.is_pure() && k.dim() >= 1) {
    s["orientable"] = orient(k).has_value();
    const auto reg = is_regular(k, k.dim() - 1);
    s["regular"] = {{"dim", k.dim() - 1}, {"regular", reg.regular}, {"degree", reg.regular ? Json(reg.degree) : Json(nullptr)}};
    const auto inv_d = homogeneous_reciprocal_degree(k, delta_weights(k));
    s["reciprocal_degree_sum"] = optional_number(inv_d);
  } else {
    s["orientable"] = nullptr;
    s["regular"] = nullptr;
    s["reciprocal_degree_sum"] = nullptr;
  }
  return s;
}

inline Json pairing_check(const SimplicialComplex& k, int i, const WeightAssignment& w, double zero_threshold) {
  const auto p = check_spectrum_pairing(k, i, w, zero_threshold);
  Json j = check_json("spectrum_pairing", pass_if(p.matched));
  j["dim"] = i;
  j["vacuous"] = p.vacuous;
  j["nonzero_count"] = p.up_nonzero.size();
  j["max_deviation"] = number(p.max_deviation);
  return j;
}

inline Json curvature_json(const SimplicialComplex& k, int i, const CurvatureResult& r) {
  Json j;
  j["first"] = face_json(k, i, r.first);
  j["second"] = face_json(k, i, r.second);
  j["distance"] = r.distance;
  j["kappa"] = number(r.kappa);
  j["lower_bound"] = optional_number(r.lower_bound);
  j["upper_bound"] = optional_number(r.upper_bound);
  j["converged"] = r.converged;
  j["halvings"] = r.halvings;
  return j;
}

/// lower - tol <= kappa <= upper + tol <= 1 + tol over the adjacent pairs.
inline Json bracketing_check(const GlobalCurvatureSummary& s) {
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& r : s.adjacent) {
    slack = std::min({slack, r.kappa - *r.lower_bound, *r.upper_bound - r.kappa, 1.0 - *r.upper_bound});
  }
  Json j = check_json("bound_bracketing", pass_if(slack >= -kBoundTolerance));
  j["pairs"] = s.adjacent.size();
  j["min_slack"] = number(slack);
  return j;
}

inline Json convergence_check(const GlobalCurvatureSummary& s) {
  int worst = 0;
  for (const auto& r : s.adjacent) worst = std::max(worst, r.halvings);
  for (const auto& r : s.distant_sample) worst = std::max(worst, r.halvings);
  bool converged = s.all_converged;
  for (const auto& r : s.distant_sample) converged = converged && r.converged;
  Json j = check_json("curvature_convergence", pass_if(converged));
  j["max_halvings"] = worst;
  return j;
}

inline Json distant_check(const GlobalCurvatureSummary& s) {
  Json j = check_json("distant_curvature_minimum", s.distant_outcome);
  j["sampled_pairs"] = s.distant_sample.size();
  return j;
}

inline Json curvature_section(const SimplicialComplex& k, int i, WeightScheme scheme, const GlobalCurvatureSummary& s) {
  Json c;
  c["dim"] = i;
  c["weights"] = std::string(to_string(scheme));
  c["k_min"] = number(s.k_min);
  c["disconnected"] = s.disconnected;
  Json pairs = Json::array();
  for (const auto& r : s.adjacent) pairs.push_back(curvature_json(k, i, r));
  c["pairs"] = pairs;
  Json distant = Json::array();
  for (const auto& r : s.distant_sample) distant.push_back(curvature_json(k, i, r));
  c["distant_sample"] = distant;
  return c;
}

inline Json slacks_json(const std::vector<EigenvalueSlack>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back({{"eigenvalue", number(e.eigenvalue)}, {"slack", number(e.slack)}});
  return out;
}

inline Json hj_json(const HjRelationCheck& h) {
  Json j = check_json("dual_spectrum_relation", h.outcome, h.unmet);
  j["factor"] = h.factor;
  j["lambda_zero_count"] = h.lambda_zeros;
  j["mu_zero_count"] = h.mu_zeros;
  j["nonzero_match"] = h.nonzero_match;
  j["nonzero_deviation"] = number(h.nonzero_deviation);
  j["positional_match"] = h.positional_match;
  j["positional_deviation"] = number(h.positional_deviation);
  return j;
}

inline Json corollary_relation_json(const CorollaryRelationCheck& c) {
  Json j = check_json("dual_curvature_relation", c.outcome, c.unmet);
  j["k"] = number(c.k);
  j["k_graph"] = number(c.k_graph);
  j["lhs"] = number(c.lhs);
  j["slack"] = number(c.slack);
  return j;
}

}  // namespace detail

/// Executes one command on a document. Input problems surface as Error; a
/// failed check only sets the exit code.
inline AnalysisReport run(Command command, const ComplexDocument& doc, const RunFlags& flags) {
  const auto k = build_complex(doc);
  const RicciOptions ricci_opt{flags.eps_tolerance, RicciOptions{}.max_halvings};
  const CheckOptions check_opt{flags.zero_threshold, ricci_opt};

  Json body;
  body["tool"] = "sricci";
  body["version"] = kVersion;
  body["command"] = std::string(to_string(command));
  body["timestamp"] = utc_timestamp();
  body["input"] = {{"name", doc.metadata.name}, {"description", doc.metadata.description}};
  body["flags"] = {{"dim", flags.dim ? Json(*flags.dim) : Json(nullptr)},
                   {"weights", std::string(to_string(flags.weights))},
                   {"zero_threshold", flags.zero_threshold},
                   {"eps_tolerance", flags.eps_tolerance}};
  body["tolerances"] = {{"bound", kBoundTolerance},
                        {"measure", kMeasureTolerance},
                        {"zero_threshold", flags.zero_threshold},
                        {"eps_agreement", flags.eps_tolerance},
                        {"concavity", 1e-9}};
  body["complex"] = detail::summary_json(k);
  Json checks = Json::array();

  switch (command) {
    case Command::Summary: break;

    case Command::Spectrum: {
      const int i = detail::resolve_dim(k, flags, 0);
      const auto w = detail::select_weights(k, doc, flags.weights);
      Json s;
      s["dim"] = i;
      s["weights"] = std::string(to_string(flags.weights));
      s["up"] = detail::spectrum_json(spectrum(up_laplacian(k, i, w), flags.zero_threshold));
      s["down"] = i >= 1 ? detail::spectrum_json(spectrum(down_laplacian(k, i, w), flags.zero_threshold)) : Json(nullptr);
      s["full"] = detail::spectrum_json(spectrum(full_laplacian(k, i, w), flags.zero_threshold));
      body["spectrum"] = s;
      if (i >= 1) checks.push_back(detail::pairing_check(k, i - 1, w, flags.zero_threshold));
      checks.push_back(detail::pairing_check(k, i, w, flags.zero_threshold));
      break;
    }

    case Command::Curvature: {
      const int i = detail::resolve_dim(k, flags, 1);
      const FaceGeometry g(k, i, detail::select_weights(k, doc, flags.weights));
      const auto s = global_curvature(g, flags.distant_limit, ricci_opt);
      body["curvature"] = detail::curvature_section(k, i, flags.weights, s);
      checks.push_back(detail::bracketing_check(s));
      checks.push_back(detail::convergence_check(s));
      checks.push_back(detail::distant_check(s));
      break;
    }

    case Command::Verify: {
      if (!k.is_pure()) throw Error(ErrorKind::NotPure, "verify needs a pure complex");
      if (k.dim() < 1) throw Error(ErrorKind::DimensionOutOfRange, "verify needs dimension >= 1");
      const int top = k.dim();
      const auto w = detail::select_weights(k, doc, flags.weights);
      for (int i = 0; i < top; ++i) checks.push_back(detail::pairing_check(k, i, w, flags.zero_threshold));

      // Curvature under the requested weights for the general checks; the
      // eigenvalue estimates are stated for delta weights.
      const FaceGeometry g(k, top, w);
      const auto s = global_curvature(g, flags.distant_limit, ricci_opt);
      checks.push_back(detail::bracketing_check(s));
      checks.push_back(detail::convergence_check(s));
      checks.push_back(detail::distant_check(s));

      const FaceGeometry g_delta = FaceGeometry::top(k);
      std::optional<GlobalCurvatureSummary> delta_own;
      if (flags.weights != WeightScheme::Delta) delta_own = global_curvature(g_delta, 0, ricci_opt);
      const GlobalCurvatureSummary& sd = delta_own ? *delta_own : s;

      const auto thm = theorem_estimate_check(k, check_opt, &sd);
      Json t = detail::check_json("eigenvalue_estimate", thm.outcome, thm.unmet);
      t["k"] = detail::number(thm.k);
      t["reciprocal_degree_sum"] = detail::number(thm.inv_d);
      t["bound"] = detail::number(thm.bound);
      t["excluded_eigenvalue"] = detail::number(thm.excluded_eigenvalue);
      t["min_slack"] = detail::number(thm.min_slack);
      t["eigenvalues"] = detail::slacks_json(thm.eigenvalues);
      checks.push_back(t);

      const auto cor = corollary_regular_check(k, check_opt, &sd);
      Json c = detail::check_json("regular_eigenvalue_estimate", cor.outcome, cor.unmet);
      c["k"] = detail::number(cor.k);
      c["bound"] = detail::number(cor.bound);
      c["min_slack"] = detail::number(cor.min_slack);
      c["eigenvalues"] = detail::slacks_json(cor.eigenvalues);
      checks.push_back(c);

      checks.push_back(detail::hj_json(hj_relation_check(k, flags.zero_threshold)));
      checks.push_back(detail::corollary_relation_json(corollary_relation_check(k, check_opt, &sd)));

      if (sd.k_min > 0.0) {
        const auto dia = diameter_bound_check(g_delta, sd.k_min);
        Json d = detail::check_json("diameter_bound", dia.outcome);
        d["k"] = detail::number(dia.k);
        d["pairs"] = dia.pairs_checked;
        d["min_slack"] = detail::number(dia.min_slack);
        checks.push_back(d);
      } else {
        Json d = detail::check_json("diameter_bound", Outcome::HypothesisUnmet, ErrorKind::NonPositiveK);
        d["k"] = detail::number(sd.k_min);
        checks.push_back(d);
      }

      const auto nb = neighbor_lemma_check(k, top);
      Json n = detail::check_json("neighbor_count", nb.outcome);
      n["checks"] = nb.checks;
      n["max_count"] = nb.max_count;
      checks.push_back(n);

      double min_gap = std::numeric_limits<double>::infinity();
      Outcome concave = Outcome::Pass;
      std::size_t pairs = 0;
      const std::size_t stride = std::max<std::size_t>(1, s.adjacent.size() / std::max<std::size_t>(1, flags.concavity_pairs));
      for (std::size_t j = 0; j < s.adjacent.size() && pairs < flags.concavity_pairs; j += stride, ++pairs) {
        const auto cc = concavity_check(g, s.adjacent[j].first, s.adjacent[j].second, uniform_grid(flags.concavity_points));
        min_gap = std::min(min_gap, cc.min_gap);
        if (cc.outcome == Outcome::Fail) concave = Outcome::Fail;
      }
      Json cv = detail::check_json("concavity", concave);
      cv["pairs"] = pairs;
      cv["grid_points"] = flags.concavity_points;
      cv["min_gap"] = detail::number(min_gap);
      checks.push_back(cv);

      body["curvature"] = detail::curvature_section(k, top, flags.weights, s);

      const auto readings = regular_graph_bound_readings(k, check_opt, &sd);
      if (readings.applicable) {
        body["regular_graph_readings"] = {{"r", readings.r},
                                          {"k", detail::number(readings.k)},
                                          {"orientable", readings.orientable},
                                          {"theorem_bound", detail::number(readings.theorem_bound)},
                                          {"alternative_bound", detail::number(readings.alternative_bound)},
                                          {"qualifying_eigenvalues", readings.qualifying},
                                          {"theorem_holds", readings.theorem_holds},
                                          {"alternative_holds", readings.alternative_holds}};
      }
      break;
    }

    case Command::Dual: {
      if (!k.is_pure()) throw Error(ErrorKind::NotPure, "dual graph needs a pure complex");
      const int i = detail::resolve_dim(k, flags, 1);
      const auto g = build_dual(k, i);
      Json d;
      d["dim"] = i;
      d["vertex_count"] = g.vertex_count();
      d["edge_count"] = g.edges.size();
      std::size_t dmin = g.vertex_count() ? g.degree(0) : 0, dmax = dmin;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        dmin = std::min(dmin, g.degree(v));
        dmax = std::max(dmax, g.degree(v));
      }
      d["degree_min"] = dmin;
      d["degree_max"] = dmax;
      d["connected"] = g.metric.connected();
      const auto gc = graph_curvature(g);
      d["k_graph_min"] = detail::number(gc.k_min);
      Json edges = Json::array();
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        edges.push_back({{"first", detail::face_json(k, i, g.edges[e].first)},
                         {"second", detail::face_json(k, i, g.edges[e].second)},
                         {"kappa", detail::number(gc.per_edge[e])}});
      d["edges"] = edges;
      d["mu"] = dmin > 0 ? detail::spectrum_json(normalized_graph_spectrum(g, flags.zero_threshold)) : Json(nullptr);
      body["dual"] = d;
      if (i == k.dim()) {
        checks.push_back(detail::hj_json(hj_relation_check(k, flags.zero_threshold)));
        checks.push_back(detail::corollary_relation_json(corollary_relation_check(k, check_opt)));
      }
      break;
    }
  }

  bool failed = false;
  for (const auto& c : checks) failed = failed || c["outcome"] == "fail";
  body["checks"] = checks;
  body["status"] = failed ? "check-failed" : "ok";
  return {std::move(body), failed ? 1 : 0};
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream out;
    out << std::setprecision(10) << v.get<double>();
    return out.str();
  }
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + scalar_text(v[j]);
    return s + "]";
  }
  return v.dump();
}

inline bool is_flat(const Json& v) {
  if (v.is_object()) return false;
  if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured() || (x.is_array() && is_flat(x)); });
  return true;
}

inline void render_readable(const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : v.items()) {
    if (is_flat(value)) {
      out << pad << key << ": " << scalar_text(value) << '\n';
    } else if (value.is_object()) {
      out << pad << key << ":\n";
      render_readable(value, indent + 2, out);
    } else {
      out << pad << key << ":\n";
      for (const auto& row : value) {
        if (row.is_object()) {
          out << pad << "  -";
          bool first = true;
          for (const auto& [rk, rv] : row.items()) {
            out << (first ? " " : ", ") << rk << '=' << scalar_text(rv);
            first = false;
          }
          out << '\n';
        } else {
          out << pad << "  - " << scalar_text(row) << '\n';
        }
      }
    }
  }
}

}  // namespace detail

inline std::string render(const AnalysisReport& report, Format format) {
  if (format == Format::Machine) return report.body.dump(2) + "\n";
  std::ostringstream out;
  detail::render_readable(report.body, 0, out);
  return out.str();
}

}  // namespace sricci
