#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sricci/complex.hpp"

namespace sricci {

using LabelKey = std::vector<VertexLabel>;  // sorted labels

struct DocumentMetadata {
  std::string name;
  std::string description;
};

/// A facet list in original labels, with optional per-face weights keyed by
/// sorted labels.
struct ComplexDocument {
  std::vector<std::vector<VertexLabel>> facets;
  std::optional<std::map<LabelKey, double>> weights;
  DocumentMetadata metadata;
};

/// "2,0,1" -> {0, 1, 2}
inline LabelKey parse_face_key(const std::string& key) {
  LabelKey labels;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto first = part.find_first_not_of(" \t");
    const auto last = part.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorKind::ParseError, "empty label in face key \"" + key + "\"");
    const std::string token = part.substr(first, last - first + 1);
    VertexLabel v = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || end != token.data() + token.size())
      throw Error(ErrorKind::ParseError, "face key \"" + key + "\" has non-integer label \"" + token + "\"");
    labels.push_back(v);
  }
  if (labels.empty()) throw Error(ErrorKind::ParseError, "empty face key");
  std::sort(labels.begin(), labels.end());
  return labels;
}

inline std::string face_key(const LabelKey& labels) {
  std::string out;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(labels[j]);
  }
  return out;
}

/// Builds the closure of the document's facets.
inline SimplicialComplex build_complex(const ComplexDocument& doc) { return SimplicialComplex::build(doc.facets); }

/// Custom weights in face order. WeightCoverageError names every face of the
/// closure without a weight.
inline WeightAssignment custom_weights(const ComplexDocument& doc, const SimplicialComplex& k) {
  if (!doc.weights) throw Error(ErrorKind::WeightCoverageError, "document has no weights");
  std::vector<std::vector<double>> values(static_cast<std::size_t>(k.dim() + 1));
  std::vector<std::string> missing;
  for (int d = 0; d <= k.dim(); ++d) {
    for (const auto& f : k.faces(d)) {
      const auto it = doc.weights->find(k.labels_of(f));
      if (it == doc.weights->end()) {
        missing.push_back(face_key(k.labels_of(f)));
        values[static_cast<std::size_t>(d)].push_back(1.0);
      } else {
        values[static_cast<std::size_t>(d)].push_back(it->second);
      }
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : "; ") + m;
    throw Error(ErrorKind::WeightCoverageError, "no weight for faces " + list);
  }
  return {WeightScheme::Custom, std::move(values)};
}

namespace detail {

/// 1-based line and column of a byte offset.
inline std::string text_position(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t j = 0; j < offset; ++j) {
    if (text[j] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline std::vector<VertexLabel> read_facet(const nlohmann::json& j, std::size_t index) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "facet " + std::to_string(index) + " is not an array");
  std::vector<VertexLabel> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw Error(ErrorKind::ParseError, "facet " + std::to_string(index) + " has a non-integer vertex");
    out.push_back(v.get<VertexLabel>());
  }
  return out;
}

}  // namespace detail

/// Parses and validates a document: the facets must build a complex and custom
/// weights, when present, must cover its closure.
inline ComplexDocument parse_text(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, detail::text_position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::ParseError, "document must be an object");
  if (!root.contains("facets")) throw Error(ErrorKind::ParseError, "document has no \"facets\"");
  const auto& facets = root.at("facets");
  if (!facets.is_array()) throw Error(ErrorKind::ParseError, "\"facets\" must be an array");

  ComplexDocument doc;
  for (std::size_t f = 0; f < facets.size(); ++f) doc.facets.push_back(detail::read_facet(facets[f], f));

  if (root.contains("weights")) {
    const auto& weights = root.at("weights");
    if (!weights.is_object()) throw Error(ErrorKind::ParseError, "\"weights\" must be an object");
    doc.weights.emplace();
    for (const auto& [key, value] : weights.items()) {
      if (!value.is_number()) throw Error(ErrorKind::ParseError, "weight of \"" + key + "\" is not a number");
      const auto labels = parse_face_key(key);
      if (!doc.weights->emplace(labels, value.get<double>()).second)
        throw Error(ErrorKind::ParseError, "face " + face_key(labels) + " is weighted twice");
    }
  }

  if (root.contains("metadata")) {
    const auto& meta = root.at("metadata");
    if (!meta.is_object()) throw Error(ErrorKind::ParseError, "\"metadata\" must be an object");
    if (meta.contains("name") && meta.at("name").is_string()) doc.metadata.name = meta.at("name").get<std::string>();
    if (meta.contains("description") && meta.at("description").is_string())
      doc.metadata.description = meta.at("description").get<std::string>();
  }

  SimplicialComplex k;
  try {
    k = build_complex(doc);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedFacet || e.kind() == ErrorKind::EmptyInput)
      throw Error(ErrorKind::ParseError, e.what());
    throw;
  }
  if (doc.weights) {
    std::set<LabelKey> closure;
    for (int d = 0; d <= k.dim(); ++d)
      for (const auto& f : k.faces(d)) closure.insert(k.labels_of(f));
    for (const auto& entry : *doc.weights)
      if (!closure.count(entry.first))
        throw Error(ErrorKind::ParseError, "weighted face " + face_key(entry.first) + " is not in the complex");
    custom_weights(doc, k);
  }
  return doc;
}

inline ComplexDocument parse_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

inline nlohmann::ordered_json to_json(const ComplexDocument& doc) {
  nlohmann::ordered_json j;
  j["facets"] = doc.facets;
  if (doc.weights) {
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    for (const auto& [labels, value] : *doc.weights) w[face_key(labels)] = value;
    j["weights"] = std::move(w);
  }
  j["metadata"] = {{"name", doc.metadata.name}, {"description", doc.metadata.description}};
  return j;
}

}  // namespace sricci
