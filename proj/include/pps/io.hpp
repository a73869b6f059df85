#pragma once

// Text formats: JSON graphs, graph6, certificate documents, DOT, stats CSV.

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pps/errors.hpp"
#include "pps/graph.hpp"
#include "pps/product.hpp"

namespace pps {

using Json = nlohmann::ordered_json;

inline constexpr int kCertificateSchemaVersion = 1;

// ---- graphs ---------------------------------------------------------------

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.num_vertices()}, {"edges", edges}};
}

namespace detail {

inline std::vector<Edge> edges_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError(std::string(what) + " entries must be [u, v] integer pairs");
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

inline Graph graph_from_json_value(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw ParseError("graph needs fields n and edges");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0) throw ParseError("n must be a non-negative integer");
  auto edges = edges_from_json(j["edges"], "edges");
  try {
    return build_graph(j["n"].get<int>(), edges);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

inline Graph parse_graph_json(std::string_view text) { return detail::graph_from_json_value(detail::parse_json_text(text)); }

// graph6: N(n) followed by the upper triangle of the adjacency matrix, column
// by column, packed six bits per printable byte.
inline Graph parse_graph6(std::string_view line) {
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  std::size_t pos = 0;
  auto byte = [&]() -> int {
    if (pos >= line.size()) throw ParseError("graph6 string is truncated");
    int c = static_cast<unsigned char>(line[pos++]);
    if (c < 63 || c > 126) throw ParseError("graph6 byte out of range");
    return c - 63;
  };
  long long n = 0;
  if (line.empty()) throw ParseError("empty graph6 string");
  if (line[0] != '~') {
    n = byte();
  } else {
    ++pos;
    if (line.size() > 1 && line[1] == '~') {
      ++pos;
      for (int i = 0; i < 6; ++i) n = (n << 6) | byte();
    } else {
      for (int i = 0; i < 3; ++i) n = (n << 6) | byte();
    }
  }
  if (n > (1 << 24)) throw ParseError("graph6 graph too large");
  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  if (static_cast<long long>(line.size() - pos) != bytes)
    throw ParseError("graph6 body has " + std::to_string(line.size() - pos) + " bytes, expected " + std::to_string(bytes));
  std::vector<Edge> edges;
  long long k = 0;
  int current = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      if (k % 6 == 0) current = byte();
      if (current & (1 << (5 - k % 6))) edges.emplace_back(i, j);
    }
  return build_graph(static_cast<int>(n), edges);
}

inline std::string write_graph6(const Graph& g) {
  const long long n = g.num_vertices();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int current = 0, filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      current = (current << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(current + 63));
        current = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((current << (6 - filled)) + 63));
  return out;
}

// JSON when the text opens an object, graph6 otherwise. A leading '{' alone is
// not enough: it is also the graph6 size byte for n = 60, but graph6 never has
// whitespace or '"' after it, and is never the bare text "{}".
inline Graph parse_graph_auto(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty input");
  if (text[first] == '{') {
    auto second = text.find_first_not_of(" \t\r\n", first + 1);
    const bool empty_object =
        second != std::string_view::npos && text[second] == '}' &&
        text.find_first_not_of(" \t\r\n", second + 1) == std::string_view::npos;
    if (second != first + 1 || text[second] == '"' || empty_object) return parse_graph_json(text);
  }
  auto nl = text.find('\n', first);
  return parse_graph6(text.substr(first, nl == std::string_view::npos ? text.size() - first : nl - first));
}

// ---- certificates -----------------------------------------------------------

inline Json certificate_to_json(const ProductCertificate& c) {
  auto edge_list = [](const std::vector<Edge>& edges) {
    Json a = Json::array();
    for (auto [u, v] : edges) a.push_back({u, v});
    return a;
  };
  Json bags = Json::array();
  for (const auto& b : c.decomposition.bags) bags.push_back(b);
  Json tree_edges = Json::array();
  for (auto [a, b] : c.decomposition.edges) tree_edges.push_back({a, b});
  Json partition = Json::array();
  for (const auto& p : c.quotient.parts) partition.push_back(p);
  Json k_hist = Json::array();
  for (std::size_t k = 1; k < c.trace.k_histogram.size(); ++k) k_hist.push_back(c.trace.k_histogram[k]);

  Json doc;
  doc["schema_version"] = kCertificateSchemaVersion;
  doc["graph"] = graph_to_json(c.graph);
  doc["triangulation"] = {{"added_edges", edge_list(c.added_edges)}};
  doc["bfs"] = {{"root", c.bfs.root}, {"parent", c.bfs.parent}, {"depth", c.bfs.depth}};
  doc["partition"] = partition;
  doc["quotient"] = {{"edges", edge_list(c.quotient.graph.edges())}, {"witnesses", edge_list(c.quotient.witnesses)}};
  doc["decomposition"] = {{"tree_edges", tree_edges}, {"bags", bags}, {"anchor", c.decomposition.anchor}};
  doc["layers"] = c.layers;
  doc["path_length"] = c.path_length;
  doc["trace"] = {{"regions", c.trace.regions},
                  {"k_histogram", k_hist},
                  {"degenerate_regions", c.trace.degenerate_regions},
                  {"k5_hubs", c.trace.k5_hubs},
                  {"k5_full_hubs", c.trace.k5_full_hubs},
                  {"mirror_branches", c.trace.mirror_branches},
                  {"anchor_checks", c.trace.anchor_checks},
                  {"max_depth", c.trace.max_depth}};
  return doc;
}

inline std::string serialize_certificate(const ProductCertificate& c) { return certificate_to_json(c).dump(1) + "\n"; }

namespace detail {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field ") + key + " has the wrong type");
  }
}

}  // namespace detail

// Reads a certificate document. Only the schema is validated here; the
// mathematical claims are left to verify().
inline ProductCertificate certificate_from_json(const Json& doc) {
  using detail::get_field;
  if (!doc.is_object()) throw ParseError("certificate must be a JSON object");
  if (get_field<int>(doc, "schema_version") != kCertificateSchemaVersion)
    throw ParseError("unsupported schema_version " + doc["schema_version"].dump());
  ProductCertificate c;
  c.graph = detail::graph_from_json_value(doc.at("graph"));
  const int n = c.graph.num_vertices();
  c.labels.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) c.labels[v] = v;
  c.added_edges = detail::edges_from_json(doc.at("triangulation").at("added_edges"), "added_edges");

  const Json& bfs = doc.at("bfs");
  c.bfs.root = get_field<int>(bfs, "root");
  c.bfs.parent = get_field<std::vector<int>>(bfs, "parent");
  c.bfs.depth = get_field<std::vector<int>>(bfs, "depth");
  if (static_cast<int>(c.bfs.parent.size()) != n || static_cast<int>(c.bfs.depth.size()) != n)
    throw ParseError("bfs arrays must have n entries");
  for (int p : c.bfs.parent)
    if (p < -1 || p >= n) throw ParseError("bfs parent out of range");

  auto parts = get_field<std::vector<std::vector<int>>>(doc, "partition");
  for (const auto& p : parts)
    for (int v : p)
      if (v < 0 || v >= n) throw ParseError("partition vertex out of range");
  c.quotient.parts = parts;
  c.quotient.part_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int v : parts[i]) c.quotient.part_of[v] = static_cast<int>(i);
  const Json& q = doc.at("quotient");
  try {
    c.quotient.graph = build_graph(static_cast<int>(parts.size()), detail::edges_from_json(q.at("edges"), "quotient edges"));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("quotient: ") + e.what());
  }
  c.quotient.witnesses = detail::edges_from_json(q.at("witnesses"), "witnesses");

  const Json& dec = doc.at("decomposition");
  c.decomposition.bags = get_field<std::vector<std::vector<int>>>(dec, "bags");
  for (auto e : detail::edges_from_json(dec.at("tree_edges"), "tree_edges")) c.decomposition.edges.push_back(e);
  c.decomposition.anchor = get_field<int>(dec, "anchor");

  c.layers = get_field<std::vector<int>>(doc, "layers");
  c.path_length = get_field<int>(doc, "path_length");

  if (doc.contains("trace")) {
    const Json& t = doc.at("trace");
    c.trace.regions = get_field<long long>(t, "regions");
    auto hist = get_field<std::vector<long long>>(t, "k_histogram");
    for (std::size_t k = 0; k < hist.size() && k + 1 < c.trace.k_histogram.size(); ++k) c.trace.k_histogram[k + 1] = hist[k];
    c.trace.degenerate_regions = get_field<long long>(t, "degenerate_regions");
    c.trace.k5_hubs = get_field<long long>(t, "k5_hubs");
    c.trace.k5_full_hubs = get_field<long long>(t, "k5_full_hubs");
    c.trace.mirror_branches = get_field<long long>(t, "mirror_branches");
    c.trace.anchor_checks = get_field<long long>(t, "anchor_checks");
    c.trace.max_depth = get_field<int>(t, "max_depth");
  }
  return c;
}

inline ProductCertificate parse_certificate(std::string_view text) {
  Json doc = detail::parse_json_text(text);
  try {
    return certificate_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate schema: ") + e.what());
  }
}

// ---- DOT --------------------------------------------------------------------

enum class DotTarget { Quotient, DecompositionTree, Partition };

inline std::string export_dot(const ProductCertificate& c, DotTarget target) {
  static constexpr const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
                                             "#a65628", "#f781bf", "#999999", "#66c2a5", "#e6ab02"};
  std::ostringstream out;
  switch (target) {
    case DotTarget::Quotient:
      out << "graph H {\n";
      for (int a = 0; a < c.quotient.num_parts(); ++a) out << "  p" << a << " [label=\"P" << a << "\"];\n";
      for (auto [a, b] : c.quotient.graph.edges()) out << "  p" << a << " -- p" << b << ";\n";
      break;
    case DotTarget::DecompositionTree:
      out << "graph J {\n  node [shape=box];\n";
      for (std::size_t x = 0; x < c.decomposition.bags.size(); ++x) {
        out << "  b" << x << " [label=\"{";
        const auto& bag = c.decomposition.bags[x];
        for (std::size_t i = 0; i < bag.size(); ++i) out << (i ? "," : "") << bag[i];
        out << "}\"";
        if (static_cast<int>(x) == c.decomposition.anchor) out << ", peripheries=2";
        out << "];\n";
      }
      for (auto [a, b] : c.decomposition.edges) out << "  b" << a << " -- b" << b << ";\n";
      break;
    case DotTarget::Partition:
      out << "graph G {\n  node [style=filled];\n";
      for (Vertex v = 0; v < c.graph.num_vertices(); ++v) {
        int part = c.quotient.part_of[v];
        out << "  v" << v << " [label=\"" << v << "\", fillcolor=\"" << kPalette[part % 10] << "\", part=" << part
            << "];\n";
      }
      for (auto [u, v] : c.graph.edges()) {
        bool inside = c.quotient.part_of[u] == c.quotient.part_of[v];
        out << "  v" << u << " -- v" << v << (inside ? " [penwidth=3]" : "") << ";\n";
      }
      break;
  }
  out << "}\n";
  return out.str();
}

// ---- stats ------------------------------------------------------------------

inline std::string stats_header() { return "n,m,parts,h_vertices,max_bag,k5_hubs,mirror_branches,max_depth\n"; }

inline std::string stats_row(const ProductCertificate& c) {
  std::ostringstream out;
  out << c.graph.num_vertices() << ',' << c.graph.num_edges() << ',' << c.quotient.parts.size() << ','
      << c.quotient.graph.num_vertices() << ',' << c.decomposition.max_bag() << ',' << c.trace.k5_hubs << ','
      << c.trace.mirror_branches << ',' << c.trace.max_depth << '\n';
  return out.str();
}

}  // namespace pps
