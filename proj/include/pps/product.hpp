#pragma once

#include <algorithm>
#include <cstdlib>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pps/decomposer.hpp"
#include "pps/errors.hpp"
#include "pps/graph.hpp"
#include "pps/layering.hpp"

namespace pps {

// H = G / P for a partition P of G into connected parts.
struct QuotientGraph {
  std::vector<std::vector<Vertex>> parts;  // part id -> vertices
  std::vector<int> part_of;                // vertex -> part id
  Graph graph;                             // on part ids
  std::vector<Edge> witnesses;             // aligned with graph.edges(): one G-edge per H-edge

  int num_parts() const { return static_cast<int>(parts.size()); }
  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;
};

inline QuotientGraph quotient(const Graph& g, std::span<const std::vector<Vertex>> parts) {
  const int n = g.num_vertices();
  QuotientGraph q;
  q.part_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw StructuralError("part " + std::to_string(i) + " is empty");
    for (Vertex v : parts[i]) {
      if (v < 0 || v >= n) throw StructuralError("part " + std::to_string(i) + " holds unknown vertex " + std::to_string(v));
      if (q.part_of[v] != -1) throw StructuralError("vertex " + std::to_string(v) + " lies in two parts");
      q.part_of[v] = static_cast<int>(i);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (q.part_of[v] == -1) throw StructuralError("vertex " + std::to_string(v) + " is not covered by the partition");
  q.parts.assign(parts.begin(), parts.end());

  std::vector<std::pair<Edge, Edge>> crossing;  // (part edge, witness)
  for (auto [u, v] : g.edges()) {
    int a = q.part_of[u], b = q.part_of[v];
    if (a != b) crossing.push_back({normalized(a, b), Edge{u, v}});
  }
  std::sort(crossing.begin(), crossing.end());
  std::vector<Edge> hedges;
  for (std::size_t i = 0; i < crossing.size(); ++i)
    if (i == 0 || crossing[i].first != crossing[i - 1].first) {
      hedges.push_back(crossing[i].first);
      q.witnesses.push_back(crossing[i].second);
    }
  q.graph = build_graph(static_cast<int>(parts.size()), hedges);
  return q;
}

// Vertex (part, layer) of H x P, where P is the path 0 - 1 - ... - L-1.
struct ProductVertex {
  int part = 0;
  int layer = 0;
  friend bool operator==(const ProductVertex&, const ProductVertex&) = default;
};

// Strong product adjacency: distinct pairs whose parts are equal or adjacent
// in H and whose layers are equal or consecutive.
inline bool strong_product_adjacent(ProductVertex a, ProductVertex b, const Graph& h) {
  if (a == b) return false;
  const bool same_part = a.part == b.part;
  const bool part_edge = h.has_edge(a.part, b.part);
  const bool same_layer = a.layer == b.layer;
  const bool layer_edge = std::abs(a.layer - b.layer) == 1;
  return (same_part && layer_edge) || (same_layer && part_edge) || (part_edge && layer_edge);
}

inline bool strong_product_adjacent(ProductVertex a, ProductVertex b, const QuotientGraph& h) {
  return strong_product_adjacent(a, b, h.graph);
}

// Everything needed to check that G is a subgraph of H x P.
struct ProductCertificate {
  Graph graph;                 // G
  std::vector<Vertex> labels;  // vertex id of each G vertex in the enclosing input
  BfsTree bfs;                 // spanning forest; parent -1 at component roots
  QuotientGraph quotient;      // H
  std::vector<int> layers;     // per vertex: BFS depth
  int path_length = 0;         // |V(P)|
  TreeDecomposition decomposition;
  std::vector<Edge> added_edges;  // edges of G+ not in G
  DecompositionTrace trace;

  ProductVertex image(Vertex v) const { return {quotient.part_of[v], layers[v]}; }
};

// v -> (part of v, depth of v). Every part must be vertical in t.
inline ProductCertificate make_product_embedding(const Graph& g, const BfsTree& t,
                                                 std::span<const std::vector<Vertex>> parts) {
  if (t.size() != g.num_vertices()) throw PreconditionError("tree does not span the graph");
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!is_vertical(parts[i], t)) throw StructuralError("part " + std::to_string(i) + " is not a vertical path");
  ProductCertificate cert;
  cert.graph = g;
  cert.labels.resize(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) cert.labels[v] = v;
  cert.bfs = t;
  cert.quotient = quotient(g, parts);
  cert.layers = t.depth;
  int max_depth = -1;
  for (int d : t.depth) max_depth = std::max(max_depth, d);
  cert.path_length = max_depth + 1;
  return cert;
}

// Disjoint union of per-component certificates. Component labels must
// partition 0..N-1; the decomposition trees are joined anchor to anchor.
inline ProductCertificate merge_components(std::span<const ProductCertificate> certs) {
  if (certs.size() == 1) return certs.front();
  std::size_t total = 0;
  for (const auto& c : certs) total += static_cast<std::size_t>(c.graph.num_vertices());
  std::vector<char> used(total, 0);
  for (const auto& c : certs)
    for (Vertex l : c.labels) {
      if (l < 0 || static_cast<std::size_t>(l) >= total || used[l])
        throw PreconditionError("component certificates overlap or leave gaps in vertex ids");
      used[l] = 1;
    }

  ProductCertificate out;
  const int n = static_cast<int>(total);
  out.labels.resize(total);
  for (Vertex v = 0; v < n; ++v) out.labels[v] = v;
  out.bfs.parent.assign(total, -1);
  out.bfs.depth.assign(total, 0);
  out.layers.assign(total, 0);
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> parts;
  bool first = true;
  for (const auto& c : certs) {
    const int part_offset = static_cast<int>(parts.size());
    const int node_offset = static_cast<int>(out.decomposition.bags.size());
    auto map = [&](Vertex v) { return c.labels[v]; };
    for (auto [u, v] : c.graph.edges()) edges.push_back(normalized(map(u), map(v)));
    for (auto [u, v] : c.added_edges) out.added_edges.push_back(normalized(map(u), map(v)));
    for (Vertex v = 0; v < c.graph.num_vertices(); ++v) {
      out.bfs.parent[map(v)] = c.bfs.parent[v] < 0 ? -1 : map(c.bfs.parent[v]);
      out.bfs.depth[map(v)] = c.bfs.depth[v];
      out.layers[map(v)] = c.layers[v];
    }
    if (first) out.bfs.root = map(c.bfs.root);
    for (const auto& p : c.quotient.parts) {
      std::vector<Vertex> mapped;
      for (Vertex v : p) mapped.push_back(map(v));
      parts.push_back(std::move(mapped));
    }
    for (const auto& bag : c.decomposition.bags) {
      std::vector<int> shifted;
      for (int id : bag) shifted.push_back(id + part_offset);
      out.decomposition.add_node(std::move(shifted));
    }
    for (auto [a, b] : c.decomposition.edges) out.decomposition.link(a + node_offset, b + node_offset);
    const int anchor = c.decomposition.anchor + node_offset;
    if (first) out.decomposition.anchor = anchor;
    else out.decomposition.link(out.decomposition.anchor, anchor);
    out.path_length = std::max(out.path_length, c.path_length);
    out.trace.merge(c.trace);
    first = false;
  }
  out.graph = build_graph(n, edges);
  out.quotient = quotient(out.graph, parts);
  std::sort(out.added_edges.begin(), out.added_edges.end());
  return out;
}

}  // namespace pps
