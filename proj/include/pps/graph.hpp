#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pps/errors.hpp"

namespace pps {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline Edge normalized(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// Immutable once built; use build_graph() to construct.
class Graph {
 public:
  Graph() = default;

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return m_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  // Position of v in the sorted neighbour list of u, or -1.
  int neighbor_index(Vertex u, Vertex v) const {
    const auto& a = adj_[u];
    auto it = std::lower_bound(a.begin(), a.end(), v);
    if (it == a.end() || *it != v) return -1;
    return static_cast<int>(it - a.begin());
  }

  // All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < num_vertices(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(int n, std::span<const Edge> edges);

  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

inline Graph build_graph(int n, std::span<const Edge> edges) {
  if (n < 0) throw PreconditionError("vertex count must be non-negative");
  Graph g;
  g.adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw PreconditionError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") has a vertex id outside 0.." + std::to_string(n - 1));
    if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  std::size_t degree_sum = 0;
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    degree_sum += a.size();
  }
  g.m_ = degree_sum / 2;
  return g;
}

inline Graph build_graph(int n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

// Subgraph of g induced by `vertices`; vertex i of the result is vertices[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), local[w]);
  return build_graph(static_cast<int>(vertices.size()), edges);
}

// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Vertex w : g.neighbors(v))
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// True iff every edge of `sub` maps onto an edge of `sup` under vertex_map.
// vertex_map must be an injection from V(sub) into V(sup).
inline bool subgraph_check(const Graph& sub, const Graph& sup, std::span<const Vertex> vertex_map) {
  if (static_cast<int>(vertex_map.size()) != sub.num_vertices())
    throw PreconditionError("vertex map size differs from subgraph vertex count");
  std::vector<char> used(static_cast<std::size_t>(sup.num_vertices()), 0);
  for (Vertex image : vertex_map) {
    if (image < 0 || image >= sup.num_vertices())
      throw PreconditionError("vertex map points outside the supergraph");
    if (used[image]) throw PreconditionError("vertex map is not injective");
    used[image] = 1;
  }
  for (auto [u, v] : sub.edges())
    if (!sup.has_edge(vertex_map[u], vertex_map[v])) return false;
  return true;
}

// A directed copy of an edge. Darts of vertex v are numbered consecutively in
// the order of v's sorted neighbour list.
using Dart = int;

struct Face {
  std::vector<Vertex> boundary;  // rotated to start at the smallest vertex id
  bool is_outer = false;
  friend bool operator==(const Face&, const Face&) = default;
};

// Graph plus a rotation system: a cyclic order of the neighbours of every
// vertex. Faces are traced by the rule next(u->v) = v->w where w follows u in
// the rotation at v.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  PlaneGraph(Graph graph, std::vector<std::vector<Vertex>> rotation,
             std::optional<Edge> outer_dart = std::nullopt)
      : graph_(std::move(graph)), rotation_(std::move(rotation)) {
    const int n = graph_.num_vertices();
    if (static_cast<int>(rotation_.size()) != n)
      throw StructuralError("rotation system size differs from vertex count");
    offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    rot_pos_.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      const auto& rot = rotation_[v];
      if (static_cast<int>(rot.size()) != graph_.degree(v))
        throw StructuralError("rotation at vertex " + std::to_string(v) + " does not list its neighbours");
      rot_pos_[v].assign(rot.size(), -1);
      for (std::size_t p = 0; p < rot.size(); ++p) {
        int idx = graph_.neighbor_index(v, rot[p]);
        if (idx < 0 || rot_pos_[v][idx] != -1)
          throw StructuralError("rotation at vertex " + std::to_string(v) + " does not list its neighbours");
        rot_pos_[v][idx] = static_cast<int>(p);
      }
      offset_[v + 1] = offset_[v] + graph_.degree(v);
    }
    if (outer_dart) {
      if (!graph_.has_edge(outer_dart->first, outer_dart->second))
        throw StructuralError("outer dart is not an edge");
      outer_ = dart(outer_dart->first, outer_dart->second);
    }
  }

  const Graph& graph() const { return graph_; }
  int num_vertices() const { return graph_.num_vertices(); }
  std::size_t num_edges() const { return graph_.num_edges(); }
  const std::vector<std::vector<Vertex>>& rotation() const { return rotation_; }
  std::span<const Vertex> rotation(Vertex v) const { return rotation_[v]; }

  int num_darts() const { return offset_.empty() ? 0 : offset_.back(); }
  Dart dart(Vertex u, Vertex v) const {
    int idx = graph_.neighbor_index(u, v);
    if (idx < 0) throw StructuralError("no edge " + std::to_string(u) + "-" + std::to_string(v));
    return offset_[u] + idx;
  }
  Vertex tail(Dart d) const {
    auto it = std::upper_bound(offset_.begin(), offset_.end(), d);
    return static_cast<Vertex>(it - offset_.begin()) - 1;
  }
  Vertex head(Dart d) const {
    Vertex u = tail(d);
    return graph_.neighbors(u)[d - offset_[u]];
  }
  Dart reverse(Dart d) const { return dart(head(d), tail(d)); }

  // Neighbour following u in the rotation at v.
  Vertex successor(Vertex v, Vertex u) const {
    const auto& rot = rotation_[v];
    int p = rot_pos_[v][graph_.neighbor_index(v, u)];
    return rot[(static_cast<std::size_t>(p) + 1) % rot.size()];
  }

  Dart next_in_face(Dart d) const {
    Vertex u = tail(d), v = head(d);
    return dart(v, successor(v, u));
  }

  std::optional<Dart> outer_dart() const { return outer_; }
  void set_outer_dart(Vertex u, Vertex v) { outer_ = dart(u, v); }

 private:
  Graph graph_;
  std::vector<std::vector<Vertex>> rotation_;
  std::vector<std::vector<int>> rot_pos_;  // sorted-neighbour index -> rotation position
  std::vector<int> offset_;
  std::optional<Dart> outer_;
};

inline std::vector<Vertex> canonical_cycle(std::vector<Vertex> walk) {
  if (walk.empty()) return walk;
  auto it = std::min_element(walk.begin(), walk.end());
  std::rotate(walk.begin(), it, walk.end());
  return walk;
}

// Traces every face walk. Each dart lies on exactly one face; for a connected
// graph Euler's relation n - m + f = 2 is enforced.
inline std::vector<Face> faces(const PlaneGraph& pg) {
  const int n = pg.num_vertices();
  if (n == 0) return {};
  if (pg.num_edges() == 0) {
    if (n == 1) return {Face{{0}, true}};
    throw PreconditionError("faces() requires a connected plane graph");
  }
  std::vector<char> seen(static_cast<std::size_t>(pg.num_darts()), 0);
  std::vector<Face> out;
  for (Dart start = 0; start < pg.num_darts(); ++start) {
    if (seen[start]) continue;
    Face face;
    Dart d = start;
    do {
      if (seen[d]) throw StructuralError("inconsistent rotation system: dart traced twice");
      seen[d] = 1;
      if (pg.outer_dart() && *pg.outer_dart() == d) face.is_outer = true;
      face.boundary.push_back(pg.tail(d));
      d = pg.next_in_face(d);
    } while (d != start);
    face.boundary = canonical_cycle(std::move(face.boundary));
    out.push_back(std::move(face));
  }
  if (connected_components(pg.graph()).size() == 1) {
    const long long euler = static_cast<long long>(n) - static_cast<long long>(pg.num_edges()) +
                            static_cast<long long>(out.size());
    if (euler != 2) throw StructuralError("rotation system is not planar: n - m + f = " + std::to_string(euler));
  }
  return out;
}

}  // namespace pps
