#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "pps/errors.hpp"
#include "pps/graph.hpp"

namespace pps {

struct NonPlanarWitness {
  enum class Kind { K5, K33 };
  Kind kind = Kind::K5;
  std::vector<Vertex> branch_vertices;  // sorted
  std::vector<Edge> edges;              // edges of the Kuratowski subdivision

  std::string kind_name() const { return kind == Kind::K5 ? "K5" : "K3,3"; }
};

inline bool is_planar(const Graph& g);

namespace detail {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

inline BoostGraph to_boost(const Graph& g) {
  BoostGraph bg(static_cast<std::size_t>(g.num_vertices()));
  int idx = 0;
  for (auto [u, v] : g.edges()) {
    auto [e, inserted] = boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
    (void)inserted;
    boost::put(boost::edge_index, bg, e, idx++);
  }
  return bg;
}

// Boost's Kuratowski edge set can carry surplus edges. Dropping every edge
// whose removal keeps the set non-planar leaves an edge-minimal non-planar
// graph, which is exactly a K5 or K3,3 subdivision.
inline std::vector<Edge> minimize_kuratowski(int n, std::vector<Edge> edges) {
  for (std::size_t i = edges.size(); i-- > 0;) {
    std::vector<Edge> rest = edges;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (!is_planar(build_graph(n, rest))) edges = std::move(rest);
  }
  return edges;
}

inline NonPlanarWitness classify_witness(int n, std::vector<Edge> edges) {
  for (auto& e : edges) e = normalized(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges = minimize_kuratowski(n, std::move(edges));
  std::map<Vertex, int> degree;
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  NonPlanarWitness w;
  w.edges = std::move(edges);
  std::vector<Vertex> deg3, deg4;
  for (auto [v, d] : degree) {
    if (d == 3) deg3.push_back(v);
    else if (d == 4) deg4.push_back(v);
    else if (d != 2) throw ImpossibleState("Kuratowski subgraph has a vertex of degree " + std::to_string(d));
  }
  if (deg4.size() == 5 && deg3.empty()) {
    w.kind = NonPlanarWitness::Kind::K5;
    w.branch_vertices = deg4;
  } else if (deg3.size() == 6 && deg4.empty()) {
    w.kind = NonPlanarWitness::Kind::K33;
    w.branch_vertices = deg3;
  } else {
    throw ImpossibleState("Kuratowski subgraph is neither a K5 nor a K3,3 subdivision");
  }
  return w;
}

// Repeatedly deletes vertices of degree <= 1 and smooths vertices of degree 2
// (parallel edges collapse). Neither step changes planarity.
inline Graph planarity_kernel(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  auto has = [&](Vertex a, Vertex b) { return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end(); };
  auto drop = [&](Vertex a, Vertex b) { adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b)); };
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<Vertex> work;
  for (Vertex v = 0; v < n; ++v)
    if (adj[v].size() <= 2) work.push_back(v);
  while (!work.empty()) {
    Vertex x = work.back();
    work.pop_back();
    if (!alive[x] || adj[x].size() > 2) continue;
    if (adj[x].size() == 2) {
      Vertex a = adj[x][0], b = adj[x][1];
      const bool joined = has(a, b);
      if (joined && adj[a].size() == 2 && adj[b].size() == 2) continue;  // a lone triangle
      drop(a, x);
      drop(b, x);
      if (!joined) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    } else {
      for (Vertex y : adj[x]) drop(y, x);
    }
    for (Vertex y : adj[x])
      if (adj[y].size() <= 2) work.push_back(y);
    adj[x].clear();
    alive[x] = 0;
  }
  std::vector<int> id(static_cast<std::size_t>(n), -1);
  int k = 0;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v] && !adj[v].empty()) id[v] = k++;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : adj[v])
      if (v < w && id[v] >= 0 && id[w] >= 0) edges.emplace_back(id[v], id[w]);
  return build_graph(k, edges);
}

}  // namespace detail

inline bool is_planar(const Graph& g) {
  if (g.num_vertices() >= 3 && g.num_edges() > 3 * static_cast<std::size_t>(g.num_vertices()) - 6) return false;
  Graph kernel = detail::planarity_kernel(g);
  if (kernel.num_vertices() < 5) return true;
  auto bg = detail::to_boost(kernel);
  return boost::boyer_myrvold_planarity_test(bg);
}

// Planarity test. On success returns a rotation system (no outer face chosen);
// otherwise a Kuratowski subdivision contained in g.
inline std::variant<PlaneGraph, NonPlanarWitness> planar_embed(const Graph& g) {
  auto bg = detail::to_boost(g);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<detail::BoostEdge>> embedding(n);
  std::vector<detail::BoostEdge> kuratowski;
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));
  if (!planar) {
    std::vector<Edge> edges;
    for (const auto& e : kuratowski)
      edges.emplace_back(static_cast<Vertex>(boost::source(e, bg)), static_cast<Vertex>(boost::target(e, bg)));
    return detail::classify_witness(g.num_vertices(), std::move(edges));
  }
  std::vector<std::vector<Vertex>> rotation(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : embedding[v]) {
      auto s = boost::source(e, bg), t = boost::target(e, bg);
      rotation[v].push_back(static_cast<Vertex>(s == v ? t : s));
    }
  return PlaneGraph(g, std::move(rotation));
}

struct RootedTriangulation {
  PlaneGraph plane;                 // every face a triangle; outer dart leaves `root`
  Vertex root = 0;
  std::vector<Edge> original_edges;  // edges of the input graph
  std::vector<Edge> added_edges;     // edges introduced by triangulate()
};

// Adds chords inside every face of length > 3 until all faces are triangles,
// keeping the graph simple. The outer face is re-designated to a face at r.
inline RootedTriangulation triangulate(const PlaneGraph& pg, Vertex r) {
  const int n = pg.num_vertices();
  if (n < 3) throw PreconditionError("triangulate requires at least 3 vertices");
  if (r < 0 || r >= n) throw PreconditionError("root vertex out of range");
  if (connected_components(pg.graph()).size() != 1) throw PreconditionError("triangulate requires a connected graph");

  std::vector<std::vector<Vertex>> rotation = pg.rotation();
  std::unordered_set<long long> edge_set;
  auto key = [n](Vertex u, Vertex v) {
    auto [a, b] = normalized(u, v);
    return static_cast<long long>(a) * n + b;
  };
  for (auto [u, v] : pg.graph().edges()) edge_set.insert(key(u, v));
  std::vector<int> degree(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) degree[v] = pg.graph().degree(v);

  // Face walks as vertex sequences; walk[i] -> walk[i+1] is a dart of the face.
  std::vector<std::vector<Vertex>> work;
  {
    std::vector<char> seen(static_cast<std::size_t>(pg.num_darts()), 0);
    for (Dart s = 0; s < pg.num_darts(); ++s) {
      if (seen[s]) continue;
      std::vector<Vertex> walk;
      Dart d = s;
      do {
        seen[d] = 1;
        walk.push_back(pg.tail(d));
        d = pg.next_in_face(d);
      } while (d != s);
      if (walk.size() > 3) work.push_back(std::move(walk));
    }
  }

  auto insert_after = [&rotation](Vertex at, Vertex after, Vertex value) {
    auto& rot = rotation[at];
    auto it = std::find(rot.begin(), rot.end(), after);
    rot.insert(it + 1, value);
  };

  std::vector<Edge> added;
  while (!work.empty()) {
    std::vector<Vertex> walk = std::move(work.back());
    work.pop_back();
    const int len = static_cast<int>(walk.size());
    std::vector<int> order(static_cast<std::size_t>(len));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degree[walk[a]] < degree[walk[b]]; });
    int ci = -1, cj = -1;
    for (int i : order) {
      for (int off = 2; off <= len - 2 && ci < 0; ++off) {
        int j = (i + off) % len;
        if (walk[i] != walk[j] && !edge_set.count(key(walk[i], walk[j]))) {
          ci = i;
          cj = j;
        }
      }
      if (ci >= 0) break;
    }
    if (ci < 0) throw ImpossibleState("face of length " + std::to_string(len) + " admits no simple chord");
    const Vertex a = walk[ci], b = walk[cj];
    insert_after(a, walk[(ci + len - 1) % len], b);
    insert_after(b, walk[(cj + len - 1) % len], a);
    edge_set.insert(key(a, b));
    ++degree[a];
    ++degree[b];
    added.push_back(normalized(a, b));

    std::vector<Vertex> first, second;  // a..b and b..a along the old walk
    for (int p = ci;; p = (p + 1) % len) {
      first.push_back(walk[p]);
      if (p == cj) break;
    }
    for (int p = cj;; p = (p + 1) % len) {
      second.push_back(walk[p]);
      if (p == ci) break;
    }
    if (first.size() > 3) work.push_back(std::move(first));
    if (second.size() > 3) work.push_back(std::move(second));
  }

  std::vector<Edge> all = pg.graph().edges();
  all.insert(all.end(), added.begin(), added.end());
  Graph plus = build_graph(n, all);
  if (plus.num_edges() != 3 * static_cast<std::size_t>(n) - 6)
    throw ImpossibleState("triangulation has " + std::to_string(plus.num_edges()) + " edges, expected 3n-6");

  RootedTriangulation out;
  const Vertex first = rotation[r].front();
  out.plane = PlaneGraph(std::move(plus), std::move(rotation), Edge{r, first});
  for (const auto& f : faces(out.plane))
    if (f.boundary.size() != 3) throw ImpossibleState("triangulation left a non-triangular face");
  out.root = r;
  out.original_edges = pg.graph().edges();
  std::sort(added.begin(), added.end());
  out.added_edges = std::move(added);
  return out;
}

struct ConnectedGraph {
  Graph graph;
  std::vector<Edge> added;
};

// Joins consecutive components (ordered by smallest vertex) with one bridge
// between their smallest vertices.
inline ConnectedGraph connect_components(const Graph& g) {
  auto comps = connected_components(g);
  ConnectedGraph out;
  for (std::size_t i = 1; i < comps.size(); ++i) out.added.emplace_back(comps[i - 1].front(), comps[i].front());
  if (out.added.empty()) {
    out.graph = g;
    return out;
  }
  auto edges = g.edges();
  edges.insert(edges.end(), out.added.begin(), out.added.end());
  out.graph = build_graph(g.num_vertices(), edges);
  return out;
}

}  // namespace pps
