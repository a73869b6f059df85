#pragma once

// Independent checks of a ProductCertificate. Nothing here trusts derived
// data from the certificate: the quotient, BFS distances and bag coverage are
// all recomputed from the input graph and the partition.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pps/decomposer.hpp"
#include "pps/errors.hpp"
#include "pps/graph.hpp"
#include "pps/planar.hpp"
#include "pps/product.hpp"

namespace pps {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  int observed_width = -1;
  bool simplicity_ok = false;
  bool embedding_ok = false;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline CheckResult fail(std::string name, std::string detail) { return {std::move(name), false, std::move(detail)}; }

inline std::string edge_str(int a, int b) { return std::to_string(a) + "-" + std::to_string(b); }

}  // namespace detail

// Both tree-decomposition axioms over graph h: the bag tree is a tree, every
// edge of h lies in a bag, and every vertex's bags form a non-empty subtree.
inline CheckResult check_tree_decomposition(const Graph& h, const TreeDecomposition& dec) {
  const std::string name = "tree_decomposition";
  const int nodes = static_cast<int>(dec.bags.size());
  const int nh = h.num_vertices();
  if (nodes == 0) return nh == 0 ? CheckResult{name, true, ""} : detail::fail(name, "no bags");
  if (static_cast<int>(dec.edges.size()) != nodes - 1)
    return detail::fail(name, "bag tree has " + std::to_string(dec.edges.size()) + " edges for " + std::to_string(nodes) + " nodes");
  if (dec.anchor < 0 || dec.anchor >= nodes) return detail::fail(name, "anchor node out of range");
  std::vector<std::vector<int>> tadj(static_cast<std::size_t>(nodes));
  for (auto [a, b] : dec.edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) return detail::fail(name, "bad tree edge " + detail::edge_str(a, b));
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : tadj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != nodes) return detail::fail(name, "bag tree is disconnected");

  std::vector<int> node_count(static_cast<std::size_t>(nh), 0), edge_count(static_cast<std::size_t>(nh), 0);
  std::set<Edge> covered;
  for (const auto& bag : dec.bags) {
    for (int a : bag) {
      if (a < 0 || a >= nh) return detail::fail(name, "bag holds unknown vertex " + std::to_string(a));
      ++node_count[a];
    }
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j) covered.insert(normalized(bag[i], bag[j]));
  }
  for (auto [a, b] : h.edges())
    if (!covered.count({a, b})) return detail::fail(name, "(a) edge " + detail::edge_str(a, b) + " is in no bag");
  for (auto [x, y] : dec.edges) {
    const auto& bx = dec.bags[x];
    const auto& by = dec.bags[y];
    for (int a : bx)
      if (std::find(by.begin(), by.end(), a) != by.end()) ++edge_count[a];
  }
  // Nodes holding a vertex induce a forest; it is a tree iff #edges = #nodes - 1.
  for (int a = 0; a < nh; ++a) {
    if (node_count[a] == 0) return detail::fail(name, "(b) vertex " + std::to_string(a) + " is in no bag");
    if (edge_count[a] != node_count[a] - 1)
      return detail::fail(name, "(b) bags holding vertex " + std::to_string(a) + " are not connected");
  }
  return {name, true, ""};
}

inline CheckResult check_width(const TreeDecomposition& dec, int max_width) {
  const int w = dec.width();
  if (w > max_width) return detail::fail("width", "width " + std::to_string(w) + " exceeds " + std::to_string(max_width));
  return {"width", true, "width " + std::to_string(w)};
}

// Every k-set of vertices lies in at most two bags. Only k-subsets of bags can
// occur in a bag, so those are enumerated and tallied.
inline CheckResult check_simple(const TreeDecomposition& dec, int k = 6) {
  const std::string name = "simple";
  std::map<std::vector<int>, int> tally;
  for (const auto& bag : dec.bags) {
    if (static_cast<int>(bag.size()) > k + 1)
      return detail::fail(name, "bag of size " + std::to_string(bag.size()) + " exceeds width " + std::to_string(k));
    if (static_cast<int>(bag.size()) < k) continue;
    std::vector<int> sorted = bag;
    std::sort(sorted.begin(), sorted.end());
    // bag.size() is k or k + 1: skip nothing, or skip exactly one element.
    if (static_cast<int>(sorted.size()) == k) {
      ++tally[sorted];
    } else {
      for (std::size_t skip = 0; skip < sorted.size(); ++skip) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < sorted.size(); ++i)
          if (i != skip) sub.push_back(sorted[i]);
        ++tally[sub];
      }
    }
  }
  for (const auto& [set, count] : tally)
    if (count > 2) {
      std::string s;
      for (int a : set) s += (s.empty() ? "" : ",") + std::to_string(a);
      return detail::fail(name, "set {" + s + "} lies in " + std::to_string(count) + " bags");
    }
  return {name, true, ""};
}

// parent/depth describe a BFS spanning forest of g: tree edges are graph edges,
// one root per component, and every depth is the true distance to that root.
inline CheckResult check_bfs_tree(const Graph& g, const BfsTree& t) {
  const std::string name = "bfs_tree";
  const int n = g.num_vertices();
  if (t.size() != n || static_cast<int>(t.depth.size()) != n) return detail::fail(name, "array sizes differ from n");
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  for (Vertex r = 0; r < n; ++r) {
    if (t.parent[r] != -1) continue;
    if (dist[r] != -1) return detail::fail(name, "two roots in one component (vertex " + std::to_string(r) + ")");
    std::deque<Vertex> queue{r};
    dist[r] = 0;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (dist[v] < 0) return detail::fail(name, "component of vertex " + std::to_string(v) + " has no root");
    if (t.depth[v] != dist[v])
      return detail::fail(name, "vertex " + std::to_string(v) + " has depth " + std::to_string(t.depth[v]) +
                                    " but distance " + std::to_string(dist[v]));
    Vertex p = t.parent[v];
    if (p == -1) continue;
    if (p < 0 || p >= n || !g.has_edge(v, p)) return detail::fail(name, "parent of " + std::to_string(v) + " is not a neighbour");
    if (t.depth[p] + 1 != t.depth[v]) return detail::fail(name, "depth of " + std::to_string(v) + " is not parent depth + 1");
  }
  return {name, true, ""};
}

// Exact cover of V(g) by paths that are vertical in t (listed shallowest first).
inline CheckResult check_partition(const Graph& g, const BfsTree& t, std::span<const std::vector<Vertex>> parts) {
  const std::string name = "partition";
  const int n = g.num_vertices();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.empty()) return detail::fail(name, "part " + std::to_string(i) + " is empty");
    for (std::size_t j = 0; j < p.size(); ++j) {
      Vertex v = p[j];
      if (v < 0 || v >= n) return detail::fail(name, "part " + std::to_string(i) + " holds unknown vertex");
      if (owner[v] != -1) return detail::fail(name, "vertex " + std::to_string(v) + " covered twice");
      owner[v] = static_cast<int>(i);
      if (j > 0 && (t.parent[v] != p[j - 1] || t.depth[v] != t.depth[p[j - 1]] + 1))
        return detail::fail(name, "part " + std::to_string(i) + " is not vertical at vertex " + std::to_string(v));
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (owner[v] == -1) return detail::fail(name, "vertex " + std::to_string(v) + " not covered");
  return {name, true, ""};
}

namespace detail {

inline Graph recompute_quotient(const Graph& g, std::span<const std::vector<Vertex>> parts, std::vector<int>& owner) {
  owner.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Vertex v : parts[i])
      if (v >= 0 && v < g.num_vertices()) owner[v] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (owner[u] >= 0 && owner[v] >= 0 && owner[u] != owner[v]) edges.push_back(normalized(owner[u], owner[v]));
  return build_graph(static_cast<int>(parts.size()), edges);
}

}  // namespace detail

// The stored H equals G / P and each witness is a G-edge between its parts.
inline CheckResult check_quotient(const ProductCertificate& cert) {
  const std::string name = "quotient";
  std::vector<int> owner;
  Graph h = detail::recompute_quotient(cert.graph, cert.quotient.parts, owner);
  if (!(h == cert.quotient.graph)) return detail::fail(name, "stored quotient differs from G / P");
  auto hedges = h.edges();
  if (cert.quotient.witnesses.size() != hedges.size()) return detail::fail(name, "witness count differs from edge count");
  for (std::size_t i = 0; i < hedges.size(); ++i) {
    auto [u, v] = cert.quotient.witnesses[i];
    if (!cert.graph.has_edge(u, v) || normalized(owner[u], owner[v]) != hedges[i])
      return detail::fail(name, "bad witness for H-edge " + detail::edge_str(hedges[i].first, hedges[i].second));
  }
  return {name, true, ""};
}

// v -> (part, layer) is injective and maps every G-edge to an edge of H x P.
inline CheckResult check_embedding(const ProductCertificate& cert) {
  const std::string name = "embedding";
  const Graph& g = cert.graph;
  const int n = g.num_vertices();
  if (static_cast<int>(cert.layers.size()) != n) return detail::fail(name, "layer array size differs from n");
  std::vector<int> owner;
  Graph h = detail::recompute_quotient(g, cert.quotient.parts, owner);
  std::set<std::pair<int, int>> images;
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] < 0) return detail::fail(name, "vertex " + std::to_string(v) + " has no part");
    if (cert.layers[v] < 0 || cert.layers[v] >= cert.path_length)
      return detail::fail(name, "layer of vertex " + std::to_string(v) + " outside the path");
    if (!images.insert({owner[v], cert.layers[v]}).second)
      return detail::fail(name, "not injective: vertex " + std::to_string(v) + " shares (part " +
                                    std::to_string(owner[v]) + ", layer " + std::to_string(cert.layers[v]) + ")");
  }
  for (auto [u, v] : g.edges()) {
    ProductVertex a{owner[u], cert.layers[u]}, b{owner[v], cert.layers[v]};
    if (!strong_product_adjacent(a, b, h))
      return detail::fail(name, "edge " + detail::edge_str(u, v) + " is not mapped to an edge of H x P");
  }
  return {name, true, ""};
}

// G plus the added edges is a planar triangulation of every component with at
// least 3 vertices, and the added edges stay inside components.
inline CheckResult check_triangulation(const ProductCertificate& cert) {
  const std::string name = "triangulation";
  const Graph& g = cert.graph;
  for (auto [u, v] : cert.added_edges)
    if (g.has_edge(u, v)) return detail::fail(name, "added edge " + detail::edge_str(u, v) + " already in G");
  std::vector<Edge> all = g.edges();
  all.insert(all.end(), cert.added_edges.begin(), cert.added_edges.end());
  Graph plus;
  try {
    plus = build_graph(g.num_vertices(), all);
  } catch (const PreconditionError& e) {
    return detail::fail(name, e.what());
  }
  auto comps = connected_components(g);
  auto comps_plus = connected_components(plus);
  if (comps.size() != comps_plus.size()) return detail::fail(name, "added edges join components");
  for (const auto& comp : comps) {
    if (comp.size() < 3) continue;
    Graph sub = induced_subgraph(plus, comp);
    if (sub.num_edges() != 3 * comp.size() - 6)
      return detail::fail(name, "component at vertex " + std::to_string(comp.front()) + " is not triangulated");
    if (!is_planar(sub)) return detail::fail(name, "triangulated component is not planar");
  }
  return {name, true, ""};
}

inline CheckResult check_quotient_planar(const ProductCertificate& cert) {
  std::vector<int> owner;
  Graph h = detail::recompute_quotient(cert.graph, cert.quotient.parts, owner);
  if (!is_planar(h)) return detail::fail("quotient_planar", "H is not planar");
  return {"quotient_planar", true, ""};
}

inline VerificationReport verify(const ProductCertificate& cert, int simple_k = 6) {
  VerificationReport r;
  r.checks.push_back(check_bfs_tree(cert.graph, cert.bfs));
  const bool bfs_ok = r.checks.back().pass;
  if (bfs_ok) r.checks.push_back(check_partition(cert.graph, cert.bfs, cert.quotient.parts));
  const bool partition_ok = bfs_ok && r.checks.back().pass;
  r.checks.push_back(check_quotient(cert));
  std::vector<int> owner;
  Graph h = detail::recompute_quotient(cert.graph, cert.quotient.parts, owner);
  r.checks.push_back(check_tree_decomposition(h, cert.decomposition));
  r.observed_width = cert.decomposition.width();
  r.checks.push_back(check_width(cert.decomposition, simple_k));
  if (r.checks.back().pass) {
    r.checks.push_back(check_simple(cert.decomposition, simple_k));
    r.simplicity_ok = r.checks.back().pass;
  }
  r.checks.push_back(check_embedding(cert));
  r.embedding_ok = r.checks.back().pass;
  if (partition_ok) {
    r.checks.push_back(check_quotient_planar(cert));
  }
  r.checks.push_back(check_triangulation(cert));
  return r;
}

// Exact treewidth by dynamic programming over vertex subsets: TW(S) is the
// best width of eliminating S first, where eliminating v after S costs the
// number of vertices outside S + v reachable from v through S.
inline int exact_treewidth(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 12) throw PreconditionError("exact_treewidth supports at most 12 vertices");
  if (n == 0) return -1;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) nbr[v] |= 1u << w;
  auto q_value = [&](std::uint32_t s, int v) {
    std::uint32_t reached = 1u << v, frontier = 1u << v, result = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr[static_cast<std::size_t>(std::countr_zero(f))];
      next &= ~reached;
      reached |= next;
      result |= next & ~s;
      frontier = next & s;
    }
    return std::popcount(result);
  };
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> tw(static_cast<std::size_t>(full) + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n;
    for (std::uint32_t bits = s; bits; bits &= bits - 1) {
      int v = std::countr_zero(bits);
      std::uint32_t rest = s & ~(1u << v);
      best = std::min(best, std::max(tw[rest], q_value(rest, v)));
    }
    tw[s] = best;
  }
  return tw[full];
}

struct SpernerCount {
  bool hypothesis_ok = false;
  int trichromatic = 0;
  std::vector<std::array<Vertex, 3>> faces;  // sorted vertex triples
};

// Counts internal faces coloured {1,2,3}. The hypothesis holds when the
// boundary cycle splits into three non-empty consecutive arcs coloured 1, 2, 3
// in that cyclic order.
inline SpernerCount sperner_oracle(std::span<const std::array<Vertex, 3>> internal_faces,
                                   std::span<const Vertex> boundary, std::span<const int> colour) {
  SpernerCount out;
  const std::size_t len = boundary.size();
  if (len >= 3) {
    int changes = 0;
    bool bad = false;
    for (std::size_t i = 0; i < len; ++i) {
      int a = colour[boundary[i]], b = colour[boundary[(i + 1) % len]];
      if (a < 1 || a > 3) bad = true;
      if (a != b) {
        ++changes;
        if (b != a % 3 + 1) bad = true;
      }
    }
    out.hypothesis_ok = !bad && changes == 3;
  }
  for (auto f : internal_faces) {
    std::array<int, 3> c{colour[f[0]], colour[f[1]], colour[f[2]]};
    std::sort(c.begin(), c.end());
    if (c == std::array<int, 3>{1, 2, 3}) {
      std::sort(f.begin(), f.end());
      out.faces.push_back(f);
    }
  }
  std::sort(out.faces.begin(), out.faces.end());
  out.trichromatic = static_cast<int>(out.faces.size());
  return out;
}

}  // namespace pps
