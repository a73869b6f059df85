#pragma once

#include <algorithm>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "pps/errors.hpp"
#include "pps/graph.hpp"

namespace pps {

// Rooted spanning tree with depth labels. parent[v] == -1 exactly at roots.
struct BfsTree {
  Vertex root = 0;
  std::vector<Vertex> parent;
  std::vector<int> depth;

  int size() const { return static_cast<int>(parent.size()); }
  bool is_tree_edge(Vertex u, Vertex v) const { return parent[u] == v || parent[v] == u; }

  // Builds a tree from an explicit parent array (root has parent -1) and
  // derives depths. Used for hand-made fixtures; bfs_tree() is the normal path.
  static BfsTree from_parents(std::vector<Vertex> parents) {
    BfsTree t;
    const int n = static_cast<int>(parents.size());
    t.parent = std::move(parents);
    t.depth.assign(static_cast<std::size_t>(n), -1);
    int roots = 0;
    for (Vertex v = 0; v < n; ++v)
      if (t.parent[v] == -1) {
        t.root = v;
        t.depth[v] = 0;
        ++roots;
      }
    if (n > 0 && roots != 1) throw StructuralError("parent array must have exactly one root");
    for (Vertex v = 0; v < n; ++v) {
      std::vector<Vertex> chain;
      Vertex u = v;
      while (t.depth[u] < 0) {
        chain.push_back(u);
        u = t.parent[u];
        if (u < 0 || u >= n || static_cast<int>(chain.size()) > n)
          throw StructuralError("parent array does not describe a tree");
      }
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.depth[*it] = t.depth[t.parent[*it]] + 1;
    }
    return t;
  }
};

// Breadth-first spanning tree; neighbours are explored in ascending id order.
inline BfsTree bfs_tree(const Graph& g, Vertex r) {
  const int n = g.num_vertices();
  if (r < 0 || r >= n) throw PreconditionError("root vertex out of range");
  BfsTree t;
  t.root = r;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.depth.assign(static_cast<std::size_t>(n), -1);
  std::deque<Vertex> queue{r};
  t.depth[r] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v))
      if (t.depth[w] < 0) {
        t.depth[w] = t.depth[v] + 1;
        t.parent[w] = v;
        queue.push_back(w);
      }
  }
  for (Vertex v = 0; v < n; ++v)
    if (t.depth[v] < 0) throw StructuralError("graph is disconnected: vertex " + std::to_string(v) + " unreached");
  return t;
}

// A path (x_0, ..., x_p) in T whose depths are d, d+1, ..., d+p.
// Stored shallowest vertex first.
struct VerticalPath {
  std::vector<Vertex> vertices;
  int base_depth = 0;
  friend bool operator==(const VerticalPath&, const VerticalPath&) = default;
};

inline bool is_vertical(std::span<const Vertex> p, const BfsTree& t) {
  if (p.empty()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0 || p[i] >= t.size()) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (t.parent[p[i]] != p[i - 1] || t.depth[p[i]] != t.depth[p[i - 1]] + 1) return false;
  return true;
}

inline VerticalPath make_vertical(std::vector<Vertex> vertices, const BfsTree& t) {
  if (vertices.size() > 1 && t.depth[vertices.front()] > t.depth[vertices.back()])
    std::reverse(vertices.begin(), vertices.end());
  if (!is_vertical(vertices, t)) throw StructuralError("vertex sequence is not a vertical path");
  VerticalPath p;
  p.base_depth = t.depth[vertices.front()];
  p.vertices = std::move(vertices);
  return p;
}

// Greedy decomposition of a walk into maximal vertical runs. A run continues
// while the next vertex is a tree neighbour one level further in the run's
// direction. Runs that go upward are reversed so every output is shallowest
// first.
inline std::vector<VerticalPath> split_into_vertical(std::span<const Vertex> walk, const BfsTree& t) {
  std::vector<Vertex> sorted(walk.begin(), walk.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw StructuralError("walk repeats a vertex");
  std::vector<VerticalPath> out;
  std::size_t i = 0;
  while (i < walk.size()) {
    std::vector<Vertex> run{walk[i]};
    int direction = 0;
    std::size_t j = i + 1;
    for (; j < walk.size(); ++j) {
      Vertex prev = walk[j - 1], cur = walk[j];
      int step = 0;
      if (t.parent[cur] == prev) step = 1;
      else if (t.parent[prev] == cur) step = -1;
      if (step == 0 || (direction != 0 && step != direction)) break;
      direction = step;
      run.push_back(cur);
    }
    out.push_back(make_vertical(std::move(run), t));
    i = j;
  }
  return out;
}

// One path of a boundary cycle, listed in cycle order (which may be either
// shallowest-first or deepest-first), tagged with the id of the partition
// part it belongs to.
struct BoundaryPath {
  std::vector<Vertex> vertices;
  int id = -1;
  friend bool operator==(const BoundaryPath&, const BoundaryPath&) = default;
};

// Cycle F = [P_1, ..., P_k] given as consecutive vertical paths. The cycle
// order is oriented so that, for every consecutive pair (x, y), the face of
// the host triangulation containing the dart x->y lies inside F.
struct BoundaryCycle {
  std::vector<BoundaryPath> paths;

  int k() const { return static_cast<int>(paths.size()); }

  std::vector<Vertex> cycle() const {
    std::vector<Vertex> out;
    for (const auto& p : paths) out.insert(out.end(), p.vertices.begin(), p.vertices.end());
    return out;
  }

  // Cyclic relabelling: path s becomes the first path.
  BoundaryCycle rotated(int s) const {
    BoundaryCycle out;
    const int k = this->k();
    for (int i = 0; i < k; ++i) out.paths.push_back(paths[static_cast<std::size_t>((i + s) % k)]);
    return out;
  }
};

// Checks the boundary invariants: paths non-empty, vertical, pairwise
// disjoint, and consecutive paths joined by edges so the whole forms a cycle.
inline bool is_valid_boundary(const BoundaryCycle& b, const Graph& g, const BfsTree& t) {
  if (b.paths.empty()) return false;
  auto cyc = b.cycle();
  if (cyc.size() < 3) return false;
  auto sorted = cyc;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (const auto& p : b.paths) {
    if (p.vertices.empty()) return false;
    std::vector<Vertex> v = p.vertices;
    if (v.size() > 1 && t.depth[v.front()] > t.depth[v.back()]) std::reverse(v.begin(), v.end());
    if (!is_vertical(v, t)) return false;
  }
  for (std::size_t i = 0; i < cyc.size(); ++i)
    if (!g.has_edge(cyc[i], cyc[(i + 1) % cyc.size()])) return false;
  return true;
}

}  // namespace pps
