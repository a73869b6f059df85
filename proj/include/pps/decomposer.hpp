#pragma once

// Recursive construction of a partition of a near-triangulation into vertical
// paths together with a 6-simple tree-decomposition of its quotient.
//
// A region is bounded by a cycle F = [P_1, ..., P_k] of k <= 5 vertical paths.
// Every vertex inside F is coloured by the boundary path where its tree path
// first meets F; merging those classes into three arcs R_1, R_2, R_3 yields a
// Sperner colouring, so some internal face tau = v_1 v_2 v_3 sees all three
// colours. The tree paths Q_i from each v_i up to F cut the region into at
// most three smaller regions F_i = [Q_i', R_i^+, R_{i+1}^-, Q_{i+1}'], each
// again bounded by at most five vertical paths. The new parts are the non-empty
// Q_i'; the hub bag holds P_1..P_k and Q_1'..Q_3' and is joined to the anchor
// bag of every child region. When k = 5 the hub would hold 8 parts, so it is
// split into two bags y and z of size at most 7.

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pps/errors.hpp"
#include "pps/graph.hpp"
#include "pps/layering.hpp"
#include "pps/planar.hpp"

namespace pps {

// Tree of bags over part ids. Bags are kept sorted and duplicate-free.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;
  int anchor = 0;

  int add_node(std::vector<int> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    bags.push_back(std::move(bag));
    return static_cast<int>(bags.size()) - 1;
  }
  void link(int a, int b) { edges.emplace_back(a, b); }

  int max_bag() const {
    std::size_t best = 0;
    for (const auto& b : bags) best = std::max(best, b.size());
    return static_cast<int>(best);
  }
  int width() const { return max_bag() - 1; }

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

// Counters describing one run of the recursion.
struct DecompositionTrace {
  std::array<long long, 6> k_histogram{};  // regions per boundary size k (index 1..5)
  long long regions = 0;
  long long degenerate_regions = 0;
  long long k5_hubs = 0;
  long long k5_full_hubs = 0;  // k = 5 hubs with |B_y| = |B_z| = 7
  long long mirror_branches = 0;
  long long anchor_checks = 0;
  int max_depth = 0;

  void merge(const DecompositionTrace& o) {
    for (std::size_t i = 0; i < k_histogram.size(); ++i) k_histogram[i] += o.k_histogram[i];
    regions += o.regions;
    degenerate_regions += o.degenerate_regions;
    k5_hubs += o.k5_hubs;
    k5_full_hubs += o.k5_full_hubs;
    mirror_branches += o.mirror_branches;
    anchor_checks += o.anchor_checks;
    max_depth = std::max(max_depth, o.max_depth);
  }
  friend bool operator==(const DecompositionTrace&, const DecompositionTrace&) = default;
};

// Plane triangulation G+ with the spanning tree T and per-face tables.
class Host {
 public:
  Host(RootedTriangulation tri, BfsTree tree) : tri_(std::move(tri)), tree_(std::move(tree)) {
    const PlaneGraph& pg = tri_.plane;
    if (tree_.size() != pg.num_vertices()) throw PreconditionError("tree and triangulation sizes differ");
    dart_face_.assign(static_cast<std::size_t>(pg.num_darts()), -1);
    for (Dart s = 0; s < pg.num_darts(); ++s) {
      if (dart_face_[s] >= 0) continue;
      std::array<Dart, 3> ds{};
      Dart d = s;
      for (int i = 0; i < 3; ++i) {
        ds[static_cast<std::size_t>(i)] = d;
        d = pg.next_in_face(d);
      }
      if (d != s) throw PreconditionError("host is not a triangulation");
      const int id = static_cast<int>(face_darts_.size());
      for (Dart x : ds) dart_face_[x] = id;
      face_darts_.push_back(ds);
    }
    if (!pg.outer_dart()) throw PreconditionError("host has no outer face");
    outer_face_ = dart_face_[*pg.outer_dart()];
    bool root_outer = false;
    for (Vertex v : face_vertices(outer_face_)) root_outer |= (v == tree_.root);
    if (!root_outer) throw PreconditionError("tree root is not on the outer face");
  }

  const RootedTriangulation& triangulation() const { return tri_; }
  const PlaneGraph& plane() const { return tri_.plane; }
  const BfsTree& tree() const { return tree_; }
  int num_vertices() const { return tri_.plane.num_vertices(); }
  int num_faces() const { return static_cast<int>(face_darts_.size()); }
  int outer_face() const { return outer_face_; }
  int face_of(Dart d) const { return dart_face_[d]; }
  const std::array<Dart, 3>& face_darts(int f) const { return face_darts_[f]; }
  std::array<Vertex, 3> face_vertices(int f) const {
    const auto& ds = face_darts_[f];
    return {plane().tail(ds[0]), plane().tail(ds[1]), plane().tail(ds[2])};
  }

  // The outer triangle as three singleton paths with ids 0, 1, 2, starting at
  // the root and oriented so the interior lies on the inner side.
  BoundaryCycle outer_boundary() const {
    auto fv = face_vertices(outer_face_);
    std::vector<Vertex> cyc{fv[0], fv[2], fv[1]};
    std::rotate(cyc.begin(), std::find(cyc.begin(), cyc.end(), tree_.root), cyc.end());
    BoundaryCycle b;
    for (int i = 0; i < 3; ++i) b.paths.push_back({{cyc[static_cast<std::size_t>(i)]}, i});
    return b;
  }

 private:
  RootedTriangulation tri_;
  BfsTree tree_;
  std::vector<int> dart_face_;
  std::vector<std::array<Dart, 3>> face_darts_;
  int outer_face_ = -1;
};

// The part of the host on and inside a boundary cycle.
struct NearTriangulation {
  BoundaryCycle boundary;
  std::vector<int> faces;        // internal faces, sorted
  std::vector<Vertex> vertices;  // sorted
  std::vector<int> position;     // aligned with vertices: index on the boundary cycle, or -1
  std::vector<Vertex> interior;  // by (depth, id)

  int local(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    return (it != vertices.end() && *it == v) ? static_cast<int>(it - vertices.begin()) : -1;
  }
  bool contains(Vertex v) const { return local(v) >= 0; }
  int position_of(Vertex v) const {
    int i = local(v);
    return i < 0 ? -1 : position[static_cast<std::size_t>(i)];
  }
  int k() const { return boundary.k(); }

  // Index of the boundary path holding each cycle position.
  std::vector<int> path_at_position() const {
    std::vector<int> out;
    for (int i = 0; i < boundary.k(); ++i)
      out.insert(out.end(), boundary.paths[static_cast<std::size_t>(i)].vertices.size(), i);
    return out;
  }

  void rotate_boundary(int s) {
    if (s == 0) return;
    boundary = boundary.rotated(s);
    reindex();
  }

  void reindex() {
    std::fill(position.begin(), position.end(), -1);
    auto cyc = boundary.cycle();
    for (std::size_t p = 0; p < cyc.size(); ++p) position[static_cast<std::size_t>(local(cyc[p]))] = static_cast<int>(p);
  }
};

// Collects the faces on the inner side of `boundary` by flooding the dual
// without crossing boundary edges.
inline NearTriangulation make_near_triangulation(const Host& host, BoundaryCycle boundary) {
  const PlaneGraph& pg = host.plane();
  const auto cyc = boundary.cycle();
  const std::size_t len = cyc.size();
  if (len < 3) throw StructuralError("boundary cycle has fewer than 3 vertices");
  std::vector<Edge> cycle_edges;
  for (std::size_t i = 0; i < len; ++i) cycle_edges.push_back(normalized(cyc[i], cyc[(i + 1) % len]));
  std::sort(cycle_edges.begin(), cycle_edges.end());
  auto on_cycle = [&](Dart d) {
    return std::binary_search(cycle_edges.begin(), cycle_edges.end(), normalized(pg.tail(d), pg.head(d)));
  };

  std::unordered_set<int> seen;
  std::vector<int> stack;
  for (std::size_t i = 0; i < len; ++i) {
    int f = host.face_of(pg.dart(cyc[i], cyc[(i + 1) % len]));
    if (seen.insert(f).second) stack.push_back(f);
  }
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (Dart d : host.face_darts(f)) {
      if (on_cycle(d)) continue;
      int g = host.face_of(pg.reverse(d));
      if (seen.insert(g).second) stack.push_back(g);
    }
  }
  if (seen.count(host.outer_face())) throw StructuralError("boundary orientation encloses the outer face");

  NearTriangulation nt;
  nt.boundary = std::move(boundary);
  nt.faces.assign(seen.begin(), seen.end());
  std::sort(nt.faces.begin(), nt.faces.end());
  for (int f : nt.faces)
    for (Vertex v : host.face_vertices(f)) nt.vertices.push_back(v);
  std::sort(nt.vertices.begin(), nt.vertices.end());
  nt.vertices.erase(std::unique(nt.vertices.begin(), nt.vertices.end()), nt.vertices.end());
  nt.position.assign(nt.vertices.size(), -1);
  for (Vertex v : cyc)
    if (!nt.contains(v)) throw StructuralError("boundary vertex " + std::to_string(v) + " not in region");
  nt.reindex();
  for (std::size_t i = 0; i < nt.vertices.size(); ++i)
    if (nt.position[i] < 0) nt.interior.push_back(nt.vertices[i]);
  const auto& depth = host.tree().depth;
  std::sort(nt.interior.begin(), nt.interior.end(),
            [&](Vertex a, Vertex b) { return std::pair(depth[a], a) < std::pair(depth[b], b); });
  return nt;
}

// For every region vertex, the first vertex of its tree path to the root that
// lies on the boundary (the vertex itself when it is on the boundary).
inline std::vector<Vertex> first_boundary_ancestor(const NearTriangulation& nt, const Host& host) {
  std::vector<Vertex> anc(nt.vertices.size(), -1);
  for (std::size_t i = 0; i < nt.vertices.size(); ++i)
    if (nt.position[i] >= 0) anc[i] = nt.vertices[i];
  for (Vertex v : nt.interior) {
    Vertex p = host.tree().parent[v];
    int lp = p < 0 ? -1 : nt.local(p);
    if (lp < 0)
      throw StructuralError("tree path of vertex " + std::to_string(v) + " leaves the region before meeting its boundary");
    anc[static_cast<std::size_t>(nt.local(v))] = anc[static_cast<std::size_t>(lp)];
  }
  return anc;
}

// Colour 1..k per region vertex (aligned with nt.vertices): the index of the
// boundary path where the vertex's tree path first meets the boundary.
inline std::vector<int> k_colouring(const NearTriangulation& nt, const Host& host) {
  const auto anc = first_boundary_ancestor(nt, host);
  const auto path_at = nt.path_at_position();
  std::vector<int> colour(nt.vertices.size());
  for (std::size_t i = 0; i < nt.vertices.size(); ++i) colour[i] = path_at[static_cast<std::size_t>(nt.position_of(anc[i]))] + 1;
  return colour;
}

// Edges of the region (edges of its internal faces) as pairs of local indices.
inline std::vector<std::pair<int, int>> region_edges(const NearTriangulation& nt, const Host& host) {
  std::vector<std::pair<int, int>> out;
  for (int f : nt.faces) {
    auto fv = host.face_vertices(f);
    for (int i = 0; i < 3; ++i) {
      int a = nt.local(fv[static_cast<std::size_t>(i)]), b = nt.local(fv[static_cast<std::size_t>((i + 1) % 3)]);
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Cyclic shift s (new P_i = old P_{i+s}) after which no vertex coloured 2 is
// adjacent to one coloured 5. Always 0 when k <= 4.
inline int rotate_for_K5(const NearTriangulation& nt, const Host& host, std::span<const int> colours) {
  if (nt.k() < 5) return 0;
  std::array<std::array<bool, 6>, 6> adj{};
  for (auto [a, b] : region_edges(nt, host)) {
    int ca = colours[static_cast<std::size_t>(a)], cb = colours[static_cast<std::size_t>(b)];
    adj[static_cast<std::size_t>(ca)][static_cast<std::size_t>(cb)] = true;
    adj[static_cast<std::size_t>(cb)][static_cast<std::size_t>(ca)] = true;
  }
  for (int s = 0; s < 5; ++s) {
    const int old2 = (1 + s) % 5 + 1, old5 = (4 + s) % 5 + 1;
    if (!adj[static_cast<std::size_t>(old2)][static_cast<std::size_t>(old5)]) return s;
  }
  throw ImpossibleState("colour-class contraction contains K5");
}

// Split of the boundary into three consecutive arcs R_1, R_2, R_3. `rotation`
// is a cyclic shift to apply to the boundary first (only used when k = 2 and
// P_1 is a single vertex); `bounds` are cycle positions after that shift, with
// R_i = [bounds[i-1], bounds[i]).
struct PathGrouping {
  int rotation = 0;
  std::array<int, 4> bounds{};

  int group_of_position(int p) const { return p < bounds[1] ? 1 : (p < bounds[2] ? 2 : 3); }
};

inline PathGrouping group_paths(const BoundaryCycle& b) {
  const int k = b.k();
  auto len = [&](int i) { return static_cast<int>(b.paths[static_cast<std::size_t>(i)].vertices.size()); };
  PathGrouping g;
  switch (k) {
    case 1: {
      const int l = len(0);
      if (l < 3) throw StructuralError("single boundary path with fewer than 3 vertices is not a cycle");
      g.bounds = {0, 1, l - 1, l};
      break;
    }
    case 2: {
      if (len(0) < 2) {
        if (len(1) < 2) throw StructuralError("two single-vertex paths do not form a cycle");
        g.rotation = 1;
      }
      const int first = len(g.rotation), second = len(1 - g.rotation);
      g.bounds = {0, 1, first, first + second};
      break;
    }
    case 3:
      g.bounds = {0, len(0), len(0) + len(1), len(0) + len(1) + len(2)};
      break;
    case 4:
      g.bounds = {0, len(0), len(0) + len(1), len(0) + len(1) + len(2) + len(3)};
      break;
    case 5:
      g.bounds = {0, len(0), len(0) + len(1) + len(2), len(0) + len(1) + len(2) + len(3) + len(4)};
      break;
    default:
      throw StructuralError("boundary must consist of 1 to 5 paths, got " + std::to_string(k));
  }
  return g;
}

// Colour 1..3 per region vertex: the arc R_i where its tree path first meets
// the boundary. `nt` must already be rotated by grouping.rotation.
inline std::vector<int> three_colouring(const NearTriangulation& nt, const Host& host, const PathGrouping& grouping) {
  const auto anc = first_boundary_ancestor(nt, host);
  std::vector<int> colour(nt.vertices.size());
  for (std::size_t i = 0; i < nt.vertices.size(); ++i) colour[i] = grouping.group_of_position(nt.position_of(anc[i]));
  return colour;
}

// Least internal face (by sorted vertex triple) whose colours are {1,2,3},
// returned as (v_1, v_2, v_3) with v_i coloured i.
inline std::array<Vertex, 3> find_trichromatic_face(const NearTriangulation& nt, const Host& host,
                                                    std::span<const int> three_colour) {
  std::optional<std::array<Vertex, 3>> best, best_sorted;
  for (int f : nt.faces) {
    auto fv = host.face_vertices(f);
    std::array<Vertex, 3> by_colour{-1, -1, -1};
    bool ok = true;
    for (Vertex v : fv) {
      int c = three_colour[static_cast<std::size_t>(nt.local(v))];
      if (c < 1 || c > 3 || by_colour[static_cast<std::size_t>(c - 1)] != -1) {
        ok = false;
        break;
      }
      by_colour[static_cast<std::size_t>(c - 1)] = v;
    }
    if (!ok) continue;
    std::sort(fv.begin(), fv.end());
    if (!best_sorted || fv < *best_sorted) {
      best_sorted = fv;
      best = by_colour;
    }
  }
  if (!best) throw ImpossibleState("no trichromatic face in a Sperner-coloured near-triangulation");
  return *best;
}

// Tree path from v_i up to its first ancestor v_i' on the boundary.
struct AncestorPath {
  std::vector<Vertex> vertices;  // v_i first, v_i' last

  Vertex terminal() const { return vertices.back(); }
  // Q_i' = Q_i minus v_i', deepest vertex first; possibly empty.
  std::span<const Vertex> prime() const { return std::span<const Vertex>(vertices).first(vertices.size() - 1); }
};

inline std::array<AncestorPath, 3> ancestor_paths(const std::array<Vertex, 3>& tau, const NearTriangulation& nt,
                                                 const Host& host) {
  std::array<AncestorPath, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    Vertex v = tau[i];
    out[i].vertices.push_back(v);
    while (nt.position_of(v) < 0) {
      v = host.tree().parent[v];
      if (v < 0 || !nt.contains(v)) throw StructuralError("ancestor path leaves the region");
      out[i].vertices.push_back(v);
    }
  }
  return out;
}

// Splits a cycle into maximal runs of consecutive vertices that carry the same
// owner id and are joined by tree edges. Each run is a subpath of one vertical
// path, so it is vertical itself.
inline BoundaryCycle segment_boundary(std::span<const Vertex> cycle, std::span<const int> owner, const BfsTree& t) {
  const std::size_t len = cycle.size();
  auto joined = [&](std::size_t a, std::size_t b) {
    return owner[a] == owner[b] && t.is_tree_edge(cycle[a], cycle[b]);
  };
  std::size_t start = len;
  for (std::size_t p = 0; p < len; ++p)
    if (!joined((p + len - 1) % len, p)) {
      start = p;
      break;
    }
  if (start == len) throw ImpossibleState("boundary cycle lies entirely inside one tree path");
  BoundaryCycle out;
  for (std::size_t step = 0; step < len; ++step) {
    std::size_t p = (start + step) % len;
    if (step == 0 || !joined((p + len - 1) % len, p)) out.paths.push_back({{}, owner[p]});
    out.paths.back().vertices.push_back(cycle[p]);
  }
  for (const auto& path : out.paths) {
    std::vector<Vertex> v = path.vertices;
    if (v.size() > 1 && t.depth[v.front()] > t.depth[v.back()]) std::reverse(v.begin(), v.end());
    if (!is_vertical(v, t)) throw ImpossibleState("boundary run is not vertical");
  }
  return out;
}

struct ChildRegion {
  bool degenerate = true;
  std::vector<Vertex> cycle;  // Q_i' (upward), arc of F, Q_{i+1}' (downward)
  BoundaryCycle boundary;     // cycle segmented into vertical paths
};

struct RegionSplit {
  std::array<AncestorPath, 3> q;
  std::array<int, 3> q_ids{-1, -1, -1};        // part id of Q_i', -1 when empty
  std::array<int, 3> terminal_position{};      // cycle position of v_i'
  std::array<ChildRegion, 3> children;         // F_1, F_2, F_3
};

// Builds the boundaries of F_i = [Q_i', R_i^+, R_{i+1}^-, Q_{i+1}'] for
// i = 1, 2, 3. F_i is degenerate when it is just the edge v_i v_{i+1}.
inline RegionSplit split_regions(const NearTriangulation& nt, const Host& host, const std::array<AncestorPath, 3>& q,
                                 const std::array<int, 3>& q_ids) {
  RegionSplit split;
  split.q = q;
  split.q_ids = q_ids;
  const auto cyc = nt.boundary.cycle();
  const auto path_at = nt.path_at_position();
  const int len = static_cast<int>(cyc.size());
  for (std::size_t i = 0; i < 3; ++i) split.terminal_position[i] = nt.position_of(q[i].terminal());

  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    ChildRegion& child = split.children[i];
    std::vector<int> owner;
    for (Vertex v : q[i].prime()) {
      child.cycle.push_back(v);
      owner.push_back(q_ids[i]);
    }
    for (int p = split.terminal_position[i];; p = (p + 1) % len) {
      child.cycle.push_back(cyc[static_cast<std::size_t>(p)]);
      owner.push_back(nt.boundary.paths[static_cast<std::size_t>(path_at[static_cast<std::size_t>(p)])].id);
      if (p == split.terminal_position[j]) break;
    }
    auto qj = q[j].prime();
    for (auto it = qj.rbegin(); it != qj.rend(); ++it) {
      child.cycle.push_back(*it);
      owner.push_back(q_ids[j]);
    }
    if (child.cycle.size() == 2) continue;
    child.degenerate = false;
    child.boundary = segment_boundary(child.cycle, owner, host.tree());
    if (child.boundary.k() > 5)
      throw ImpossibleState("sub-region boundary needs " + std::to_string(child.boundary.k()) + " vertical paths");
  }
  return split;
}

enum class HubKind { Single, K5Primary, K5Mirror };

// Decides how the k = 5 hub is rebuilt. After rotate_for_K5, v_2' lies on P_3
// or v_3' lies on P_4. Primary: v_3' on P_4, so Q_2' and P_5 are not adjacent.
// Mirror: otherwise v_2' on P_3 and v_3' on P_5, so Q_3' and P_2 are not
// adjacent. The missing adjacency is checked rather than assumed.
inline HubKind choose_k5_branch(const NearTriangulation& nt, const Host& host, std::span<const int> k_colour,
                                const std::array<AncestorPath, 3>& q) {
  auto colour_of = [&](Vertex v) { return k_colour[static_cast<std::size_t>(nt.local(v))]; };
  const int c2 = colour_of(q[1].vertices.front()), c3 = colour_of(q[2].vertices.front());
  HubKind kind;
  std::span<const Vertex> q_side;
  int path_index;
  if (c3 == 4) {
    kind = HubKind::K5Primary;
    q_side = q[1].prime();
    path_index = 4;
  } else if (c2 == 3) {
    kind = HubKind::K5Mirror;
    q_side = q[2].prime();
    path_index = 1;
  } else {
    throw ImpossibleState("k = 5 with v_2' off P_3 and v_3' off P_4");
  }
  const auto& path = nt.boundary.paths[static_cast<std::size_t>(path_index)].vertices;
  for (Vertex v : q_side)
    for (Vertex w : host.plane().graph().neighbors(v))
      if (std::find(path.begin(), path.end(), w) != path.end())
        throw ImpossibleState("k = 5 hub split: edge " + std::to_string(v) + "-" + std::to_string(w) +
                              " crosses the separated pair");
  return kind;
}

struct HubPlan {
  std::vector<int> path_ids;            // ids of P_1..P_k in order
  std::array<int, 3> q_ids{-1, -1, -1};  // ids of Q_1'..Q_3', -1 when empty
  HubKind kind = HubKind::Single;
};

struct HubNodes {
  int anchor = -1;                       // bag containing every P_i
  std::array<int, 3> attach{-1, -1, -1};  // node each child F_i's anchor joins
  int y = -1, z = -1;
};

// Adds the hub bag(s) of one recursion node to `td`.
inline HubNodes assemble_decomposition(TreeDecomposition& td, const HubPlan& plan) {
  auto qs = [&](std::initializer_list<int> which) {
    std::vector<int> out;
    for (int i : which)
      if (plan.q_ids[static_cast<std::size_t>(i)] >= 0) out.push_back(plan.q_ids[static_cast<std::size_t>(i)]);
    return out;
  };
  auto ps = [&](std::initializer_list<int> which) {
    std::vector<int> out;
    for (int i : which) out.push_back(plan.path_ids[static_cast<std::size_t>(i)]);
    return out;
  };
  auto join = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  HubNodes out;
  switch (plan.kind) {
    case HubKind::Single: {
      int u = td.add_node(join(plan.path_ids, qs({0, 1, 2})));
      out.anchor = u;
      out.attach = {u, u, u};
      break;
    }
    case HubKind::K5Primary: {
      out.y = td.add_node(join(ps({0, 1, 2, 3}), qs({0, 1, 2})));
      out.z = td.add_node(join(ps({0, 1, 2, 3, 4}), qs({0, 2})));
      td.link(out.y, out.z);
      out.anchor = out.z;
      out.attach = {out.y, out.y, out.z};
      break;
    }
    case HubKind::K5Mirror: {
      out.y = td.add_node(join(ps({0, 2, 3, 4}), qs({0, 1, 2})));
      out.z = td.add_node(join(ps({0, 1, 2, 3, 4}), qs({0, 1})));
      td.link(out.y, out.z);
      out.anchor = out.z;
      out.attach = {out.z, out.y, out.y};
      break;
    }
  }
  return out;
}

struct DecompositionResult {
  std::vector<VerticalPath> partition;  // indexed by part id
  std::vector<int> part_of;             // per host vertex
  TreeDecomposition decomposition;
  DecompositionTrace trace;
};

// Runs the recursion from `top` (paths with ids 0..k-1) over the whole region
// it bounds. Uses an explicit work stack; sub-regions are independent.
inline DecompositionResult near_triang_partition(const Host& host, const BoundaryCycle& top) {
  const BfsTree& t = host.tree();
  DecompositionResult res;
  res.part_of.assign(static_cast<std::size_t>(host.num_vertices()), -1);
  for (int i = 0; i < top.k(); ++i) {
    const auto& p = top.paths[static_cast<std::size_t>(i)];
    if (p.id != i) throw PreconditionError("top boundary path ids must be 0..k-1 in order");
    res.partition.push_back(make_vertical(p.vertices, t));
    for (Vertex v : p.vertices) res.part_of[v] = i;
  }
  if (!is_valid_boundary(top, host.plane().graph(), t)) throw PreconditionError("top boundary is not a cycle of vertical paths");

  struct Task {
    NearTriangulation region;
    int attach;
    int depth;
  };
  std::vector<Task> stack;
  stack.push_back({make_near_triangulation(host, top), -1, 0});
  auto& td = res.decomposition;
  auto& trace = res.trace;

  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    NearTriangulation& nt = task.region;
    ++trace.regions;
    trace.k_histogram[static_cast<std::size_t>(nt.k())]++;
    trace.max_depth = std::max(trace.max_depth, task.depth);

    std::vector<int> boundary_ids;
    for (const auto& p : nt.boundary.paths) boundary_ids.push_back(p.id);

    int anchor;
    if (nt.vertices.size() == 3) {
      anchor = td.add_node(boundary_ids);
    } else {
      auto colours = k_colouring(nt, host);
      if (int s = rotate_for_K5(nt, host, colours); s != 0) {
        nt.rotate_boundary(s);
        colours = k_colouring(nt, host);
      }
      const PathGrouping grouping = group_paths(nt.boundary);
      if (grouping.rotation != 0) {
        nt.rotate_boundary(grouping.rotation);
        colours = k_colouring(nt, host);
      }
      const auto three = three_colouring(nt, host, grouping);
      const auto tau = find_trichromatic_face(nt, host, three);
      const auto q = ancestor_paths(tau, nt, host);

      std::array<int, 3> q_ids{-1, -1, -1};
      for (std::size_t i = 0; i < 3; ++i) {
        auto prime = q[i].prime();
        if (prime.empty()) continue;
        q_ids[i] = static_cast<int>(res.partition.size());
        res.partition.push_back(make_vertical({prime.begin(), prime.end()}, t));
        for (Vertex v : prime) {
          if (res.part_of[v] != -1) throw ImpossibleState("vertex " + std::to_string(v) + " assigned to two parts");
          res.part_of[v] = q_ids[i];
        }
      }

      HubPlan plan;
      for (const auto& p : nt.boundary.paths) plan.path_ids.push_back(p.id);
      plan.q_ids = q_ids;
      if (nt.k() == 5) plan.kind = choose_k5_branch(nt, host, colours, q);
      const RegionSplit split = split_regions(nt, host, q, q_ids);
      const HubNodes nodes = assemble_decomposition(td, plan);
      anchor = nodes.anchor;
      if (plan.kind != HubKind::Single) {
        ++trace.k5_hubs;
        if (plan.kind == HubKind::K5Mirror) ++trace.mirror_branches;
        if (td.bags[static_cast<std::size_t>(nodes.y)].size() == 7 && td.bags[static_cast<std::size_t>(nodes.z)].size() == 7)
          ++trace.k5_full_hubs;
      }
      for (std::size_t i = 0; i < 3; ++i) {
        const ChildRegion& child = split.children[i];
        if (child.degenerate) {
          ++trace.degenerate_regions;
          continue;
        }
        stack.push_back({make_near_triangulation(host, child.boundary), nodes.attach[i], task.depth + 1});
      }
    }

    const auto& bag = td.bags[static_cast<std::size_t>(anchor)];
    for (int id : boundary_ids)
      if (!std::binary_search(bag.begin(), bag.end(), id))
        throw ImpossibleState("anchor bag misses boundary path " + std::to_string(id));
    ++trace.anchor_checks;
    if (task.attach >= 0) td.link(task.attach, anchor);
    else td.anchor = anchor;
  }

  for (Vertex v = 0; v < host.num_vertices(); ++v)
    if (res.part_of[v] < 0) throw ImpossibleState("vertex " + std::to_string(v) + " not covered by the partition");
  return res;
}

}  // namespace pps
