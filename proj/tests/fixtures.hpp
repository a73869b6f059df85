#pragma once

// Hand-built plane triangulations shared by several test files.

#include "pps/decomposer.hpp"
#include "pps/planar.hpp"

namespace fixtures {

using namespace pps;

// K4 drawn as triangle 0 1 2 with 3 in the middle; outer face 0 1 2.
inline Graph k4_graph() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

inline RootedTriangulation k4_triangulation() {
  RootedTriangulation t;
  t.plane = PlaneGraph(k4_graph(), {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {2, 0, 1}}, Edge{0, 1});
  t.root = 0;
  t.original_edges = k4_graph().edges();
  return t;
}

inline Host k4_host() { return Host(k4_triangulation(), bfs_tree(k4_graph(), 0)); }

// Pentagon p1..p5 = 0..4 with an inner triangle a = 5 (touching p1, p2),
// b = 6 (touching p2, p3, p4) and c = 7 (touching p4, p5, p1), and an outer
// vertex o = 8 joined to the whole pentagon. The dart p_i -> p_{i+1} faces
// into the pentagon.
inline Graph pentagon_graph() {
  return build_graph(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {8, 0}, {8, 1}, {8, 2}, {8, 3}, {8, 4}, {5, 0},
                         {5, 1}, {6, 1}, {6, 2}, {6, 3}, {7, 3}, {7, 4}, {7, 0}, {5, 7}, {5, 6}, {6, 7}});
}

inline RootedTriangulation pentagon_triangulation() {
  RootedTriangulation t;
  t.plane = PlaneGraph(pentagon_graph(),
                       {{4, 7, 5, 1, 8},
                        {6, 2, 8, 0, 5},
                        {8, 1, 6, 3},
                        {8, 2, 6, 7, 4},
                        {3, 7, 0, 8},
                        {7, 6, 1, 0},
                        {3, 2, 1, 5, 7},
                        {3, 6, 5, 0, 4},
                        {0, 1, 2, 3, 4}},
                       Edge{8, 0});
  t.root = 8;
  t.original_edges = pentagon_graph().edges();
  return t;
}

// Tree rooted at o with a under p1, b under p3 and c under `c_parent`
// (p5 = 4 steers the k = 5 hub into the mirror branch, p4 = 3 into the
// primary one).
inline Host pentagon_host(Vertex c_parent) {
  return Host(pentagon_triangulation(), BfsTree::from_parents({8, 8, 8, 8, 8, 0, 2, c_parent, -1}));
}

inline BoundaryCycle pentagon_boundary() {
  BoundaryCycle b;
  for (int i = 0; i < 5; ++i) b.paths.push_back({{i}, i});
  return b;
}

}  // namespace fixtures
