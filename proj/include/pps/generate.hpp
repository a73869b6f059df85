#pragma once

// Seeded random planar graph generators.

#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pps/errors.hpp"
#include "pps/graph.hpp"
#include "pps/planar.hpp"

namespace pps {

enum class GenModel { Stacked, EdgeAddition, GridLike };

struct GenSpec {
  GenModel model = GenModel::Stacked;
  int n = 3;
  std::uint64_t seed = 0;
  int failure_budget = 20;  // edge-addition: stop after this many consecutive rejections
};

inline std::string_view model_name(GenModel m) {
  switch (m) {
    case GenModel::Stacked: return "stacked";
    case GenModel::EdgeAddition: return "edge-addition";
    case GenModel::GridLike: return "grid-like";
  }
  return "?";
}

inline GenModel parse_model(std::string_view s) {
  if (s == "stacked") return GenModel::Stacked;
  if (s == "edge-addition") return GenModel::EdgeAddition;
  if (s == "grid-like" || s == "grid") return GenModel::GridLike;
  throw PreconditionError("unknown generator model: " + std::string(s));
}

namespace detail {

inline int uniform_below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng));
}

// Start from a triangle; each new vertex goes into a random face and joins its
// three corners.
inline Graph gen_stacked(int n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  if (n <= 3) {
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) edges.emplace_back(i, j);
    return build_graph(n, edges);
  }
  edges = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<std::array<Vertex, 3>> faces = {{0, 1, 2}, {0, 2, 1}};
  for (Vertex v = 3; v < n; ++v) {
    int f = uniform_below(rng, faces.size());
    auto [a, b, c] = faces[f];
    edges.emplace_back(a, v);
    edges.emplace_back(b, v);
    edges.emplace_back(c, v);
    faces[f] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({c, a, v});
  }
  return build_graph(n, edges);
}

// Random non-edges are accepted while the graph stays planar.
inline Graph gen_edge_addition(int n, int budget, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  if (n < 2) return build_graph(n, edges);
  std::set<Edge> present;
  const long long max_edges = n >= 3 ? 3LL * n - 6 : 1;
  // Joining two components never breaks planarity, so those edges skip the test.
  std::vector<int> comp(static_cast<std::size_t>(n));
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  int failures = 0;
  while (failures < budget && static_cast<long long>(present.size()) < max_edges) {
    Vertex u = uniform_below(rng, static_cast<std::size_t>(n));
    Vertex v = uniform_below(rng, static_cast<std::size_t>(n));
    if (u == v) continue;
    Edge e = normalized(u, v);
    if (present.contains(e)) continue;
    edges.push_back(e);
    const int cu = find(u), cv = find(v);
    if (cu != cv || is_planar(build_graph(n, edges))) {
      comp[cu] = cv;
      present.insert(e);
      failures = 0;
    } else {
      edges.pop_back();
      ++failures;
    }
  }
  return build_graph(n, edges);
}

// Row-major grid of width ceil(sqrt(n)); about half of the full cells get a
// diagonal in a random direction.
inline Graph gen_grid_like(int n, std::mt19937_64& rng) {
  int w = 1;
  while (w * w < n) ++w;
  std::vector<Edge> edges;
  auto id = [w](int r, int c) { return r * w + c; };
  for (Vertex v = 0; v < n; ++v) {
    int r = v / w, c = v % w;
    if (c + 1 < w && v + 1 < n) edges.emplace_back(v, v + 1);
    if (id(r + 1, c) < n) edges.emplace_back(v, id(r + 1, c));
  }
  std::bernoulli_distribution coin(0.5), pick(0.5);
  for (int r = 0; (r + 1) * w < n; ++r)
    for (int c = 0; c + 1 < w; ++c) {
      int a = id(r, c), b = id(r, c + 1), d = id(r + 1, c), e = id(r + 1, c + 1);
      if (e >= n || !coin(rng)) continue;
      if (pick(rng)) edges.emplace_back(a, e);
      else edges.emplace_back(b, d);
    }
  return build_graph(n, edges);
}

}  // namespace detail

inline Graph generate(const GenSpec& spec) {
  if (spec.n < 1) throw PreconditionError("generator needs n >= 1");
  std::mt19937_64 rng(spec.seed);
  switch (spec.model) {
    case GenModel::Stacked: return detail::gen_stacked(spec.n, rng);
    case GenModel::EdgeAddition: return detail::gen_edge_addition(spec.n, spec.failure_budget, rng);
    case GenModel::GridLike: return detail::gen_grid_like(spec.n, rng);
  }
  throw PreconditionError("unknown generator model");
}

}  // namespace pps
