#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pps/decomposer.hpp"
#include "pps/graph.hpp"
#include "pps/layering.hpp"
#include "pps/planar.hpp"
#include "pps/product.hpp"

namespace pps {

namespace detail {

// Certificate for a connected graph with fewer than 3 vertices: every vertex
// is its own part and a single bag holds them all.
inline ProductCertificate small_component_certificate(const Graph& g, Vertex root) {
  BfsTree t = bfs_tree(g, root);
  std::vector<std::vector<Vertex>> parts;
  for (Vertex v = 0; v < g.num_vertices(); ++v) parts.push_back({v});
  ProductCertificate cert = make_product_embedding(g, t, parts);
  std::vector<int> bag;
  for (int i = 0; i < g.num_vertices(); ++i) bag.push_back(i);
  cert.decomposition.add_node(bag);
  cert.decomposition.anchor = 0;
  return cert;
}

inline ProductCertificate connected_certificate(const Graph& g, Vertex root) {
  if (g.num_vertices() < 3) return small_component_certificate(g, root);
  auto embedded = planar_embed(g);
  if (std::holds_alternative<NonPlanarWitness>(embedded)) throw PreconditionError("component is not planar");
  RootedTriangulation tri = triangulate(std::get<PlaneGraph>(embedded), root);
  std::vector<Edge> added = tri.added_edges;
  Host host(std::move(tri), bfs_tree(g, root));
  DecompositionResult dec = near_triang_partition(host, host.outer_boundary());
  std::vector<std::vector<Vertex>> parts;
  for (const auto& p : dec.partition) parts.push_back(p.vertices);
  ProductCertificate cert = make_product_embedding(g, host.tree(), parts);
  cert.decomposition = std::move(dec.decomposition);
  cert.trace = dec.trace;
  cert.added_edges = std::move(added);
  return cert;
}

}  // namespace detail

// Full construction for an arbitrary planar graph. Each connected component is
// handled on its own (rooted at `root` for root's component, at its smallest
// vertex otherwise) and the results are merged.
inline std::variant<ProductCertificate, NonPlanarWitness> decompose(const Graph& g, Vertex root = 0) {
  const int n = g.num_vertices();
  if (n > 0 && (root < 0 || root >= n)) throw PreconditionError("root vertex out of range");
  if (n == 0) return ProductCertificate{};
  auto embedded = planar_embed(g);
  if (auto* w = std::get_if<NonPlanarWitness>(&embedded)) return *w;

  std::vector<ProductCertificate> certs;
  for (const auto& comp : connected_components(g)) {
    Graph sub = induced_subgraph(g, comp);
    Vertex local_root = 0;
    for (std::size_t i = 0; i < comp.size(); ++i)
      if (comp[i] == root) local_root = static_cast<Vertex>(i);
    ProductCertificate cert = detail::connected_certificate(sub, local_root);
    cert.labels = comp;
    certs.push_back(std::move(cert));
  }
  ProductCertificate merged = merge_components(certs);
  merged.bfs.root = root;
  return merged;
}

}  // namespace pps
