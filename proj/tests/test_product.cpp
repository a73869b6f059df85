#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pps/pipeline.hpp"
#include "pps/product.hpp"

using namespace pps;

namespace {

// Ladder 0-1-2 over 3-4-5 with rungs; rooted at 0.
Graph ladder() { return build_graph(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}}); }

}  // namespace

TEST(Quotient, ContractsParts) {
  Graph g = ladder();
  std::vector<std::vector<Vertex>> parts{{0, 1, 2}, {3, 4, 5}};
  QuotientGraph q = quotient(g, parts);
  EXPECT_EQ(q.num_parts(), 2);
  EXPECT_EQ(q.part_of, (std::vector<int>{0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(q.graph.edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(q.witnesses, (std::vector<Edge>{{0, 3}}));
}

TEST(Quotient, RejectsBadCovers) {
  Graph g = ladder();
  std::vector<std::vector<Vertex>> missing{{0, 1, 2}, {3, 4}};
  std::vector<std::vector<Vertex>> twice{{0, 1, 2}, {2, 3, 4, 5}};
  std::vector<std::vector<Vertex>> empty{{0, 1, 2, 3, 4, 5}, {}};
  EXPECT_THROW(quotient(g, missing), StructuralError);
  EXPECT_THROW(quotient(g, twice), StructuralError);
  EXPECT_THROW(quotient(g, empty), StructuralError);
}

TEST(StrongProduct, AdjacencyTable) {
  Graph h = build_graph(3, {{0, 1}});
  EXPECT_FALSE(strong_product_adjacent({0, 2}, {0, 2}, h));
  EXPECT_TRUE(strong_product_adjacent({0, 2}, {0, 3}, h));
  EXPECT_TRUE(strong_product_adjacent({0, 2}, {1, 2}, h));
  EXPECT_TRUE(strong_product_adjacent({0, 2}, {1, 1}, h));
  EXPECT_FALSE(strong_product_adjacent({0, 2}, {0, 4}, h));
  EXPECT_FALSE(strong_product_adjacent({0, 2}, {2, 2}, h));
  EXPECT_FALSE(strong_product_adjacent({0, 2}, {1, 4}, h));
}

TEST(ProductEmbedding, LadderRows) {
  Graph g = ladder();
  BfsTree t = bfs_tree(g, 0);
  // Depths: 0:0 1:1 2:2 3:1 4:2 5:3; parents 1<-0, 2<-1, 3<-0, 4<-1, 5<-2.
  std::vector<std::vector<Vertex>> parts{{0, 1, 2, 5}, {3}, {4}};
  ProductCertificate c = make_product_embedding(g, t, parts);
  EXPECT_EQ(c.path_length, 4);
  EXPECT_EQ(c.image(5), (ProductVertex{0, 3}));
  EXPECT_EQ(c.image(4), (ProductVertex{2, 2}));
  EXPECT_EQ(c.quotient.graph.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  for (auto [u, v] : g.edges()) EXPECT_TRUE(strong_product_adjacent(c.image(u), c.image(v), c.quotient));
}

TEST(ProductEmbedding, RejectsNonVerticalPart) {
  Graph g = ladder();
  BfsTree t = bfs_tree(g, 0);
  std::vector<std::vector<Vertex>> parts{{0, 1, 2}, {3, 4, 5}};
  EXPECT_THROW(make_product_embedding(g, t, parts), StructuralError);
}

TEST(MergeComponents, OffsetsIdsAndJoinsTrees) {
  Graph g = build_graph(7, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
  auto r = decompose(g, 4);
  ASSERT_TRUE(std::holds_alternative<ProductCertificate>(r));
  const auto& c = std::get<ProductCertificate>(r);
  EXPECT_EQ(c.graph, g);
  EXPECT_EQ(c.bfs.root, 4);
  EXPECT_EQ(c.bfs.depth[4], 0);
  EXPECT_EQ(c.bfs.depth[0], 0);
  EXPECT_EQ(c.quotient.num_parts(), 7);
  EXPECT_EQ(c.decomposition.edges.size() + 1, c.decomposition.bags.size());
  EXPECT_EQ(c.trace.regions, 1 + 3);
  for (Vertex v = 0; v < 7; ++v) EXPECT_EQ(c.labels[v], v);
}

TEST(MergeComponents, RejectsOverlappingLabels) {
  ProductCertificate a = std::get<ProductCertificate>(decompose(build_graph(1, {})));
  ProductCertificate b = a;
  std::vector<ProductCertificate> both{a, b};
  EXPECT_THROW(merge_components(both), PreconditionError);
}
