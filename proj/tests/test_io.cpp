#include <gtest/gtest.h>

#include <regex>

#include "fixtures.hpp"
#include "pps/generate.hpp"
#include "pps/io.hpp"
#include "pps/pipeline.hpp"
#include "pps/verifier.hpp"

using namespace pps;

namespace {

ProductCertificate pipeline(const Graph& g, Vertex root = 0) { return std::get<ProductCertificate>(decompose(g, root)); }

int count(const std::string& s, const std::string& needle) {
  int c = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
  return c;
}

}  // namespace

TEST(Graph6, KnownStrings) {
  Graph k4 = parse_graph6("C~");
  EXPECT_EQ(k4.num_edges(), 6u);
  EXPECT_EQ(write_graph6(k4), "C~");
  EXPECT_EQ(write_graph6(build_graph(3, {{0, 1}, {1, 2}, {0, 2}})), "Bw");
  EXPECT_EQ(write_graph6(build_graph(1, {})), "@");
  Graph petersen = parse_graph6("IheA@GUAo");
  EXPECT_EQ(petersen.edges(), (std::vector<Edge>{{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 6}, {2, 3}, {2, 7}, {3, 4},
                                                 {3, 8}, {4, 9}, {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}}));
  EXPECT_EQ(write_graph6(petersen), "IheA@GUAo");
}

TEST(Graph6, LongFormAndHeader) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < 70; ++i) e.emplace_back(i, i + 1);
  Graph path = build_graph(70, e);
  std::string s = write_graph6(path);
  EXPECT_EQ(s.substr(0, 4), "~?@E");
  EXPECT_EQ(parse_graph6(s), path);
  EXPECT_EQ(parse_graph6(">>graph6<<C~\n"), parse_graph6("C~"));
}

TEST(Graph6, Errors) {
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("C"), ParseError);
  EXPECT_THROW(parse_graph6("C~~"), ParseError);
  EXPECT_THROW(parse_graph6("C\x7f"), ParseError);
}

TEST(GraphJson, ParseAndErrors) {
  Graph g = parse_graph_json(R"({"n": 4, "edges": [[0, 1], [2, 1], [3, 0]]})");
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}}));
  EXPECT_THROW(parse_graph_json(R"({"edges": []})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"n": "4", "edges": []})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"n": 2, "edges": [[0, 2]]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"n": 2, "edges": [[0]]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"n": 2, "edges": [[0, 1]])"), ParseError);
}

TEST(GraphJson, FormatsAgree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = generate({GenModel::EdgeAddition, 30, seed});
    EXPECT_EQ(parse_graph_auto(graph_to_json(g).dump()), g);
    EXPECT_EQ(parse_graph_auto(write_graph6(g) + "\n"), g);
  }
}

TEST(GraphJson, SixtyVertexGraph6IsNotJson) {
  // n = 60 encodes as '{', the same byte that opens a JSON object.
  std::vector<Edge> e;
  for (int i = 0; i + 1 < 60; ++i) e.emplace_back(i, i + 1);
  Graph path = build_graph(60, e);
  const std::string s = write_graph6(path);
  ASSERT_EQ(s.front(), '{');
  EXPECT_EQ(parse_graph_auto(s + "\n"), path);
  EXPECT_EQ(parse_graph_auto(" {\n \"n\": 1, \"edges\": []}"), build_graph(1, {}));
}

TEST(Certificate, RoundTripIsLossless) {
  for (auto model : {GenModel::Stacked, GenModel::EdgeAddition, GenModel::GridLike}) {
    ProductCertificate c = pipeline(generate({model, 60, 9}));
    const std::string text = serialize_certificate(c);
    ProductCertificate back = parse_certificate(text);
    EXPECT_EQ(serialize_certificate(back), text);
    EXPECT_EQ(back.graph, c.graph);
    EXPECT_EQ(back.quotient, c.quotient);
    EXPECT_EQ(back.decomposition, c.decomposition);
    EXPECT_EQ(back.trace, c.trace);
    EXPECT_EQ(back.layers, c.layers);
    EXPECT_EQ(back.added_edges, c.added_edges);
    EXPECT_TRUE(verify(back).ok());
  }
}

TEST(Certificate, FieldOrder) {
  const std::string text = serialize_certificate(pipeline(fixtures::k4_graph()));
  const std::vector<std::string> keys{"\"schema_version\"", "\"graph\"", "\"triangulation\"", "\"bfs\"",
                                      "\"partition\"",      "\"quotient\"", "\"decomposition\"", "\"layers\"",
                                      "\"path_length\"",    "\"trace\""};
  std::size_t last = 0;
  for (const auto& k : keys) {
    auto p = text.find(k);
    ASSERT_NE(p, std::string::npos) << k;
    EXPECT_GE(p, last) << k;
    last = p;
  }
}

TEST(Certificate, RejectsUnknownVersionAndBadShapes) {
  Json doc = certificate_to_json(pipeline(fixtures::k4_graph()));
  Json v2 = doc;
  v2["schema_version"] = 2;
  EXPECT_THROW(certificate_from_json(v2), ParseError);
  Json no_bfs = doc;
  no_bfs.erase("bfs");
  EXPECT_THROW(parse_certificate(no_bfs.dump()), ParseError);
  Json bad_partition = doc;
  bad_partition["partition"][0][0] = 99;
  EXPECT_THROW(certificate_from_json(bad_partition), ParseError);
  const std::string text = doc.dump();
  EXPECT_THROW(parse_certificate(text.substr(0, text.size() / 2)), ParseError);
}

TEST(Dot, TriangleQuotient) {
  ProductCertificate c = pipeline(build_graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  std::string h = export_dot(c, DotTarget::Quotient);
  EXPECT_EQ(h.rfind("graph H {", 0), 0u);
  EXPECT_EQ(count(h, "[label="), 3);
  EXPECT_EQ(count(h, " -- "), 3);
  std::string tree = export_dot(c, DotTarget::DecompositionTree);
  EXPECT_EQ(count(tree, "[label="), 1);
  EXPECT_EQ(count(tree, " -- "), 0);
  EXPECT_EQ(h.back(), '\n');
}

TEST(Dot, K4PartitionColours) {
  ProductCertificate c = pipeline(fixtures::k4_graph());
  std::string d = export_dot(c, DotTarget::Partition);
  std::regex fill("fillcolor=\"(#[0-9a-f]{6})\"");
  std::set<std::string> colours;
  for (auto it = std::sregex_iterator(d.begin(), d.end(), fill); it != std::sregex_iterator(); ++it)
    colours.insert((*it)[1]);
  EXPECT_EQ(c.quotient.num_parts(), 4);
  EXPECT_EQ(colours.size(), 4u);
  EXPECT_EQ(count(d, " -- "), 6);
}

TEST(Stats, HeaderAndRows) {
  EXPECT_EQ(stats_header(), "n,m,parts,h_vertices,max_bag,k5_hubs,mirror_branches,max_depth\n");
  ProductCertificate c = pipeline(fixtures::k4_graph());
  EXPECT_EQ(stats_row(c), "4,6,4,4,4,0,0,1\n");
}
