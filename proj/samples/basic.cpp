// Library walkthrough: read or generate a graph, decompose it, verify the
// certificate and print a few numbers about it.

#include <fstream>
#include <iostream>
#include <sstream>

#include "pps/pps.hpp"

int main(int argc, char** argv) {
  pps::Graph g;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    std::stringstream buf;
    buf << in.rdbuf();
    g = pps::parse_graph_auto(buf.str());
  } else {
    g = pps::generate({pps::GenModel::GridLike, 30, 1});
  }

  auto result = pps::decompose(g);
  if (auto* w = std::get_if<pps::NonPlanarWitness>(&result)) {
    std::cout << "not planar, contains a " << w->kind_name() << " subdivision\n";
    return 0;
  }
  const auto& cert = std::get<pps::ProductCertificate>(result);
  pps::VerificationReport report = pps::verify(cert);

  std::cout << "n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  std::cout << "vertical paths: " << cert.quotient.num_parts() << ", path length " << cert.path_length << '\n';
  std::cout << "bags: " << cert.decomposition.bags.size() << ", width " << cert.decomposition.width() << '\n';
  for (pps::Vertex v = 0; v < std::min(g.num_vertices(), 5); ++v) {
    auto [part, layer] = cert.image(v);
    std::cout << "  vertex " << v << " -> (path " << part << ", layer " << layer << ")\n";
  }
  std::cout << (report.ok() ? "verified" : "verification FAILED") << '\n';
  return report.ok() ? 0 : 1;
}
