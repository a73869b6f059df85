#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pps/pps.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kNonPlanar = 2, kParse = 3, kInternal = 4 };

struct Globals {
  std::uint64_t seed = 0;
  bool quiet = false;
  bool no_verify = false;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pps::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pps::ParseError("cannot write " + path);
  out << text;
}

void print_report(const pps::VerificationReport& r, const std::string& label, bool quiet) {
  for (const auto& c : r.checks) {
    if (c.pass && quiet) continue;
    std::ostream& os = c.pass ? std::cout : std::cerr;
    os << label << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
}

// Stats and bulk verify accept directories; their *.json entries are read in name order.
std::vector<std::string> expand_paths(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    if (fs::is_directory(a)) {
      std::vector<std::string> inner;
      for (const auto& e : fs::directory_iterator(a))
        if (e.is_regular_file() && e.path().extension() == ".json") inner.push_back(e.path().string());
      std::sort(inner.begin(), inner.end());
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(a);
    }
  }
  return out;
}

int run_decompose(const Globals& g, const std::string& input, long long root, const std::string& output) {
  pps::Graph graph = pps::parse_graph_auto(read_input(input));
  if (graph.num_vertices() > 0 && (root < 0 || root >= graph.num_vertices()))
    throw pps::ParseError("root " + std::to_string(root) + " out of range");
  auto result = pps::decompose(graph, static_cast<pps::Vertex>(root));
  if (auto* w = std::get_if<pps::NonPlanarWitness>(&result)) {
    std::cerr << "non-planar: " << w->kind_name() << " subdivision, branch vertices";
    for (auto v : w->branch_vertices) std::cerr << ' ' << v;
    std::cerr << ", " << w->edges.size() << " edges\n";
    return kNonPlanar;
  }
  const auto& cert = std::get<pps::ProductCertificate>(result);
  if (!g.no_verify) {
    pps::VerificationReport r = pps::verify(cert);
    if (!r.ok()) {
      print_report(r, "", true);
      return kVerifyFailed;
    }
  }
  write_output(output, pps::serialize_certificate(cert));
  if (!g.quiet)
    std::cerr << "parts " << cert.quotient.num_parts() << ", max bag " << cert.decomposition.max_bag() << '\n';
  return kOk;
}

int run_verify(const Globals& g, const std::vector<std::string>& inputs) {
  auto paths = expand_paths(inputs);
  if (paths.empty()) paths.push_back("-");
  bool ok = true;
  for (const auto& p : paths) {
    pps::ProductCertificate cert = pps::parse_certificate(read_input(p));
    pps::VerificationReport r;
    try {
      r = pps::verify(cert);
    } catch (const pps::StructuralError& e) {
      r.checks.push_back({"structure", false, e.what()});
    } catch (const pps::PreconditionError& e) {
      r.checks.push_back({"structure", false, e.what()});
    }
    print_report(r, paths.size() > 1 ? p + ": " : "", g.quiet);
    ok = ok && r.ok();
  }
  return ok ? kOk : kVerifyFailed;
}

int run_gen(const Globals& g, const std::string& model, int n, int budget, const std::string& format,
            const std::string& output) {
  pps::GenSpec spec{pps::parse_model(model), n, g.seed, budget};
  pps::Graph graph = pps::generate(spec);
  write_output(output, format == "graph6" ? pps::write_graph6(graph) + "\n" : pps::graph_to_json(graph).dump() + "\n");
  return kOk;
}

int run_stats(const std::vector<std::string>& inputs, const std::string& output) {
  std::string csv = pps::stats_header();
  for (const auto& p : expand_paths(inputs)) csv += pps::stats_row(pps::parse_certificate(read_input(p)));
  write_output(output, csv);
  return kOk;
}

int run_export_dot(const std::string& input, const std::string& target, const std::string& output) {
  pps::DotTarget t = target == "h"      ? pps::DotTarget::Quotient
                     : target == "tree" ? pps::DotTarget::DecompositionTree
                                        : pps::DotTarget::Partition;
  write_output(output, pps::export_dot(pps::parse_certificate(read_input(input)), t));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar product structure: partitions, 6-simple decompositions and verifiers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed (used by gen)");
  app.add_flag("--quiet", g.quiet, "Only report failures");
  app.add_flag("--no-verify", g.no_verify, "Skip verification before writing a certificate");

  std::string input, output;
  long long root = 0;
  auto* dec = app.add_subcommand("decompose", "Build a certificate for a planar graph (JSON or graph6)");
  dec->add_option("input", input, "Graph file, '-' or omitted for stdin");
  dec->add_option("--root", root, "BFS root vertex");
  dec->add_option("-o,--output", output, "Certificate path (default stdout)");

  std::vector<std::string> inputs;
  auto* ver = app.add_subcommand("verify", "Check certificates independently");
  ver->add_option("certificates", inputs, "Certificate files or directories, stdin if none");

  std::string model = "stacked", format = "json";
  int n = 3, budget = 20;
  auto* gen = app.add_subcommand("gen", "Generate a random planar graph");
  gen->add_option("--model", model, "stacked | edge-addition | grid-like")->capture_default_str();
  gen->add_option("--n", n, "Number of vertices")->capture_default_str();
  gen->add_option("--budget", budget, "Consecutive failures before edge-addition stops")->capture_default_str();
  gen->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "graph6"}))->capture_default_str();
  gen->add_option("-o,--output", output, "Output path (default stdout)");

  auto* stats = app.add_subcommand("stats", "CSV summary of a batch of certificates");
  stats->add_option("certificates", inputs, "Certificate files or directories");
  stats->add_option("-o,--output", output, "CSV path (default stdout)");

  std::string target = "partition";
  auto* dot = app.add_subcommand("export-dot", "Render a certificate as DOT");
  dot->add_option("certificate", input, "Certificate file, stdin if omitted");
  dot->add_option("--target", target, "h | tree | partition")
      ->check(CLI::IsMember({"h", "tree", "partition"}))
      ->capture_default_str();
  dot->add_option("-o,--output", output, "DOT path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*dec) return run_decompose(g, input, root, output);
    if (*ver) return run_verify(g, inputs);
    if (*gen) return run_gen(g, model, n, budget, format, output);
    if (*stats) return run_stats(inputs, output);
    if (*dot) return run_export_dot(input, target, output);
  } catch (const pps::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const pps::PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const pps::ImpossibleState& e) {
    std::cerr << "internal invariant violated: " << e.what() << '\n';
    return kInternal;
  } catch (const pps::StructuralError& e) {
    std::cerr << "internal invariant violated: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
