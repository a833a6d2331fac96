// Command-line surface over the metric-graph spectra library.
//
// Exit codes: 0 success, 2 parse error, 3 validation error, 4 compute error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mgs/examples.hpp"
#include "mgs/io.hpp"
#include "mgs/optimize.hpp"

using nlohmann::json;
using namespace mgs;

namespace {

enum class Format { Human, Csv, Json };

Format parse_format(const std::string& s) {
  if (s == "human") return Format::Human;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ParseError("unknown format '" + s + "'");
}

std::string point_str(const MetricGraphModel& m, const GraphPoint& p) {
  return to_string(m.canonicalize(p));
}

json measure_json(const MetricGraphModel& m, const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back({{"point", point_str(m, a.point)}, {"mass", a.mass}});
  return atoms;
}

void print_result(Format fmt, const json& doc,
                  const std::vector<std::pair<std::string, std::string>>& human) {
  if (fmt == Format::Json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& [k, v] : human) std::cout << k << ": " << v << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Spectra of measure Laplacians on finite metric graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --format/--seed/--threads after the subcommand too

  std::string graph_path, measure_path, dirichlet_str, format_str = "human";
  std::string point_x, point_y, example_name;
  std::vector<double> example_params;
  int k = 1, kmax = 10, restarts = -1, max_iters = 2000, threads = 1, nval = 3;
  std::uint64_t seed = 0;
  bool bounds_only = false;

  app.add_option("--format", format_str, "Output format: human|csv|json")->capture_default_str();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for restarts")->capture_default_str();

  auto* c_validate = app.add_subcommand("validate", "Parse and validate a graph file");
  c_validate->add_option("graph", graph_path)->required();

  auto* c_res = app.add_subcommand("resistance", "Effective resistance between two points");
  c_res->add_option("graph", graph_path)->required();
  c_res->add_option("x", point_x, "Point as edgeId:offset or v:vertexId")->required();
  c_res->add_option("y", point_y)->required();

  auto* c_diam = app.add_subcommand("diam-r", "Resistance diameter with argmax pair");
  c_diam->add_option("graph", graph_path)->required();

  auto* c_l1 = app.add_subcommand("lambda1min", "First optimal eigenvalue");
  c_l1->add_option("graph", graph_path)->required();

  auto* c_spec = app.add_subcommand("spectrum", "Eigenvalues of H_mu for a measure file");
  c_spec->add_option("graph", graph_path)->required();
  c_spec->add_option("measure", measure_path)->required();
  c_spec->add_option("--dirichlet", dirichlet_str, "Comma-separated Dirichlet points");

  auto* c_lk = app.add_subcommand("lambdakmin", "Search for the k-th optimal eigenvalue");
  c_lk->add_option("graph", graph_path)->required();
  c_lk->add_option("--k", k)->capture_default_str();
  c_lk->add_option("--restarts", restarts, "Restart budget (default 32(k+1))");
  c_lk->add_option("--max-iters", max_iters)->capture_default_str();

  auto* c_ch = app.add_subcommand("cheeger", "Cheeger-type constant");
  c_ch->add_option("graph", graph_path)->required();

  auto* c_part = app.add_subcommand("partition", "Spectral 2-partition");
  c_part->add_option("graph", graph_path)->required();

  auto* c_weyl = app.add_subcommand("weyl", "Optimal-eigenvalue scan with sandwich bounds");
  c_weyl->add_option("graph", graph_path)->required();
  c_weyl->add_option("--kmax", kmax)->capture_default_str();
  c_weyl->add_flag("--bounds-only", bounds_only, "Skip the search estimates");
  c_weyl->add_option("--restarts", restarts);
  c_weyl->add_option("--max-iters", max_iters)->capture_default_str();

  auto* c_ex = app.add_subcommand("example", "Generate a named example with golden values");
  c_ex->add_option("name", example_name, "path|cycle|star|complete|pumpkin|butterfly|pumpkin-chain")
      ->required();
  c_ex->add_option("--n", nval, "Size parameter")->capture_default_str();
  c_ex->add_option("--params", example_params, "Extra numeric parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  Format fmt = parse_format(format_str);
  auto H = io::format_human;

  if (*c_validate) {
    MetricGraphModel m = io::load_graph(graph_path);
    json doc = {{"vertices", m.vertices().size()},
                {"edges", m.edges().size()},
                {"total_length", m.total_length()}};
    print_result(fmt, doc,
                 {{"vertices", std::to_string(m.vertices().size())},
                  {"edges", std::to_string(m.edges().size())},
                  {"total_length", H(m.total_length())},
                  {"status", "ok"}});
  } else if (*c_res) {
    MetricGraphModel m = io::load_graph(graph_path);
    double r = resistance(m, io::parse_point(point_x, m), io::parse_point(point_y, m));
    print_result(fmt, {{"resistance", r}}, {{"resistance", H(r)}});
  } else if (*c_diam) {
    MetricGraphModel m = io::load_graph(graph_path);
    auto [d, x, y] = resistance_diameter(m);
    print_result(fmt,
                 {{"diam_r", d}, {"x", point_str(m, x)}, {"y", point_str(m, y)}},
                 {{"diam_r", H(d)}, {"x", point_str(m, x)}, {"y", point_str(m, y)}});
  } else if (*c_l1) {
    MetricGraphModel m = io::load_graph(graph_path);
    OptimalFirstEigenvalue r = lambda1_min(m);
    json doc = {{"lambda1_min", r.value},
                {"x", point_str(m, r.x)},
                {"y", point_str(m, r.y)},
                {"measure", measure_json(m, r.measure)}};
    print_result(fmt, doc,
                 {{"lambda1_min", H(r.value)},
                  {"x", point_str(m, r.x)},
                  {"y", point_str(m, r.y)}});
  } else if (*c_spec) {
    MetricGraphModel m = io::load_graph(graph_path);
    DiscreteMeasure mu = io::load_measure(measure_path, m);
    std::optional<DirichletSpec> A;
    if (!dirichlet_str.empty()) {
      A.emplace();
      std::stringstream ss(dirichlet_str);
      std::string tok;
      while (std::getline(ss, tok, ','))
        A->points.push_back(io::parse_point(tok, m));
    }
    SpectralDecomposition dec = spectrum(m, mu, A);
    json vals = json::array();
    std::vector<std::pair<std::string, std::string>> rows;
    for (int i = 0; i < dec.eigenvalues.size(); ++i) {
      vals.push_back(dec.eigenvalues[i]);
      rows.push_back({"lambda_" + std::to_string(i), H(dec.eigenvalues[i])});
    }
    print_result(fmt, {{"eigenvalues", vals}}, rows);
  } else if (*c_lk) {
    MetricGraphModel m = io::load_graph(graph_path);
    SearchOptions opt{restarts, seed, max_iters, threads};
    KthSearchResult r = lambda_k_min_search(m, k, opt);
    json doc = {{"k", r.k},          {"value", r.value},
                {"lower", r.lower},  {"upper", r.upper},
                {"restarts", r.restarts_used}, {"converged", r.converged},
                {"measure", measure_json(m, r.measure)}};
    print_result(fmt, doc,
                 {{"k", std::to_string(r.k)},
                  {"value", H(r.value)},
                  {"lower", H(r.lower)},
                  {"upper", H(r.upper)},
                  {"converged", r.converged ? "true" : "false"}});
  } else if (*c_ch) {
    MetricGraphModel m = io::load_graph(graph_path);
    CheegerResult r = cheeger_constant(m);
    const char* w = r.witness == CheegerResult::Witness::Bridge      ? "bridge"
                    : r.witness == CheegerResult::Witness::EdgePair ? "edge-pair"
                                                                    : "single-edge";
    print_result(fmt, {{"h", r.h}, {"witness", w}}, {{"h", H(r.h)}, {"witness", w}});
  } else if (*c_part) {
    MetricGraphModel m = io::load_graph(graph_path);
    Partition2 p = partition_l2(m);
    json cuts = json::array();
    for (const GraphPoint& c : p.cuts) cuts.push_back(to_string(c));
    json doc = {{"Lambda", p.energy}, {"lambda1_min", p.lambda1}, {"cuts", cuts}};
    print_result(fmt, doc,
                 {{"Lambda", H(p.energy)},
                  {"lambda1_min", H(p.lambda1)},
                  {"cut_count", std::to_string(p.cuts.size())}});
  } else if (*c_weyl) {
    MetricGraphModel m = io::load_graph(graph_path);
    SearchOptions opt{restarts > 0 ? restarts : 2, seed, max_iters, threads};
    auto rows = weyl_scan(m, kmax, opt, bounds_only);
    if (fmt == Format::Json) {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"k", r.k}, {"estimate", r.estimate}, {"lower", r.lower},
                       {"upper", r.upper}, {"ratio", r.ratio}});
      std::cout << arr.dump(2) << "\n";
    } else {
      std::cout << "k,estimate,lower,upper,ratio,lower_ratio,upper_ratio\n";
      for (const auto& r : rows)
        std::cout << r.k << "," << io::format_roundtrip(r.estimate) << ","
                  << io::format_roundtrip(r.lower) << "," << io::format_roundtrip(r.upper)
                  << "," << io::format_roundtrip(r.ratio) << ","
                  << io::format_roundtrip(r.lower_ratio) << ","
                  << io::format_roundtrip(r.upper_ratio) << "\n";
    }
  } else if (*c_ex) {
    std::vector<double> params = example_params;
    if (params.empty() && example_name != "pumpkin-chain") params = {double(nval)};
    examples::Example ex = examples::by_name(example_name, params);
    json golden;
    std::vector<std::pair<std::string, std::string>> rows;
    rows.push_back({"vertices", std::to_string(ex.model.vertices().size())});
    rows.push_back({"edges", std::to_string(ex.model.edges().size())});
    rows.push_back({"total_length", H(ex.model.total_length())});
    for (const auto& [key, val] : ex.golden) {
      golden[key] = val;
      rows.push_back({key, H(val)});
    }
    json edges = json::array();
    for (const EdgeSpec& e : ex.model.edges())
      edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", e.length}});
    json doc = {{"name", example_name},
                {"vertices", ex.model.vertices()},
                {"edges", edges},
                {"golden", golden}};
    print_result(fmt, doc, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case Error::Kind::Parse: return 2;
      case Error::Kind::Validation: return 3;
      case Error::Kind::Compute: return 4;
    }
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
