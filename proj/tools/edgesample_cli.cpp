// Command-line front end: graph statistics, edge sampling, estimation, prior
// construction, closed-form moments and experiment sweeps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "edgesample/edge_list.hpp"
#include "edgesample/errors.hpp"
#include "edgesample/estimators.hpp"
#include "edgesample/format.hpp"
#include "edgesample/generators.hpp"
#include "edgesample/harness.hpp"
#include "edgesample/priors.hpp"
#include "edgesample/sampling.hpp"
#include "edgesample/theory.hpp"

namespace es = edgesample;

namespace {

// p from --p, else from the sampled file's "# p=..." header.
double resolve_p(const std::optional<double>& flag, const std::string& path) {
  if (flag) return *flag;
  const auto header = es::read_sample_header(path);
  if (!header.p) throw es::ParameterError(path + " has no '# p=' header; pass --p");
  return *header.p;
}

es::SampledGraph load_sample(const std::string& path, const std::optional<double>& p) {
  return es::SampledGraph::from_observed(es::read_edge_list(std::filesystem::path(path)), resolve_p(p, path));
}

std::string edge_item(const es::Graph& g, es::EdgeId e) {
  return g.label(g.edge(e).u) + ":" + g.label(g.edge(e).v);
}

struct PriorRequest {
  std::string method;  // true, min, cascade, poisson, csv
  std::string file;
};

PriorRequest parse_prior_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

// Builds the prior for `quantity` ("degree" or "triangles").
es::DiscretePrior build_prior(const es::SampledGraph& s, const std::string& quantity, const PriorRequest& req,
                              std::optional<std::size_t> n_original, std::uint64_t iterations, std::uint64_t seed) {
  if (req.method == "csv") {
    std::ifstream in(req.file);
    if (!in) throw es::IoError("cannot open " + req.file);
    return es::read_prior_csv(in);
  }
  if (req.method == "true") {
    if (req.file.empty()) throw es::ParameterError("the true prior needs a reference graph file");
    const auto reference = es::read_edge_list(std::filesystem::path(req.file));
    return quantity == "degree" ? es::true_prior_degree(reference) : es::true_prior_triangles(reference);
  }
  if (quantity == "degree") {
    if (req.method == "min") return es::minimisation_prior(s, iterations, seed).prior;
    if (req.method == "cascade") {
      if (!n_original) throw es::ParameterError("the cascade prior needs --n-original");
      return es::link_cascade_prior(s, *n_original, seed).prior;
    }
  } else if (req.method == "poisson") {
    return es::poisson_triangle_prior(s);
  }
  throw es::ParameterError("prior '" + req.method + "' does not apply to " + quantity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-sampled graph reconstruction"};
  app.require_subcommand(1);

  std::string graph_file;
  std::optional<double> p;
  std::uint64_t seed = 1;
  std::string out_file;
  std::optional<std::size_t> n_original;
  std::uint64_t iterations = 15000;

  auto* stats = app.add_subcommand("stats", "Print summary statistics of an edge list as CSV");
  stats->add_option("file", graph_file, "Edge-list file")->required();

  auto* sample = app.add_subcommand("sample", "Edge-sample a graph");
  sample->add_option("file", graph_file, "Edge-list file")->required();
  sample->add_option("--p", p, "Edge retention probability")->required();
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--out", out_file, "Output file (default stdout)");

  std::string method;
  std::string prior_spec;
  std::string target = "degree";
  auto* estimate = app.add_subcommand("estimate", "Estimate original degrees or triangle counts from a sample");
  estimate->add_option("file", graph_file, "Sampled edge-list file")->required();
  estimate->add_option("--p", p, "Edge retention probability (default: from the file header)");
  estimate->add_option("--method", method, "mme or bayes")->required()->check(CLI::IsMember({"mme", "bayes"}));
  estimate->add_option("--prior", prior_spec, "true:<file>, min, cascade, poisson or csv:<file>");
  estimate->add_option("--target", target, "degree, triangles or total")
      ->check(CLI::IsMember({"degree", "triangles", "total"}));
  estimate->add_option("--n-original", n_original, "Node count of the original graph (cascade prior)");
  estimate->add_option("--iterations", iterations, "Minimisation proposals");
  estimate->add_option("--seed", seed, "Random seed for prior construction");

  std::string reference;
  std::string quantity = "degree";
  auto* prior = app.add_subcommand("prior", "Construct a prior and print it as value,probability CSV");
  prior->add_option("file", graph_file, "Sampled edge-list file")->required();
  prior->add_option("--p", p, "Edge retention probability (default: from the file header)");
  prior->add_option("--method", method, "min, cascade, poisson or true")
      ->required()
      ->check(CLI::IsMember({"min", "cascade", "poisson", "true"}));
  prior->add_option("--n-original", n_original, "Node count of the original graph (cascade)");
  prior->add_option("--iterations", iterations, "Minimisation proposals");
  prior->add_option("--reference", reference, "Original graph (true prior)");
  prior->add_option("--quantity", quantity, "degree or triangles (true prior)")
      ->check(CLI::IsMember({"degree", "triangles"}));
  prior->add_option("--seed", seed, "Random seed");
  prior->add_option("--out", out_file, "Output file (default stdout)");

  std::size_t replicates = 0;
  auto* theory = app.add_subcommand("theory", "Closed-form moments of removed nodes and sampled triangles");
  theory->add_option("file", graph_file, "Edge-list file")->required();
  theory->add_option("--p", p, "Edge retention probability")->required();
  theory->add_option("--replicates", replicates, "Also estimate the moments from this many samples");
  theory->add_option("--seed", seed, "Random seed for the empirical moments");

  std::string config_file;
  auto* experiment = app.add_subcommand("experiment", "Run a sweep described by a key = value config file");
  experiment->add_option("--config", config_file, "Config file")->required();

  std::string model;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  auto* generate = app.add_subcommand("generate", "Write a synthetic graph as an edge list");
  generate->add_option("model", model, "er or ba")->required()->check(CLI::IsMember({"er", "ba"}));
  generate->add_option("--n", n, "Node count")->required();
  generate->add_option("--m", m, "Edge count (er) or edges per new node (ba)")->required();
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--out", out_file, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  std::ofstream out_stream;
  auto output = [&]() -> std::ostream& {
    if (out_file.empty()) return std::cout;
    out_stream.open(out_file);
    if (!out_stream) throw es::IoError("cannot write " + out_file);
    return out_stream;
  };

  try {
    if (*stats) {
      const auto g = es::read_edge_list(std::filesystem::path(graph_file));
      std::cout << es::summary_csv_header() << '\n' << es::summary_csv_row(es::graph_stats(g)) << '\n';
    } else if (*sample) {
      const auto g = es::read_edge_list(std::filesystem::path(graph_file));
      const auto s = es::edge_sample(g, *p, seed);
      auto& out = output();
      out << "# p=" << es::format_double(s.p) << " removed_nodes=" << s.removed_node_count << '\n';
      es::write_edge_list(s.graph, out);
    } else if (*estimate) {
      const auto s = load_sample(graph_file, p);
      const bool degree = target == "degree";
      const auto tri = es::edge_triangle_counts(s.graph);
      es::SequenceEstimate est;
      if (method == "mme") {
        est = degree ? es::mme_degree(s) : es::mme_edge_triangles(s, tri);
      } else {
        if (prior_spec.empty()) throw es::ParameterError("--method bayes needs --prior");
        const auto pi = build_prior(s, degree ? "degree" : "triangles", parse_prior_spec(prior_spec), n_original,
                                    iterations, seed);
        est = degree ? es::bayes_degree(s, pi) : es::bayes_edge_triangles(s, tri, pi);
      }
      std::cout << "item_id,observed,estimate\n";
      if (target == "total") {
        const auto total = method == "mme" ? es::mme_total_triangles(s, tri) : es::bayes_total_triangles(s, est);
        std::cout << "total," << tri.total << ',' << es::format_double(total.value) << '\n';
      } else if (degree) {
        for (std::size_t v = 0; v < est.values.size(); ++v) {
          const auto id = static_cast<es::NodeId>(v);
          std::cout << s.graph.label(id) << ',' << s.graph.degree(id) << ',' << es::format_double(est.values[v])
                    << '\n';
        }
      } else {
        for (std::size_t e = 0; e < est.values.size(); ++e) {
          std::cout << edge_item(s.graph, static_cast<es::EdgeId>(e)) << ',' << tri.per_edge[e] << ','
                    << es::format_double(est.values[e]) << '\n';
        }
      }
    } else if (*prior) {
      const auto s = load_sample(graph_file, p);
      PriorRequest req{method, reference};
      const std::string q = method == "poisson" ? "triangles" : (method == "true" ? quantity : "degree");
      const auto pi = build_prior(s, q, req, n_original, iterations, seed);
      es::write_prior_csv(pi, output());
    } else if (*theory) {
      const auto g = es::read_edge_list(std::filesystem::path(graph_file));
      auto report = es::theory_report(g, *p);
      es::add_empirical_moments(report, g, *p, replicates, seed);
      std::cout << es::moment_csv_header() << '\n';
      for (const auto& row : report) std::cout << es::moment_csv_row(row) << '\n';
    } else if (*experiment) {
      const auto cfg = es::load_experiment_config(config_file);
      const auto result = es::run_experiment(cfg);
      if (result.has_errors()) {
        std::cerr << "some estimator runs failed; see the error column of results.csv\n";
        return 2;
      }
    } else if (*generate) {
      const auto g = model == "er" ? es::generate_er(n, m, seed) : es::generate_ba(n, m, seed);
      es::write_edge_list(g, output());
    }
  } catch (const es::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
