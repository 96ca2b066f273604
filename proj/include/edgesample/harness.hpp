#ifndef EDGESAMPLE_HARNESS_HPP
#define EDGESAMPLE_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgesample/estimators.hpp"
#include "edgesample/graph.hpp"
#include "edgesample/sampling.hpp"

namespace edgesample {

/**
 * Settings for a sweep over sampling probabilities.
 *
 * Read from a flat "key = value" file; '#' starts a comment. Keys:
 *
 *   dataset              tag used in output rows and replicate seeds
 *   graph                edge-list path (exclusive with generator)
 *   generator            er:<n>:<m> or ba:<n>:<m_attach>
 *   generator_seed       seed for the generator (default 1)
 *   p_grid               comma-separated probabilities (default 0.1,...,0.9)
 *   replicates           samples per probability (default 10)
 *   experiments          comma-separated subset of degree,triangles
 *   degree_estimators    subset of mme,min,bayes-true,bayes-min,bayes-cascade
 *   triangle_estimators  subset of mme,bayes-true,bayes-poisson
 *   iterations           minimisation proposals (default 15000)
 *   n_original           node count given to the cascade prior (default: parent N)
 *   seed                 master seed (default 1)
 *   output_dir           where results.csv / summary.csv go (default .)
 *   scatter              true to write per-item scatter files for replicate 0
 *   threads              worker threads, 0 = hardware concurrency
 */
struct ExperimentConfig {
  std::string dataset = "graph";
  std::string graph_path;
  std::string generator;
  std::uint64_t generator_seed = 1;
  std::vector<double> p_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t replicates = 10;
  bool run_degree = true;
  bool run_triangles = true;
  std::vector<std::string> degree_estimators{"mme", "min", "bayes-true", "bayes-min", "bayes-cascade"};
  std::vector<std::string> triangle_estimators{"mme", "bayes-true", "bayes-poisson"};
  std::uint64_t iterations = 15000;
  std::optional<std::size_t> n_original;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  bool scatter = false;
  std::size_t threads = 0;
};

// Throws ParseError (with line number) on unknown keys or bad values and
// ParameterError when the assembled config is invalid.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& cfg);

// Reads cfg.graph_path or runs cfg.generator.
Graph load_graph(const ExperimentConfig& cfg);

struct ResultRow {
  std::string dataset;
  double p = 0.0;
  std::size_t replicate = 0;
  std::string estimator;
  std::string metric;
  double value = 0.0;
  std::string error;  // nonempty when the estimator failed for this replicate
};

struct ExperimentResult {
  std::vector<ResultRow> rows;

  bool has_errors() const;
};

struct SummaryRow {
  std::string dataset;
  double p = 0.0;
  std::string estimator;
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t count = 0;
};

// Seed for one (dataset, p, replicate) sample.
std::uint64_t replicate_seed(std::uint64_t master, const std::string& dataset, double p, std::size_t replicate);

// sqrt(mean((truth - est)^2)); 0 for empty input. Throws AlignmentError on
// length mismatch.
double rmse(std::span<const double> truth, std::span<const double> estimate);

// Parent degrees of the sampled nodes, in sample order.
std::vector<double> true_degrees_of_sample(const Graph& parent, const SampledGraph& s);
// Parent triangle counts of the sampled edges, in sample order.
std::vector<double> true_edge_triangles_of_sample(const TriangleSequence& parent_triangles, const SampledGraph& s);

double rmse_degree(std::span<const double> truth, const SequenceEstimate& est);
double rmse_edge_triangles(std::span<const double> truth, const SequenceEstimate& est);

// CSV "true,estimated", one row per item; header only for an empty sequence.
void scatter_export(std::span<const double> truth, const SequenceEstimate& est, const std::filesystem::path& path);

// Rows are ordered by (p, replicate, estimator, metric) whatever the thread
// count. Estimator failures become rows with a NaN value and an error message.
ExperimentResult run_degree_experiment(const ExperimentConfig& cfg, const Graph& g);
ExperimentResult run_triangle_experiment(const ExperimentConfig& cfg, const Graph& g);

// Mean and sample standard deviation per (p, estimator, metric) over the
// successful replicates.
std::vector<SummaryRow> summarize(const ExperimentResult& result);

void write_results_csv(const ExperimentResult& result, std::ostream& out);
void write_summary_csv(std::span<const SummaryRow> summary, std::ostream& out);

// Runs the configured experiments and writes results.csv and summary.csv
// under cfg.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace edgesample

#endif  // EDGESAMPLE_HARNESS_HPP
