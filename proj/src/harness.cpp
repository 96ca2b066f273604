#include "edgesample/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "edgesample/edge_list.hpp"
#include "edgesample/errors.hpp"
#include "edgesample/format.hpp"
#include "edgesample/generators.hpp"
#include "edgesample/priors.hpp"
#include "edgesample/rng.hpp"

namespace edgesample {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kDegreeEstimators{"mme", "min", "bayes-true", "bayes-min", "bayes-cascade"};
const std::vector<std::string> kTriangleEstimators{"mme", "bayes-true", "bayes-poisson"};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

// Runs body(i) for i in [0, n) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

std::string p_tag(double p) { return format_double(p); }

struct Task {
  double p;
  std::size_t replicate;
};

std::vector<Task> make_tasks(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for (double p : cfg.p_grid) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) tasks.push_back({p, r});
  }
  return tasks;
}

ExperimentResult merge(std::vector<std::vector<ResultRow>> per_task) {
  ExperimentResult result;
  for (auto& rows : per_task) {
    for (auto& row : rows) result.rows.push_back(std::move(row));
  }
  return result;
}

// Appends one row per metric, or one error row per metric if compute throws.
void record(std::vector<ResultRow>& rows, const ResultRow& base, std::span<const std::string> metrics,
            const std::function<std::vector<double>()>& compute) {
  try {
    const auto values = compute();
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      ResultRow row = base;
      row.metric = metrics[i];
      row.value = values[i];
      rows.push_back(std::move(row));
    }
  } catch (const Error& e) {
    for (const auto& metric : metrics) {
      ResultRow row = base;
      row.metric = metric;
      row.value = kNaN;
      row.error = e.what();
      rows.push_back(std::move(row));
    }
  }
}

void maybe_scatter(const ExperimentConfig& cfg, std::size_t replicate, double p, const std::string& quantity,
                   const std::string& estimator, std::span<const double> truth, const SequenceEstimate& est) {
  if (!cfg.scatter || replicate != 0) return;
  scatter_export(truth, est, cfg.output_dir / ("scatter_" + p_tag(p) + "_" + quantity + "_" + estimator + ".csv"));
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.graph_path.empty() == cfg.generator.empty()) {
    throw ParameterError("exactly one of 'graph' and 'generator' must be set");
  }
  if (cfg.p_grid.empty()) throw ParameterError("p_grid is empty");
  for (double p : cfg.p_grid) check_probability(p);
  if (cfg.replicates < 1) throw ParameterError("replicates must be at least 1");
  for (const auto& e : cfg.degree_estimators) {
    if (std::find(kDegreeEstimators.begin(), kDegreeEstimators.end(), e) == kDegreeEstimators.end()) {
      throw ParameterError("unknown degree estimator '" + e + "'");
    }
  }
  for (const auto& e : cfg.triangle_estimators) {
    if (std::find(kTriangleEstimators.begin(), kTriangleEstimators.end(), e) == kTriangleEstimators.end()) {
      throw ParameterError("unknown triangle estimator '" + e + "'");
    }
  }
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    auto fail = [&](const std::string& why) {
      return ParseError("config line " + std::to_string(line_no) + ": " + why);
    };
    if (eq == std::string::npos) throw fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "dataset") {
        cfg.dataset = value;
      } else if (key == "graph") {
        cfg.graph_path = value;
      } else if (key == "generator") {
        cfg.generator = value;
      } else if (key == "generator_seed") {
        cfg.generator_seed = std::stoull(value);
      } else if (key == "p_grid") {
        cfg.p_grid.clear();
        for (const auto& item : split_list(value)) cfg.p_grid.push_back(std::stod(item));
      } else if (key == "replicates") {
        cfg.replicates = std::stoull(value);
      } else if (key == "experiments") {
        cfg.run_degree = cfg.run_triangles = false;
        for (const auto& item : split_list(value)) {
          if (item == "degree") {
            cfg.run_degree = true;
          } else if (item == "triangles") {
            cfg.run_triangles = true;
          } else {
            throw fail("unknown experiment '" + item + "'");
          }
        }
      } else if (key == "degree_estimators") {
        cfg.degree_estimators = split_list(value);
      } else if (key == "triangle_estimators") {
        cfg.triangle_estimators = split_list(value);
      } else if (key == "iterations") {
        cfg.iterations = std::stoull(value);
      } else if (key == "n_original") {
        cfg.n_original = std::stoull(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "output_dir") {
        cfg.output_dir = value;
      } else if (key == "scatter") {
        if (value != "true" && value != "false") throw fail("scatter must be true or false");
        cfg.scatter = value == "true";
      } else if (key == "threads") {
        cfg.threads = std::stoull(value);
      } else {
        throw fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw fail("bad value '" + value + "' for " + key);
    } catch (const std::out_of_range&) {
      throw fail("value out of range for " + key);
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_experiment_config(in);
}

Graph load_graph(const ExperimentConfig& cfg) {
  if (!cfg.graph_path.empty()) return read_edge_list(std::filesystem::path(cfg.graph_path));
  const auto parts = [&] {
    std::vector<std::string> out;
    std::stringstream in(cfg.generator);
    std::string item;
    while (std::getline(in, item, ':')) out.push_back(trim(item));
    return out;
  }();
  if (parts.size() != 3) throw ParameterError("generator must look like er:<n>:<m> or ba:<n>:<m_attach>");
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  try {
    a = std::stoull(parts[1]);
    b = std::stoull(parts[2]);
  } catch (const std::exception&) {
    throw ParameterError("generator sizes must be integers in '" + cfg.generator + "'");
  }
  if (parts[0] == "er") return generate_er(a, b, cfg.generator_seed);
  if (parts[0] == "ba") return generate_ba(a, b, cfg.generator_seed);
  throw ParameterError("unknown generator '" + parts[0] + "'");
}

bool ExperimentResult::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.error.empty(); });
}

std::uint64_t replicate_seed(std::uint64_t master, const std::string& dataset, double p, std::size_t replicate) {
  return mix_seed(master, hash_string(dataset), std::bit_cast<std::uint64_t>(p), replicate);
}

double rmse(std::span<const double> truth, std::span<const double> estimate) {
  if (truth.size() != estimate.size()) {
    throw AlignmentError("truth has " + std::to_string(truth.size()) + " items but the estimate has " +
                         std::to_string(estimate.size()));
  }
  if (truth.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - estimate[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

std::vector<double> true_degrees_of_sample(const Graph& parent, const SampledGraph& s) {
  std::vector<double> out(s.parent_node_of.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(parent.degree(s.parent_node_of[i]));
  return out;
}

std::vector<double> true_edge_triangles_of_sample(const TriangleSequence& parent_triangles, const SampledGraph& s) {
  std::vector<double> out(s.parent_edge_of.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(parent_triangles.per_edge[s.parent_edge_of[i]]);
  }
  return out;
}

double rmse_degree(std::span<const double> truth, const SequenceEstimate& est) {
  if (est.kind != EstimateKind::Degree) throw AlignmentError("expected a degree estimate");
  return rmse(truth, est.values);
}

double rmse_edge_triangles(std::span<const double> truth, const SequenceEstimate& est) {
  if (est.kind != EstimateKind::EdgeTriangles) throw AlignmentError("expected an edge-triangle estimate");
  return rmse(truth, est.values);
}

void scatter_export(std::span<const double> truth, const SequenceEstimate& est, const std::filesystem::path& path) {
  if (truth.size() != est.values.size()) throw AlignmentError("scatter truth and estimate lengths differ");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "true,estimated\n";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    out << format_double(truth[i]) << ',' << format_double(est.values[i]) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

ExperimentResult run_degree_experiment(const ExperimentConfig& cfg, const Graph& g) {
  validate(cfg);
  const auto tasks = make_tasks(cfg);
  const auto& wanted = cfg.degree_estimators;
  auto wants = [&](const char* name) { return std::find(wanted.begin(), wanted.end(), name) != wanted.end(); };
  const std::size_t n_original = cfg.n_original.value_or(g.node_count());

  std::optional<DiscretePrior> true_prior;
  if (wants("bayes-true")) true_prior = true_prior_degree(g);

  std::vector<std::vector<ResultRow>> per_task(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
    const auto [p, replicate] = tasks[t];
    const std::uint64_t seed = replicate_seed(cfg.seed, cfg.dataset, p, replicate);
    const SampledGraph s = edge_sample(g, p, seed);
    const auto truth = true_degrees_of_sample(g, s);

    // The minimisation prior feeds both "min" and "bayes-min".
    std::optional<DegreePriorResult> minimised;
    std::string minimised_error;
    if (wants("min") || wants("bayes-min")) {
      try {
        minimised = minimisation_prior(s, cfg.iterations, mix_seed(seed, hash_string("min")));
      } catch (const Error& e) {
        minimised_error = e.what();
      }
    }
    auto need_minimised = [&]() -> const DegreePriorResult& {
      if (!minimised) throw ConstructionError(minimised_error);
      return *minimised;
    };

    auto& rows = per_task[t];
    const std::string metric = "rmse_degree";
    for (const auto& name : wanted) {
      const ResultRow base{cfg.dataset, p, replicate, name, "", 0.0, ""};
      record(rows, base, std::span(&metric, 1), [&]() -> std::vector<double> {
        SequenceEstimate est;
        if (name == "mme") {
          est = mme_degree(s);
        } else if (name == "min") {
          const auto& kappa = need_minimised().sequence.kappa;
          est = {EstimateKind::Degree, "min", std::vector<double>(kappa.begin(), kappa.end())};
        } else if (name == "bayes-true") {
          est = bayes_degree(s, *true_prior, name);
        } else if (name == "bayes-min") {
          est = bayes_degree(s, need_minimised().prior, name);
        } else {
          const auto cascade = link_cascade_prior(s, n_original, mix_seed(seed, hash_string("cascade")));
          est = bayes_degree(s, cascade.prior, name);
        }
        maybe_scatter(cfg, replicate, p, "degree", name, truth, est);
        return {rmse_degree(truth, est)};
      });
    }
  });
  return merge(std::move(per_task));
}

ExperimentResult run_triangle_experiment(const ExperimentConfig& cfg, const Graph& g) {
  validate(cfg);
  const auto tasks = make_tasks(cfg);
  const auto parent_triangles = edge_triangle_counts(g);
  const auto true_total = static_cast<double>(parent_triangles.total);

  std::optional<DiscretePrior> true_prior;
  const auto& wanted = cfg.triangle_estimators;
  if (std::find(wanted.begin(), wanted.end(), "bayes-true") != wanted.end() && g.edge_count() > 0) {
    true_prior = true_prior_triangles(g, parent_triangles);
  }

  static const std::vector<std::string> metrics{"rmse_edge_triangles", "total_triangles", "total_triangles_sq_error"};
  std::vector<std::vector<ResultRow>> per_task(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t t) {
    const auto [p, replicate] = tasks[t];
    const std::uint64_t seed = replicate_seed(cfg.seed, cfg.dataset, p, replicate);
    const SampledGraph s = edge_sample(g, p, seed);
    const auto sample_triangles = edge_triangle_counts(s.graph);
    const auto truth = true_edge_triangles_of_sample(parent_triangles, s);

    auto& rows = per_task[t];
    for (const auto& name : wanted) {
      const ResultRow base{cfg.dataset, p, replicate, name, "", 0.0, ""};
      record(rows, base, metrics, [&]() -> std::vector<double> {
        SequenceEstimate est;
        TotalTriangleEstimate total;
        if (name == "mme") {
          est = mme_edge_triangles(s, sample_triangles);
          total = mme_total_triangles(s, sample_triangles);
        } else {
          if (name == "bayes-true" && !true_prior) throw ConstructionError("reference graph has no edges");
          const DiscretePrior prior =
              name == "bayes-true" ? *true_prior : poisson_triangle_prior(s, sample_triangles);
          est = bayes_edge_triangles(s, sample_triangles, prior, name);
          total = bayes_total_triangles(s, est);
        }
        maybe_scatter(cfg, replicate, p, "triangles", name, truth, est);
        const double err = total.value - true_total;
        return {rmse_edge_triangles(truth, est), total.value, err * err};
      });
    }
  });
  return merge(std::move(per_task));
}

std::vector<SummaryRow> summarize(const ExperimentResult& result) {
  struct Acc {
    std::size_t order;
    SummaryRow row;
    std::vector<double> values;
  };
  std::map<std::tuple<std::string, double, std::string, std::string>, Acc> groups;
  for (const auto& r : result.rows) {
    auto key = std::make_tuple(r.dataset, r.p, r.estimator, r.metric);
    auto it = groups.find(key);
    if (it == groups.end()) {
      it = groups.emplace(key, Acc{groups.size(), {r.dataset, r.p, r.estimator, r.metric, 0.0, 0.0, 0}, {}}).first;
    }
    if (r.error.empty()) it->second.values.push_back(r.value);
  }
  std::vector<Acc*> ordered;
  for (auto& [key, acc] : groups) ordered.push_back(&acc);
  std::sort(ordered.begin(), ordered.end(), [](const Acc* a, const Acc* b) { return a->order < b->order; });

  std::vector<SummaryRow> out;
  for (Acc* acc : ordered) {
    SummaryRow row = acc->row;
    row.count = acc->values.size();
    if (row.count > 0) {
      double sum = 0.0;
      for (double v : acc->values) sum += v;
      row.mean = sum / static_cast<double>(row.count);
      if (row.count > 1) {
        double sq = 0.0;
        for (double v : acc->values) sq += (v - row.mean) * (v - row.mean);
        row.sd = std::sqrt(sq / static_cast<double>(row.count - 1));
      }
    } else {
      row.mean = kNaN;
      row.sd = kNaN;
    }
    out.push_back(std::move(row));
  }
  return out;
}

void write_results_csv(const ExperimentResult& result, std::ostream& out) {
  out << "dataset,p,replicate,estimator,metric,value,error\n";
  for (const auto& r : result.rows) {
    out << csv_field(r.dataset) << ',' << format_double(r.p) << ',' << r.replicate << ',' << r.estimator << ','
        << r.metric << ',' << format_double(r.value) << ',' << csv_field(r.error) << '\n';
  }
}

void write_summary_csv(std::span<const SummaryRow> summary, std::ostream& out) {
  out << "dataset,p,estimator,metric,mean,sd,count\n";
  for (const auto& r : summary) {
    out << csv_field(r.dataset) << ',' << format_double(r.p) << ',' << r.estimator << ',' << r.metric << ','
        << format_double(r.mean) << ',' << format_double(r.sd) << ',' << r.count << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const Graph g = load_graph(cfg);
  std::filesystem::create_directories(cfg.output_dir);

  ExperimentResult result;
  if (cfg.run_degree) {
    auto part = run_degree_experiment(cfg, g);
    std::move(part.rows.begin(), part.rows.end(), std::back_inserter(result.rows));
  }
  if (cfg.run_triangles) {
    auto part = run_triangle_experiment(cfg, g);
    std::move(part.rows.begin(), part.rows.end(), std::back_inserter(result.rows));
  }

  const auto results_path = cfg.output_dir / "results.csv";
  std::ofstream results(results_path);
  if (!results) throw IoError("cannot write " + results_path.string());
  write_results_csv(result, results);

  const auto summary_path = cfg.output_dir / "summary.csv";
  std::ofstream summary(summary_path);
  if (!summary) throw IoError("cannot write " + summary_path.string());
  const auto rows = summarize(result);
  write_summary_csv(rows, summary);
  return result;
}

}  // namespace edgesample
