#include "edgesample/priors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "edgesample/errors.hpp"
#include "edgesample/format.hpp"
#include "edgesample/likelihood.hpp"

namespace edgesample {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<std::int64_t> observed_degrees(const Graph& g) {
  std::vector<std::int64_t> out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = static_cast<std::int64_t>(g.degree(static_cast<NodeId>(v)));
  return out;
}

}  // namespace

DiscretePrior DiscretePrior::from_counts(std::span<const std::uint64_t> counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw ParameterError("cannot build a prior from an empty histogram");
  std::size_t last = counts.size();
  while (last > 0 && counts[last - 1] == 0) --last;
  std::vector<double> logs(last, kNegInf);
  const double log_total = std::log(static_cast<double>(total));
  for (std::size_t v = 0; v < last; ++v) {
    if (counts[v] > 0) logs[v] = std::log(static_cast<double>(counts[v])) - log_total;
  }
  return DiscretePrior(std::move(logs));
}

DiscretePrior DiscretePrior::from_values(std::span<const std::int64_t> values) {
  std::vector<std::uint64_t> counts;
  for (std::int64_t v : values) {
    if (v < 0) throw ParameterError("prior values must be nonnegative, got " + std::to_string(v));
    if (static_cast<std::size_t>(v) >= counts.size()) counts.resize(static_cast<std::size_t>(v) + 1, 0);
    ++counts[static_cast<std::size_t>(v)];
  }
  return from_counts(counts);
}

DiscretePrior DiscretePrior::from_values(std::span<const std::uint64_t> values) {
  std::vector<std::uint64_t> counts;
  for (std::uint64_t v : values) {
    if (v >= counts.size()) counts.resize(static_cast<std::size_t>(v) + 1, 0);
    ++counts[static_cast<std::size_t>(v)];
  }
  return from_counts(counts);
}

DiscretePrior DiscretePrior::from_log_weights(std::vector<double> log_weights) {
  for (double w : log_weights) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity()) {
      throw ParameterError("prior log weights must be finite or -inf");
    }
  }
  const double norm = log_sum_exp(log_weights);
  if (norm == kNegInf) throw ParameterError("prior has no mass");
  for (double& w : log_weights) w -= norm;
  return DiscretePrior(std::move(log_weights));
}

DiscretePrior DiscretePrior::from_pmf(std::span<const double> pmf) {
  double total = 0.0;
  std::vector<double> logs(pmf.size(), kNegInf);
  for (std::size_t v = 0; v < pmf.size(); ++v) {
    if (!(pmf[v] >= 0.0) || std::isinf(pmf[v])) {
      throw ParameterError("prior probability at " + std::to_string(v) + " is invalid");
    }
    total += pmf[v];
    if (pmf[v] > 0.0) logs[v] = std::log(pmf[v]);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("prior probabilities sum to " + format_double(total) + ", not 1");
  }
  return from_log_weights(std::move(logs));
}

DiscretePrior DiscretePrior::point_mass(std::uint64_t value) {
  std::vector<double> logs(static_cast<std::size_t>(value) + 1, kNegInf);
  logs.back() = 0.0;
  return DiscretePrior(std::move(logs));
}

double DiscretePrior::log_pmf(std::uint64_t v) const {
  return v < log_pmf_.size() ? log_pmf_[static_cast<std::size_t>(v)] : kNegInf;
}

double DiscretePrior::pmf(std::uint64_t v) const { return std::exp(log_pmf(v)); }

double DiscretePrior::mean() const {
  double m = 0.0;
  for (std::size_t v = 0; v < log_pmf_.size(); ++v) m += static_cast<double>(v) * std::exp(log_pmf_[v]);
  return m;
}

void write_prior_csv(const DiscretePrior& prior, std::ostream& out) {
  out << "value,probability\n";
  const auto logs = prior.log_pmf_values();
  for (std::size_t v = 0; v < logs.size(); ++v) {
    if (logs[v] == kNegInf) continue;
    out << v << ',' << format_double(std::exp(logs[v])) << '\n';
  }
}

DiscretePrior read_prior_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> pmf;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("value", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("prior line " + std::to_string(line_no) + ": missing comma");
    std::uint64_t value = 0;
    double prob = 0.0;
    try {
      std::size_t used = 0;
      const std::string value_field = line.substr(0, comma);
      value = std::stoull(value_field, &used);
      if (used != value_field.size()) throw std::invalid_argument("trailing characters");
      prob = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("prior line " + std::to_string(line_no) + ": cannot parse '" + line + "'");
    }
    if (value >= pmf.size()) pmf.resize(static_cast<std::size_t>(value) + 1, 0.0);
    pmf[static_cast<std::size_t>(value)] += prob;
  }
  if (pmf.empty()) throw ParseError("prior file has no entries");
  // Printed probabilities are rounded, so renormalise rather than demand an exact sum.
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6) throw ParseError("prior probabilities sum to " + format_double(total));
  for (double& x : pmf) x /= total;
  return DiscretePrior::from_pmf(pmf);
}

DiscretePrior true_prior_degree(const Graph& g) {
  if (g.empty()) throw ParameterError("true degree prior needs a nonempty graph");
  std::vector<std::uint64_t> counts(g.max_degree() + 1, 0);
  for (std::size_t v = 0; v < g.node_count(); ++v) ++counts[g.degree(static_cast<NodeId>(v))];
  return DiscretePrior::from_counts(counts);
}

DiscretePrior true_prior_triangles(const Graph& g, const TriangleSequence& triangles) {
  if (g.edge_count() == 0) throw ParameterError("true triangle prior needs a graph with edges");
  return DiscretePrior::from_values(std::span<const std::uint64_t>(triangles.per_edge));
}

DiscretePrior true_prior_triangles(const Graph& g) { return true_prior_triangles(g, edge_triangle_counts(g)); }

std::int64_t scaled_floor(std::int64_t numerator, double p) {
  const double q = static_cast<double>(numerator) / p;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q))) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(q));
}

double l2_error(std::span<const std::int64_t> observed, std::span<const std::int64_t> kappa, double p) {
  if (observed.size() != kappa.size()) throw AlignmentError("observed and kappa lengths differ");
  double total = 0.0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const double r = p * static_cast<double>(kappa[i]) - static_cast<double>(observed[i]);
    total += r * r;
  }
  return total;
}

std::vector<std::int64_t> balanced_degree_estimate(std::span<const std::int64_t> observed, double p,
                                                   std::int64_t target, Rng& rng) {
  check_probability(p);
  const std::int64_t observed_sum = std::accumulate(observed.begin(), observed.end(), std::int64_t{0});
  if (target < observed_sum) {
    throw ConstructionError("degree total " + std::to_string(target) + " is below the observed total " +
                            std::to_string(observed_sum));
  }
  std::vector<std::int64_t> kappa(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) kappa[i] = scaled_floor(observed[i], p);
  std::int64_t sum = std::accumulate(kappa.begin(), kappa.end(), std::int64_t{0});
  if (sum != target && kappa.empty()) throw ConstructionError("no nodes to carry a nonzero degree total");

  while (sum < target) {
    ++kappa[uniform_below(rng, kappa.size())];
    ++sum;
  }
  if (sum > target) {
    std::vector<std::size_t> lowerable;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      if (kappa[i] > observed[i]) lowerable.push_back(i);
    }
    while (sum > target) {
      const std::size_t slot = uniform_below(rng, lowerable.size());
      const std::size_t i = lowerable[slot];
      --kappa[i];
      --sum;
      if (kappa[i] == observed[i]) {
        lowerable[slot] = lowerable.back();
        lowerable.pop_back();
      }
    }
  }
  return kappa;
}

void minimise_l2_error(std::span<const std::int64_t> observed, double p, std::span<std::int64_t> kappa,
                       std::uint64_t iterations, Rng& rng, MinimisationTrace* trace) {
  if (observed.size() != kappa.size()) throw AlignmentError("observed and kappa lengths differ");
  double error = trace ? l2_error(observed, kappa, p) : 0.0;
  if (trace) trace->initial_error = error;
  const std::size_t n = kappa.size();
  if (n < 2) {
    if (trace) trace->proposals += iterations;
    return;
  }
  for (std::uint64_t it = 0; it < iterations; ++it) {
    if (trace) ++trace->proposals;
    const std::size_t up = uniform_below(rng, n);
    const std::size_t down = uniform_below(rng, n);
    if (up == down || kappa[down] - 1 < observed[down]) continue;
    // The error change is 2p (e_up - e_down + p) with e = p kappa - observed,
    // so the move helps iff p (kappa_down - kappa_up - 1) > observed_down - observed_up.
    const double gain = p * static_cast<double>(kappa[down] - kappa[up] - 1);
    const auto gap = static_cast<double>(observed[down] - observed[up]);
    if (!(gain - gap > 1e-9 * std::max(1.0, std::abs(gap)))) continue;
    ++kappa[up];
    --kappa[down];
    if (trace) {
      error = l2_error(observed, kappa, p);
      trace->accepted_errors.push_back(error);
      trace->accepted_sums.push_back(std::accumulate(kappa.begin(), kappa.end(), std::int64_t{0}));
    }
  }
}

DegreePriorResult minimisation_prior(const SampledGraph& s, std::uint64_t iterations, std::uint64_t seed,
                                     MinimisationTrace* trace) {
  check_probability(s.p);
  if (s.graph.empty()) throw ConstructionError("minimisation prior needs a nonempty sample");
  Rng rng = make_rng(seed);
  const auto observed = observed_degrees(s.graph);
  const std::int64_t target = scaled_floor(2 * static_cast<std::int64_t>(s.graph.edge_count()), s.p);
  auto kappa = balanced_degree_estimate(observed, s.p, target, rng);
  minimise_l2_error(observed, s.p, kappa, iterations, rng, trace);
  auto prior = DiscretePrior::from_values(std::span<const std::int64_t>(kappa));
  return {DegreeSequenceEstimate{std::move(kappa)}, std::move(prior)};
}

std::uint64_t cascade_zero_degrees(std::span<std::int64_t> kappa) {
  const std::int64_t total = std::accumulate(kappa.begin(), kappa.end(), std::int64_t{0});
  if (total < static_cast<std::int64_t>(kappa.size())) {
    throw ConstructionError("degree total " + std::to_string(total) + " cannot give all " +
                            std::to_string(kappa.size()) + " nodes a nonzero degree");
  }
  std::vector<std::size_t> order(kappa.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return kappa[a] > kappa[b]; });

  // Moving a unit from the entry just before the first zero, one step at a
  // time, walks the zero leftwards through any run of ones until an entry
  // with at least two is found. The ones in between end where they started,
  // so each zero is filled by one direct transfer from that entry, and the
  // order stays sorted after every fill.
  auto first_zero = std::find_if(order.begin(), order.end(), [&](std::size_t i) { return kappa[i] == 0; });
  if (first_zero == order.end()) return 0;
  std::uint64_t transfers = 0;
  auto donor = first_zero;
  for (auto z = first_zero; z != order.end(); ++z) {
    if (kappa[*z] != 0) continue;
    while (donor != order.begin() && kappa[*std::prev(donor)] < 2) --donor;
    if (donor == order.begin()) throw ConstructionError("no donor left for a zero-degree node");
    --kappa[*std::prev(donor)];
    kappa[*z] = 1;
    ++transfers;
  }
  return transfers;
}

DegreePriorResult link_cascade_prior(const SampledGraph& s, std::size_t n_original, std::uint64_t seed) {
  check_probability(s.p);
  const std::size_t sampled = s.graph.node_count();
  if (n_original < sampled) {
    throw ParameterError("original node count " + std::to_string(n_original) + " is below the " +
                         std::to_string(sampled) + " sampled nodes");
  }
  const std::int64_t target = scaled_floor(2 * static_cast<std::int64_t>(s.graph.edge_count()), s.p);
  if (target < static_cast<std::int64_t>(n_original)) {
    throw ConstructionError("estimated degree total " + std::to_string(target) + " is below the node count " +
                            std::to_string(n_original));
  }
  Rng rng = make_rng(seed);
  const auto observed = observed_degrees(s.graph);
  auto kappa = balanced_degree_estimate(observed, s.p, target, rng);
  kappa.resize(n_original, 0);
  cascade_zero_degrees(kappa);
  auto prior = DiscretePrior::from_values(std::span<const std::int64_t>(kappa));
  return {DegreeSequenceEstimate{std::move(kappa)}, std::move(prior)};
}

double poisson_triangle_lambda(const SampledGraph& s, const TriangleSequence& sample_triangles) {
  check_probability(s.p);
  if (s.graph.edge_count() == 0) throw ConstructionError("Poisson triangle prior needs at least one sampled edge");
  const double per_edge_sum = 3.0 * static_cast<double>(sample_triangles.total);
  return per_edge_sum / (s.p * s.p * static_cast<double>(s.graph.edge_count()));
}

DiscretePrior truncated_poisson(double lambda, std::uint64_t t_max) {
  if (!(lambda >= 0.0) || std::isinf(lambda)) throw ParameterError("Poisson rate must be finite and >= 0");
  std::vector<double> logs(static_cast<std::size_t>(t_max) + 1, kNegInf);
  if (lambda == 0.0) {
    logs[0] = 0.0;
    return DiscretePrior::from_log_weights(std::move(logs));
  }
  const double log_lambda = std::log(lambda);
  for (std::size_t t = 0; t < logs.size(); ++t) {
    logs[t] = static_cast<double>(t) * log_lambda - lambda - std::lgamma(static_cast<double>(t) + 1.0);
  }
  return DiscretePrior::from_log_weights(std::move(logs));
}

std::uint64_t poisson_truncation(double lambda, std::uint64_t max_observed) {
  const double reach = lambda + 10.0 * std::sqrt(lambda + 1.0);
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(max_observed) + reach));
}

DiscretePrior poisson_triangle_prior(const SampledGraph& s, const TriangleSequence& sample_triangles) {
  const double lambda = poisson_triangle_lambda(s, sample_triangles);
  std::uint64_t max_observed = 0;
  for (auto t : sample_triangles.per_edge) max_observed = std::max(max_observed, t);
  return truncated_poisson(lambda, poisson_truncation(lambda, max_observed));
}

DiscretePrior poisson_triangle_prior(const SampledGraph& s) {
  return poisson_triangle_prior(s, edge_triangle_counts(s.graph));
}

}  // namespace edgesample
