#include "edgesample/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "edgesample/errors.hpp"
#include "edgesample/likelihood.hpp"

namespace edgesample {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string edge_name(const Graph& g, EdgeId e) {
  return "(" + g.label(g.edge(e).u) + ", " + g.label(g.edge(e).v) + ")";
}

// Estimates depend only on the observed value, so evaluate each distinct
// value once.
template <typename Posterior>
std::vector<double> per_item(std::span<const std::uint64_t> observed, Posterior&& posterior) {
  std::unordered_map<std::uint64_t, double> cache;
  std::vector<double> out(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    auto it = cache.find(observed[i]);
    if (it == cache.end()) it = cache.emplace(observed[i], posterior(i, observed[i])).first;
    out[i] = it->second;
  }
  return out;
}

}  // namespace

SequenceEstimate mme_degree(const SampledGraph& s) {
  check_probability(s.p);
  SequenceEstimate est{EstimateKind::Degree, "mme", {}};
  est.values.resize(s.graph.node_count());
  for (std::size_t v = 0; v < est.values.size(); ++v) {
    est.values[v] = static_cast<double>(s.graph.degree(static_cast<NodeId>(v))) / s.p;
  }
  return est;
}

SequenceEstimate mme_edge_triangles(const SampledGraph& s, const TriangleSequence& sample_triangles) {
  check_probability(s.p);
  SequenceEstimate est{EstimateKind::EdgeTriangles, "mme", {}};
  est.values.resize(sample_triangles.per_edge.size());
  const double scale = 1.0 / (s.p * s.p);
  for (std::size_t e = 0; e < est.values.size(); ++e) {
    est.values[e] = static_cast<double>(sample_triangles.per_edge[e]) * scale;
  }
  return est;
}

SequenceEstimate mme_edge_triangles(const SampledGraph& s) {
  return mme_edge_triangles(s, edge_triangle_counts(s.graph));
}

TotalTriangleEstimate mme_total_triangles(const SampledGraph& s, const TriangleSequence& sample_triangles) {
  check_probability(s.p);
  return {static_cast<double>(sample_triangles.total) / (s.p * s.p * s.p), "mme"};
}

TotalTriangleEstimate mme_total_triangles(const SampledGraph& s) {
  return mme_total_triangles(s, edge_triangle_counts(s.graph));
}

std::optional<double> binomial_posterior_mean(std::uint64_t x_obs, double q, const DiscretePrior& prior) {
  const auto prior_logs = prior.log_pmf_values();
  if (x_obs >= prior_logs.size()) return std::nullopt;
  std::vector<double> weights;
  weights.reserve(prior_logs.size() - x_obs);
  double top = kNegInf;
  for (std::uint64_t x = x_obs; x < prior_logs.size(); ++x) {
    const double lp = prior_logs[x];
    const double w = lp == kNegInf ? kNegInf : lp + log_binomial_pmf(x_obs, x, q).value;
    weights.push_back(w);
    top = std::max(top, w);
  }
  if (top == kNegInf) return std::nullopt;
  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double r = std::exp(weights[i] - top);
    mass += r;
    moment += r * static_cast<double>(x_obs + i);
  }
  return moment / mass;
}

std::optional<double> posterior_mean_degree(std::uint64_t k_obs, double p, const DiscretePrior& prior) {
  check_probability(p);
  return binomial_posterior_mean(k_obs, p, prior);
}

std::optional<double> posterior_mean_edge_triangles(std::uint64_t t_obs, double p, const DiscretePrior& prior) {
  check_probability(p);
  return binomial_posterior_mean(t_obs, p * p, prior);
}

SequenceEstimate bayes_degree(const SampledGraph& s, const DiscretePrior& prior, std::string method) {
  check_probability(s.p);
  std::vector<std::uint64_t> observed(s.graph.node_count());
  for (std::size_t v = 0; v < observed.size(); ++v) observed[v] = s.graph.degree(static_cast<NodeId>(v));
  auto values = per_item(observed, [&](std::size_t v, std::uint64_t k_obs) {
    auto mean = posterior_mean_degree(k_obs, s.p, prior);
    if (!mean) {
      throw EstimationError("degree posterior for node '" + s.graph.label(static_cast<NodeId>(v)) +
                            "' (observed degree " + std::to_string(k_obs) + ") has no mass; prior support ends at " +
                            std::to_string(prior.support_max()));
    }
    return *mean;
  });
  return {EstimateKind::Degree, std::move(method), std::move(values)};
}

SequenceEstimate bayes_edge_triangles(const SampledGraph& s, const TriangleSequence& sample_triangles,
                                      const DiscretePrior& prior, std::string method) {
  check_probability(s.p);
  auto values = per_item(sample_triangles.per_edge, [&](std::size_t e, std::uint64_t t_obs) {
    auto mean = posterior_mean_edge_triangles(t_obs, s.p, prior);
    if (!mean) {
      throw EstimationError("triangle posterior for edge " + edge_name(s.graph, static_cast<EdgeId>(e)) +
                            " (observed " + std::to_string(t_obs) + ") has no mass; prior support ends at " +
                            std::to_string(prior.support_max()));
    }
    return *mean;
  });
  return {EstimateKind::EdgeTriangles, std::move(method), std::move(values)};
}

SequenceEstimate bayes_edge_triangles(const SampledGraph& s, const DiscretePrior& prior, std::string method) {
  return bayes_edge_triangles(s, edge_triangle_counts(s.graph), prior, std::move(method));
}

TotalTriangleEstimate bayes_total_triangles(const SampledGraph& s, const SequenceEstimate& edge_estimates) {
  check_probability(s.p);
  if (edge_estimates.kind != EstimateKind::EdgeTriangles || edge_estimates.values.size() != s.graph.edge_count()) {
    throw AlignmentError("total triangle estimate needs one edge-triangle estimate per sampled edge");
  }
  const double sum = std::accumulate(edge_estimates.values.begin(), edge_estimates.values.end(), 0.0);
  return {sum / (3.0 * s.p), edge_estimates.method};
}

TotalTriangleEstimate bayes_total_triangles(const SampledGraph& s, const DiscretePrior& prior, std::string method) {
  return bayes_total_triangles(s, bayes_edge_triangles(s, prior, std::move(method)));
}

double bianconi_triangle_estimate(std::span<const std::uint64_t> degree_counts, double mean_degree) {
  const std::uint64_t nodes = std::accumulate(degree_counts.begin(), degree_counts.end(), std::uint64_t{0});
  if (nodes == 0) throw ParameterError("triangle baseline needs a nonempty degree histogram");
  if (!(mean_degree > 0.0)) throw ParameterError("triangle baseline needs a positive mean degree");
  double second = 0.0;
  for (std::size_t k = 2; k < degree_counts.size(); ++k) {
    const auto kd = static_cast<double>(k);
    second += kd * (kd - 1.0) * static_cast<double>(degree_counts[k]);
  }
  const double ratio = second / static_cast<double>(nodes) / mean_degree;
  return ratio * ratio * ratio / 6.0;
}

double bianconi_triangle_estimate(const Graph& g) {
  if (g.empty()) throw ParameterError("triangle baseline needs a nonempty graph");
  std::vector<std::uint64_t> counts(g.max_degree() + 1, 0);
  for (std::size_t v = 0; v < g.node_count(); ++v) ++counts[g.degree(static_cast<NodeId>(v))];
  const double mean = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
  return bianconi_triangle_estimate(counts, mean);
}

}  // namespace edgesample
