#ifndef EDGESAMPLE_ESTIMATORS_HPP
#define EDGESAMPLE_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgesample/graph.hpp"
#include "edgesample/priors.hpp"
#include "edgesample/sampling.hpp"

namespace edgesample {

enum class EstimateKind { Degree, EdgeTriangles };

// Per-item estimates in sample index order: sampled nodes for Degree,
// sampled edges for EdgeTriangles.
struct SequenceEstimate {
  EstimateKind kind = EstimateKind::Degree;
  std::string method;
  std::vector<double> values;
};

struct TotalTriangleEstimate {
  double value = 0.0;
  std::string method;
};

// k_i = k'_i / p
SequenceEstimate mme_degree(const SampledGraph& s);

// T_l = T'_l / p^2 for each retained edge.
SequenceEstimate mme_edge_triangles(const SampledGraph& s);
SequenceEstimate mme_edge_triangles(const SampledGraph& s, const TriangleSequence& sample_triangles);

// T = T' / p^3
TotalTriangleEstimate mme_total_triangles(const SampledGraph& s);
TotalTriangleEstimate mme_total_triangles(const SampledGraph& s, const TriangleSequence& sample_triangles);

/**
 * Posterior mean of a quantity x given an observation x_obs ~ Binomial(x, q).
 *
 * Sums run over the prior's support with x >= x_obs and are evaluated in log
 * space. Returns nullopt when the posterior has no mass.
 */
std::optional<double> binomial_posterior_mean(std::uint64_t x_obs, double q, const DiscretePrior& prior);

// Posterior mean degree for one node; q = p.
std::optional<double> posterior_mean_degree(std::uint64_t k_obs, double p, const DiscretePrior& prior);
// Posterior mean triangle count for one retained edge; q = p^2.
std::optional<double> posterior_mean_edge_triangles(std::uint64_t t_obs, double p, const DiscretePrior& prior);

// Throws EstimationError naming the first node (or edge) whose posterior has no mass.
SequenceEstimate bayes_degree(const SampledGraph& s, const DiscretePrior& prior, std::string method = "bayes");
SequenceEstimate bayes_edge_triangles(const SampledGraph& s, const DiscretePrior& prior,
                                      std::string method = "bayes");
SequenceEstimate bayes_edge_triangles(const SampledGraph& s, const TriangleSequence& sample_triangles,
                                      const DiscretePrior& prior, std::string method = "bayes");

// Sum of per-edge posterior means over retained edges, divided by 3p.
TotalTriangleEstimate bayes_total_triangles(const SampledGraph& s, const DiscretePrior& prior,
                                            std::string method = "bayes");
TotalTriangleEstimate bayes_total_triangles(const SampledGraph& s, const SequenceEstimate& edge_estimates);

/**
 * Independent-connection triangle estimate
 *
 *   T = (1/6) [ sum_k k (k-1) P(k) / kbar ]^3
 *
 * with P(k) = degree_counts[k] / N the degree distribution. Baseline only.
 */
double bianconi_triangle_estimate(std::span<const std::uint64_t> degree_counts, double mean_degree);
double bianconi_triangle_estimate(const Graph& g);

}  // namespace edgesample

#endif  // EDGESAMPLE_ESTIMATORS_HPP
