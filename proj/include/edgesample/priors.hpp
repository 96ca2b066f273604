#ifndef EDGESAMPLE_PRIORS_HPP
#define EDGESAMPLE_PRIORS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "edgesample/graph.hpp"
#include "edgesample/rng.hpp"
#include "edgesample/sampling.hpp"

namespace edgesample {

/**
 * Probability mass function over 0..support_max().
 *
 * Masses are held as natural logs so that far-tail values (a Poisson pmf
 * hundreds of units from its mean, say) stay representable; pmf() is the
 * exponentiated view. Construction always normalises.
 */
class DiscretePrior {
 public:
  // Empirical pmf of a histogram: counts[v] observations of value v.
  static DiscretePrior from_counts(std::span<const std::uint64_t> counts);
  // Empirical pmf of a list of values.
  static DiscretePrior from_values(std::span<const std::int64_t> values);
  static DiscretePrior from_values(std::span<const std::uint64_t> values);
  // Unnormalised log weights; -inf entries carry no mass.
  static DiscretePrior from_log_weights(std::vector<double> log_weights);
  // Probabilities that already sum to one within 1e-9.
  static DiscretePrior from_pmf(std::span<const double> pmf);
  static DiscretePrior point_mass(std::uint64_t value);

  std::uint64_t support_max() const { return log_pmf_.size() - 1; }
  double log_pmf(std::uint64_t v) const;
  double pmf(std::uint64_t v) const;
  std::span<const double> log_pmf_values() const { return log_pmf_; }
  double mean() const;

 private:
  explicit DiscretePrior(std::vector<double> normalised) : log_pmf_(std::move(normalised)) {}
  std::vector<double> log_pmf_;
};

// CSV "value,probability" with a header row; zero-mass values are omitted.
void write_prior_csv(const DiscretePrior& prior, std::ostream& out);
DiscretePrior read_prior_csv(std::istream& in);

// Proportion of nodes of each degree in a reference graph.
DiscretePrior true_prior_degree(const Graph& g);
// Proportion of edges with each triangle count in a reference graph.
DiscretePrior true_prior_triangles(const Graph& g);
DiscretePrior true_prior_triangles(const Graph& g, const TriangleSequence& triangles);

struct DegreeSequenceEstimate {
  std::vector<std::int64_t> kappa;
};

struct DegreePriorResult {
  DegreeSequenceEstimate sequence;
  DiscretePrior prior;
};

// floor(numerator / p) that treats quotients within 1e-9 of an integer as
// that integer, so 3 / 0.1 gives 30 rather than 29.
std::int64_t scaled_floor(std::int64_t numerator, double p);

// sum_i (p kappa_i - observed_i)^2
double l2_error(std::span<const std::int64_t> observed, std::span<const std::int64_t> kappa, double p);

// Starts from kappa_i = floor(observed_i / p) and raises or lowers uniformly
// chosen nodes one unit at a time until sum kappa = target. A node is never
// lowered below its observed degree. Throws ConstructionError when target is
// below sum observed.
std::vector<std::int64_t> balanced_degree_estimate(std::span<const std::int64_t> observed, double p,
                                                   std::int64_t target, Rng& rng);

// Trace of the transfer phase of the minimisation procedure.
struct MinimisationTrace {
  double initial_error = 0.0;
  std::vector<double> accepted_errors;  // objective after each accepted transfer
  std::vector<std::int64_t> accepted_sums;
  std::uint64_t proposals = 0;
};

// Runs `iterations` proposed unit transfers (raise one random node, lower
// another) on kappa, keeping kappa_i >= observed_i and accepting a proposal
// only when it strictly lowers the l2 error.
void minimise_l2_error(std::span<const std::int64_t> observed, double p, std::span<std::int64_t> kappa,
                       std::uint64_t iterations, Rng& rng, MinimisationTrace* trace = nullptr);

// Degree prior from the minimisation procedure on a sample. The target sum is
// floor(2 M' / p).
DegreePriorResult minimisation_prior(const SampledGraph& s, std::uint64_t iterations, std::uint64_t seed,
                                     MinimisationTrace* trace = nullptr);

// Cascades degree units toward zero-degree entries. Entries are ordered by
// descending kappa (ties by index); each zero receives one unit taken from
// the lowest-ranked entry before it that holds at least two. Returns the
// number of transfers. Throws ConstructionError if sum kappa < kappa.size().
std::uint64_t cascade_zero_degrees(std::span<std::int64_t> kappa);

// Balanced estimate for the sampled nodes, padded with zero-degree
// placeholders up to n_original and cascaded. kappa covers all n_original
// nodes: sampled nodes first in sample order, then the placeholders.
DegreePriorResult link_cascade_prior(const SampledGraph& s, std::size_t n_original, std::uint64_t seed = 0);

// lambda = mean of the per-edge moment estimates T'_l / p^2 over the sample.
double poisson_triangle_lambda(const SampledGraph& s, const TriangleSequence& sample_triangles);

// Poisson(lambda) truncated to 0..t_max and renormalised.
DiscretePrior truncated_poisson(double lambda, std::uint64_t t_max);

// Truncation point for the Poisson triangle prior: covers lambda + 10 sd
// and, beyond the largest observed count, another lambda + 10 sd so that
// every observed edge keeps a full posterior tail.
std::uint64_t poisson_truncation(double lambda, std::uint64_t max_observed);

DiscretePrior poisson_triangle_prior(const SampledGraph& s);
DiscretePrior poisson_triangle_prior(const SampledGraph& s, const TriangleSequence& sample_triangles);

}  // namespace edgesample

#endif  // EDGESAMPLE_PRIORS_HPP
