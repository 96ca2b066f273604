#ifndef EDGESAMPLE_LIKELIHOOD_HPP
#define EDGESAMPLE_LIKELIHOOD_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace edgesample {

// Natural-log probability; -inf encodes probability zero.
struct LogProb {
  double value = -std::numeric_limits<double>::infinity();

  double prob() const { return std::exp(value); }
  bool is_zero() const { return value == -std::numeric_limits<double>::infinity(); }
};

// ln C(n, k) through log-gamma.
double log_choose(std::uint64_t n, std::uint64_t k);

// ln of Binomial(n, q) at k. q in {0, 1} is handled exactly (0 ln 0 = 0).
// Throws ParameterError when k > n or q is outside [0, 1].
LogProb log_binomial_pmf(std::uint64_t k, std::uint64_t n, double q);

// ln(sum exp(x)) with the maximum factored out; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

// P(k' = k_obs | k) under edge sampling. Zero when k_obs > k.
double degree_likelihood(std::uint64_t k_obs, std::uint64_t k, double p);

// P(T'_l = t_obs | T_l = t, e_l retained): Binomial(t, p^2). Zero when t_obs > t.
double triangle_likelihood_retained(std::uint64_t t_obs, std::uint64_t t, double p);

// P(T'_l = t_obs | T_l = t) with the edge's own survival marginalised out.
double triangle_likelihood_total(std::uint64_t t_obs, std::uint64_t t, double p);

}  // namespace edgesample

#endif  // EDGESAMPLE_LIKELIHOOD_HPP
