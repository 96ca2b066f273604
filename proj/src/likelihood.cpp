#include "edgesample/likelihood.hpp"

#include <algorithm>
#include <string>

#include "edgesample/errors.hpp"
#include "edgesample/format.hpp"

namespace edgesample {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_unit_interval(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("probability must lie in [0, 1], got " + format_double(q));
}

}  // namespace

double log_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

LogProb log_binomial_pmf(std::uint64_t k, std::uint64_t n, double q) {
  if (k > n) {
    throw ParameterError("binomial pmf needs k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  check_unit_interval(q);
  if (q == 0.0) return {k == 0 ? 0.0 : kNegInf};
  if (q == 1.0) return {k == n ? 0.0 : kNegInf};
  const double successes = k == 0 ? 0.0 : static_cast<double>(k) * std::log(q);
  const double failures = k == n ? 0.0 : static_cast<double>(n - k) * std::log1p(-q);
  return {log_choose(n, k) + successes + failures};
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  const double top = *std::max_element(xs.begin(), xs.end());
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

double degree_likelihood(std::uint64_t k_obs, std::uint64_t k, double p) {
  check_unit_interval(p);
  if (k_obs > k) return 0.0;
  return log_binomial_pmf(k_obs, k, p).prob();
}

double triangle_likelihood_retained(std::uint64_t t_obs, std::uint64_t t, double p) {
  check_unit_interval(p);
  if (t_obs > t) return 0.0;
  return log_binomial_pmf(t_obs, t, p * p).prob();
}

double triangle_likelihood_total(std::uint64_t t_obs, std::uint64_t t, double p) {
  check_unit_interval(p);
  const double lost = t_obs == 0 ? 1.0 - p : 0.0;
  if (t_obs > t) return 0.0;
  return p * triangle_likelihood_retained(t_obs, t, p) + lost;
}

}  // namespace edgesample
