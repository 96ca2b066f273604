#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "edgesample/errors.hpp"
#include "edgesample/generators.hpp"
#include "edgesample/priors.hpp"
#include "edgesample/rng.hpp"
#include "edgesample/sampling.hpp"
#include "fixtures.hpp"

using namespace edgesample;

namespace {

std::vector<std::int64_t> degrees_of(const Graph& g) {
  std::vector<std::int64_t> out;
  for (auto d : g.degrees()) out.push_back(static_cast<std::int64_t>(d));
  return out;
}

// Smallest l2 error over every kappa with kappa_i >= observed_i and the given sum.
double exhaustive_minimum(const std::vector<std::int64_t>& observed, double p, std::int64_t target) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> kappa(observed.size());
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == observed.size()) {
      if (left < observed[i]) return;
      kappa[i] = left;
      best = std::min(best, l2_error(observed, kappa, p));
      return;
    }
    for (std::int64_t k = observed[i]; k <= left; ++k) {
      kappa[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, target);
  return best;
}

// The cascade as a literal step-by-step walk: sort descending (stable), move
// one unit from the entry directly before the first zero, repeat.
std::vector<std::int64_t> stepwise_cascade(std::vector<std::int64_t> kappa) {
  std::vector<std::size_t> order(kappa.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return kappa[a] > kappa[b]; });
  while (true) {
    std::size_t z = 0;
    while (z < order.size() && kappa[order[z]] != 0) ++z;
    if (z == order.size()) break;
    // Walk left while the donor would itself drop to zero.
    std::size_t at = z;
    while (true) {
      const std::size_t donor = at - 1;
      --kappa[order[donor]];
      ++kappa[order[at]];
      if (kappa[order[donor]] > 0) break;
      at = donor;
    }
  }
  return kappa;
}

}  // namespace

TEST_CASE("DiscretePrior construction and accessors") {
  const std::vector<std::uint64_t> counts{0, 2, 1, 1};
  const auto pi = DiscretePrior::from_counts(counts);
  CHECK(pi.support_max() == 3);
  CHECK(pi.pmf(0) == 0.0);
  CHECK(pi.pmf(1) == doctest::Approx(0.5));
  CHECK(pi.pmf(7) == 0.0);
  CHECK(pi.mean() == doctest::Approx(1.75));

  const std::vector<std::int64_t> values{2, 2, 5};
  CHECK(DiscretePrior::from_values(values).pmf(2) == doctest::Approx(2.0 / 3));
  CHECK(DiscretePrior::point_mass(4).pmf(4) == 1.0);

  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(DiscretePrior::from_pmf(bad), ParameterError);
  const std::vector<std::int64_t> negative{-1};
  CHECK_THROWS_AS(DiscretePrior::from_values(negative), ParameterError);
  const std::vector<std::uint64_t> none{0, 0};
  CHECK_THROWS_AS(DiscretePrior::from_counts(none), ParameterError);
}

TEST_CASE("prior CSV round trip") {
  const std::vector<std::uint64_t> counts{3, 0, 5, 1, 0, 1};
  const auto pi = DiscretePrior::from_counts(counts);
  std::stringstream buf;
  write_prior_csv(pi, buf);
  const auto text = buf.str();
  CHECK(text.rfind("value,probability\n", 0) == 0);
  CHECK(text.find("\n1,") == std::string::npos);
  const auto back = read_prior_csv(buf);
  for (std::uint64_t v = 0; v <= 5; ++v) CHECK(back.pmf(v) == doctest::Approx(pi.pmf(v)).epsilon(1e-12));

  std::istringstream broken("value,probability\n1;0.5\n");
  CHECK_THROWS_AS(read_prior_csv(broken), ParseError);
}

TEST_CASE("true priors") {
  CHECK(true_prior_degree(fixtures::complete(3)).pmf(2) == 1.0);
  CHECK(true_prior_triangles(fixtures::complete(3)).pmf(1) == 1.0);
  CHECK(true_prior_degree(fixtures::complete(4)).pmf(3) == 1.0);
  CHECK(true_prior_triangles(fixtures::complete(4)).pmf(2) == 1.0);
  CHECK_THROWS_AS(true_prior_degree(Graph()), ParameterError);
  CHECK_THROWS_AS(true_prior_triangles(Graph(3, {})), ParameterError);

  const auto g = generate_er(1000, 10000, 2);
  const auto pi = true_prior_degree(g);
  double sum = 0;
  std::uint64_t mode = 0;
  for (std::uint64_t k = 0; k <= pi.support_max(); ++k) {
    sum += pi.pmf(k);
    if (pi.pmf(k) > pi.pmf(mode)) mode = k;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mode >= 17);
  CHECK(mode <= 22);
}

TEST_CASE("scaled_floor snaps near-integers") {
  CHECK(scaled_floor(3, 0.1) == 30);
  CHECK(scaled_floor(7, 0.7) == 10);
  CHECK(scaled_floor(1, 0.3) == 3);
  CHECK(scaled_floor(5, 0.5) == 10);
}

TEST_CASE("minimisation prior at p = 1 is the sample itself") {
  const auto g = generate_er(60, 150, 3);
  const auto s = edge_sample(g, 1.0, 1);
  MinimisationTrace trace;
  const auto res = minimisation_prior(s, 2000, 5, &trace);
  CHECK(res.sequence.kappa == degrees_of(s.graph));
  CHECK(trace.initial_error == 0.0);
  CHECK(trace.accepted_errors.empty());
  const auto expected = true_prior_degree(s.graph);
  for (std::uint64_t k = 0; k <= expected.support_max(); ++k) CHECK(res.prior.pmf(k) == doctest::Approx(expected.pmf(k)));
}

TEST_CASE("integral k'/p is already the global minimum") {
  // P4 has k' = (1, 2, 2, 1); at p = 0.5 the floor start is (2, 4, 4, 2) and sums to 12.
  const auto s = SampledGraph::from_observed(fixtures::path(4), 0.5);
  MinimisationTrace trace;
  const auto res = minimisation_prior(s, 5000, 9, &trace);
  CHECK(res.sequence.kappa == std::vector<std::int64_t>{2, 4, 4, 2});
  CHECK(trace.accepted_errors.empty());
  CHECK(trace.initial_error == 0.0);
  CHECK(exhaustive_minimum({1, 2, 2, 1}, 0.5, 12) == 0.0);
}

TEST_CASE("minimisation reaches the exhaustive optimum on small samples") {
  auto rng = make_rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    const double p = 0.15 + 0.7 * uniform01(rng);
    const auto g = generate_er(5, 2 + uniform_below(rng, 7), rng());
    if (g.edge_count() == 0) continue;
    const auto s = SampledGraph::from_observed(g, p);
    const auto observed = degrees_of(s.graph);
    MinimisationTrace trace;
    const auto res = minimisation_prior(s, 4000, rng(), &trace);
    const std::int64_t target = scaled_floor(2 * static_cast<std::int64_t>(g.edge_count()), p);
    CHECK(std::accumulate(res.sequence.kappa.begin(), res.sequence.kappa.end(), std::int64_t{0}) == target);
    const double final_error = l2_error(observed, res.sequence.kappa, p);
    CHECK(final_error <= trace.initial_error + 1e-12);
    CHECK(final_error == doctest::Approx(exhaustive_minimum(observed, p, target)).epsilon(1e-9));
    for (std::size_t i = 0; i < observed.size(); ++i) CHECK(res.sequence.kappa[i] >= observed[i]);
  }
}

TEST_CASE("minimisation trace is monotone and keeps the sum") {
  const auto g = generate_ba(400, 4, 6);
  for (double p : {0.1, 0.35, 0.8}) {
    const auto s = edge_sample(g, p, 4);
    MinimisationTrace trace;
    const auto res = minimisation_prior(s, 20000, 2, &trace);
    const std::int64_t target = scaled_floor(2 * static_cast<std::int64_t>(s.graph.edge_count()), p);
    double previous = trace.initial_error;
    for (std::size_t i = 0; i < trace.accepted_errors.size(); ++i) {
      CHECK(trace.accepted_errors[i] < previous);
      CHECK(trace.accepted_sums[i] == target);
      previous = trace.accepted_errors[i];
    }
    CHECK(trace.proposals == 20000);
    CHECK(std::accumulate(res.sequence.kappa.begin(), res.sequence.kappa.end(), std::int64_t{0}) == target);
  }
}

TEST_CASE("infeasible balance is a construction error") {
  std::vector<std::int64_t> observed{3, 3};
  Rng rng = make_rng(1);
  CHECK_THROWS_AS(balanced_degree_estimate(observed, 0.5, 5, rng), ConstructionError);
  CHECK_THROWS_AS(minimisation_prior(SampledGraph::from_observed(Graph(), 0.5), 10, 1), ConstructionError);
}

TEST_CASE("cascade examples") {
  std::vector<std::int64_t> a{4, 2, 0};
  CHECK(cascade_zero_degrees(a) == 1);
  CHECK(a == std::vector<std::int64_t>{4, 1, 1});

  std::vector<std::int64_t> b{3, 1, 2};
  CHECK(cascade_zero_degrees(b) == 0);
  CHECK(b == std::vector<std::int64_t>{3, 1, 2});

  // A run of ones between the donor and the zero stays put.
  std::vector<std::int64_t> c{3, 1, 1, 0, 0};
  CHECK(cascade_zero_degrees(c) == 2);
  CHECK(c == std::vector<std::int64_t>{1, 1, 1, 1, 1});

  std::vector<std::int64_t> d{1, 0};
  CHECK_THROWS_AS(cascade_zero_degrees(d), ConstructionError);
}

TEST_CASE("cascade matches the step-by-step walk on random instances") {
  auto rng = make_rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 40);
    std::vector<std::int64_t> kappa(n);
    for (auto& k : kappa) k = uniform_below(rng, 3) == 0 ? 0 : static_cast<std::int64_t>(uniform_below(rng, 8));
    std::int64_t total = std::accumulate(kappa.begin(), kappa.end(), std::int64_t{0});
    while (total < static_cast<std::int64_t>(n)) {
      ++kappa[uniform_below(rng, n)];
      ++total;
    }
    const auto zeros = std::count(kappa.begin(), kappa.end(), 0);
    const auto expected = stepwise_cascade(kappa);
    auto got = kappa;
    CHECK(cascade_zero_degrees(got) == static_cast<std::uint64_t>(zeros));
    CHECK(got == expected);
    CHECK(std::count(got.begin(), got.end(), 0) == 0);
    CHECK(std::accumulate(got.begin(), got.end(), std::int64_t{0}) == total);
  }
}

TEST_CASE("link cascade prior") {
  // n_original = N' with every kappa >= 1: the balanced estimate is unchanged.
  const auto s = SampledGraph::from_observed(fixtures::complete(4), 1.0);
  const auto res = link_cascade_prior(s, 4);
  CHECK(res.sequence.kappa == std::vector<std::int64_t>{3, 3, 3, 3});

  // p = 1 sample of a graph with no isolated nodes: no placeholders, true sample pmf.
  const auto g = generate_ba(200, 2, 5);
  const auto full = edge_sample(g, 1.0, 1);
  const auto r1 = link_cascade_prior(full, g.node_count());
  CHECK(r1.sequence.kappa == degrees_of(full.graph));

  const auto sample = edge_sample(g, 0.3, 3);
  const auto r2 = link_cascade_prior(sample, g.node_count(), 7);
  CHECK(r2.sequence.kappa.size() == g.node_count());
  CHECK(std::count(r2.sequence.kappa.begin(), r2.sequence.kappa.end(), 0) == 0);
  CHECK(std::accumulate(r2.sequence.kappa.begin(), r2.sequence.kappa.end(), std::int64_t{0}) ==
        scaled_floor(2 * static_cast<std::int64_t>(sample.graph.edge_count()), 0.3));

  CHECK_THROWS_AS(link_cascade_prior(sample, sample.graph.node_count() - 1), ParameterError);
  const auto sparse = SampledGraph::from_observed(Graph(2, {{0, 1}}), 1.0);
  CHECK_THROWS_AS(link_cascade_prior(sparse, 5), ConstructionError);
}

TEST_CASE("Poisson triangle prior") {
  const auto free = SampledGraph::from_observed(fixtures::star(5), 0.4);
  const auto pi0 = poisson_triangle_prior(free);
  CHECK(poisson_triangle_lambda(free, edge_triangle_counts(free.graph)) == 0.0);
  CHECK(pi0.pmf(0) == 1.0);

  const auto k4 = SampledGraph::from_observed(fixtures::complete(4), 1.0);
  CHECK(poisson_triangle_lambda(k4, edge_triangle_counts(k4.graph)) == doctest::Approx(2.0));

  const auto pi = poisson_triangle_prior(k4);
  CHECK(pi.support_max() >= 2);
  double tail = 0;
  for (std::uint64_t t = 30; t <= pi.support_max(); ++t) tail += pi.pmf(t);
  CHECK(tail < 1e-10);
  CHECK(pi.mean() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(pi.pmf(1) == doctest::Approx(2 * std::exp(-2.0)).epsilon(1e-9));

  CHECK(poisson_truncation(2.0, 0) >= 2 + 10 * std::sqrt(3.0));
  CHECK(poisson_truncation(2.0, 50) >= 50);

  CHECK_THROWS_AS(poisson_triangle_prior(SampledGraph::from_observed(Graph(3, {}), 0.5)), ConstructionError);
  CHECK_THROWS_AS(truncated_poisson(-1.0, 5), ParameterError);
}
