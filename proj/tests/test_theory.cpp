#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "edgesample/errors.hpp"
#include "edgesample/generators.hpp"
#include "edgesample/sampling.hpp"
#include "edgesample/theory.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace edgesample;

namespace {

struct Named {
  std::string name;
  Graph g;
};

std::vector<Named> micro_graphs() {
  return {
      {"K3", fixtures::complete(3)},
      {"K4", fixtures::complete(4)},
      {"P3", fixtures::path(3)},
      {"P4", fixtures::path(4)},
      {"S4", fixtures::star(4)},
      {"bowtie", Graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}})},
      {"diamond", fixtures::shared_edge_triangles()},
      {"K5", fixtures::complete(5)},
  };
}

void check_rel(double got, double want, double tol, const std::string& what) {
  const double scale = std::max(std::abs(want), 1e-300);
  CHECK_MESSAGE(std::abs(got - want) <= tol * scale + 1e-15, what << ": got " << got << " want " << want);
}

}  // namespace

TEST_CASE("closed forms match exhaustive enumeration on micro graphs") {
  for (const auto& [name, g] : micro_graphs()) {
    const auto tri = edge_triangle_counts(g);
    for (int i = 1; i <= 9; ++i) {
      const double p = i / 10.0;
      const std::string tag = name + " p=" + std::to_string(p);

      const auto n0 = enumeration_oracle(g, p, OracleQuantity::removed_nodes());
      check_rel(expected_removed_nodes(g, p), n0.mean, 1e-10, tag + " E(N0)");
      check_rel(variance_removed_nodes(g, p), n0.variance, 1e-10, tag + " Var(N0)");

      const auto total = enumeration_oracle(g, p, OracleQuantity::total_triangles());
      check_rel(expected_sampled_triangles(tri.total, p), total.mean, 1e-10, tag + " E(T')");
      check_rel(variance_total_triangles(tri, p), total.variance, 1e-10, tag + " Var(T')");

      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        // T'_l counts as zero when the edge itself is dropped.
        const auto raw = enumeration_oracle(g, p, OracleQuantity::edge_triangles(e));
        check_rel(raw.mean, p * p * p * double(tri.per_edge[e]), 1e-10, tag + " E(T'_l)");
        check_rel(variance_edge_triangles(tri.per_edge[e], p), raw.variance, 1e-10, tag + " Var(T'_l)");
      }

      for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto k = enumeration_oracle(g, p, OracleQuantity::node_degree(v));
        const double kv = double(g.degree(v));
        check_rel(k.mean, p * kv, 1e-10, tag + " E(k')");
        check_rel(k.variance, kv * p * (1 - p), 1e-10, tag + " Var(k')");
      }
    }
  }
}

TEST_CASE("enumeration oracle against exact rational arithmetic on P3") {
  // P3 at p = 3/10: N'_0 is 3 when both edges go, 1 when exactly one goes.
  using oracle::Rational;
  const Rational p(3, 10);
  const Rational q = 1 - p;
  const Rational mean = 3 * q * q + 2 * p * q;
  const Rational second = 9 * q * q + 2 * p * q;
  const auto r = enumeration_oracle(fixtures::path(3), 0.3, OracleQuantity::removed_nodes());
  CHECK(r.mean == doctest::Approx(oracle::to_double(mean)).epsilon(1e-14));
  CHECK(r.variance == doctest::Approx(oracle::to_double(second - mean * mean)).epsilon(1e-13));
}

TEST_CASE("boundary values") {
  const Graph edge(2, {{0, 1}});
  for (double p : {0.1, 0.5, 0.9}) CHECK(expected_removed_nodes(edge, p) == doctest::Approx(2 * (1 - p)));
  CHECK(variance_removed_nodes(edge, 0.5) == doctest::Approx(1.0));
  const auto single = enumeration_oracle(edge, 0.5, OracleQuantity::removed_nodes());
  CHECK(single.mean == doctest::Approx(1.0));
  CHECK(single.variance == doctest::Approx(1.0));

  const auto k4 = fixtures::complete(4);
  CHECK(expected_removed_nodes(k4, 1.0) == 0.0);
  CHECK(variance_removed_nodes(k4, 1.0) == 0.0);
  CHECK(variance_total_triangles(k4, 1.0) == doctest::Approx(0.0).scale(1));
  CHECK(expected_sampled_triangles(1, 1.0) == 1.0);
  CHECK(expected_sampled_triangles(4, 0.5) == 0.5);
  CHECK(variance_edge_triangles(0, 0.4) == 0.0);
  CHECK(variance_edge_triangles(1, 1.0) == 0.0);
  CHECK(enumeration_oracle(fixtures::complete(3), 0.5, OracleQuantity::total_triangles()).mean ==
        doctest::Approx(0.125));
  // Isolated nodes are always invisible.
  CHECK(expected_removed_nodes(Graph(3, {{0, 1}}), 0.5) == doctest::Approx(2.0));
}

TEST_CASE("edge-triangle variance by direct pmf summation") {
  // t = 3, p = 2/5: T'_l is 0 when the edge goes, else Binomial(3, p^2).
  using oracle::Rational;
  const Rational p(2, 5);
  Rational mean = 0;
  Rational second = 0;
  for (unsigned j = 0; j <= 3; ++j) {
    const Rational w = p * oracle::binomial_pmf(j, 3, p * p);
    mean += w * j;
    second += w * j * j;
  }
  CHECK(variance_edge_triangles(3, 0.4) == doctest::Approx(oracle::to_double(second - mean * mean)).epsilon(1e-12));
}

TEST_CASE("shared-link triangle pairs") {
  CHECK(shared_link_triangle_pairs(fixtures::complete(3)) == 0);
  CHECK(shared_link_triangle_pairs(fixtures::two_disjoint_triangles()) == 0);
  CHECK(shared_link_triangle_pairs(fixtures::shared_edge_triangles()) == 1);

  // Brute force over pairs of triangles of K4.
  const auto g = fixtures::complete(4);
  std::vector<std::vector<int>> triangles;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) triangles.push_back({a, b, c});
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < triangles.size(); ++i)
    for (std::size_t j = i + 1; j < triangles.size(); ++j) {
      int common = 0;
      for (int x : triangles[i])
        for (int y : triangles[j]) common += x == y ? 1 : 0;
      pairs += common == 2 ? 1 : 0;
    }
  CHECK(pairs == 6);
  CHECK(shared_link_triangle_pairs(g) == pairs);
}

TEST_CASE("enumeration oracle limits") {
  CHECK_THROWS_AS(enumeration_oracle(fixtures::complete(7), 0.5, OracleQuantity::total_triangles()), CapacityError);
  CHECK_NOTHROW(enumeration_oracle(fixtures::path(21), 0.5, OracleQuantity::removed_nodes()));
  CHECK_THROWS_AS(enumeration_oracle(fixtures::path(3), 0.5, OracleQuantity::edge_triangles(5)), ParameterError);
}

TEST_CASE("closed forms agree with sampling on ER(200, 800)") {
  const auto g = generate_er(200, 800, 21);
  const double p = 0.3;
  auto report = theory_report(g, p);
  add_empirical_moments(report, g, p, 5000, 3);
  REQUIRE(report.size() == 2);
  for (const auto& row : report) {
    REQUIRE(row.empirical_mean.has_value());
    REQUIRE(row.empirical_variance.has_value());
    CHECK(row.replicates == 5000);
    const double se = std::sqrt(row.variance / 5000);
    CHECK_MESSAGE(std::abs(*row.empirical_mean - row.mean) < 4 * se, row.quantity);
    CHECK_MESSAGE(std::abs(*row.empirical_variance / row.variance - 1) < 0.15, row.quantity);
  }
  CHECK(moment_csv_row(report[0]).find(report[0].quantity) == 0);
}
