#ifndef EDGESAMPLE_THEORY_HPP
#define EDGESAMPLE_THEORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgesample/graph.hpp"

namespace edgesample {

struct MomentReport {
  std::string quantity;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> empirical_mean;
  std::optional<double> empirical_variance;
  std::size_t replicates = 0;
};

// E(N'_0) = sum_i (1-p)^{k_i}. Nodes that are isolated in g are always
// invisible and contribute 1 each.
double expected_removed_nodes(const Graph& g, double p);

// Var(N'_0) = sum_i [(1-p)^{k_i} - (1-p)^{2 k_i}] + sum over ordered adjacent
// pairs (i, j) of p (1-p)^{k_i + k_j - 1}; every edge appears twice.
double variance_removed_nodes(const Graph& g, double p);

// E(T') = p^3 T
double expected_sampled_triangles(std::uint64_t triangles, double p);

// Var(T'_l | T_l = t) = p^3 t (1 - p^2 + p^2 t - p^3 t)
double variance_edge_triangles(std::uint64_t t, double p);

// Pairs of distinct triangles sharing an edge: sum over edges of C(T_l, 2).
std::uint64_t shared_link_triangle_pairs(const TriangleSequence& triangles);
std::uint64_t shared_link_triangle_pairs(const Graph& g);

/**
 * Var(T' | T_1..T_M) for the sampled triangle total:
 *
 *   (1/9) [ 3p^3(1-p^2) T + (p^5-p^6) sum T_l^2 + 6T(p^3-p^6) + 16 k (p^5-p^6) ]
 *
 * with k the unordered shared-link pair count. It reduces to
 * T(p^3-p^6) + 2k(p^5-p^6).
 */
double variance_total_triangles(const TriangleSequence& triangles, double p);
double variance_total_triangles(const Graph& g, double p);

// Quantity evaluated by the enumeration oracle on each sampled subgraph.
struct OracleQuantity {
  enum class Kind { RemovedNodes, TotalTriangles, EdgeTriangles, NodeDegree };
  Kind kind = Kind::RemovedNodes;
  std::size_t index = 0;  // edge id for EdgeTriangles, node id for NodeDegree

  static OracleQuantity removed_nodes() { return {Kind::RemovedNodes, 0}; }
  static OracleQuantity total_triangles() { return {Kind::TotalTriangles, 0}; }
  static OracleQuantity edge_triangles(EdgeId e) { return {Kind::EdgeTriangles, e}; }
  static OracleQuantity node_degree(NodeId v) { return {Kind::NodeDegree, v}; }
};

inline constexpr std::size_t kMaxOracleEdges = 20;

// Exact mean and variance over all 2^M edge subsets, weighting subset S by
// p^|S| (1-p)^(M-|S|). An unsampled edge has T'_l = 0. Throws CapacityError
// above kMaxOracleEdges edges.
MomentReport enumeration_oracle(const Graph& g, double p, OracleQuantity quantity);

// Closed-form moments of N'_0 and T' on g.
std::vector<MomentReport> theory_report(const Graph& g, double p);

// Fills the empirical fields of theory_report rows by sampling.
void add_empirical_moments(std::vector<MomentReport>& report, const Graph& g, double p, std::size_t replicates,
                           std::uint64_t seed);

std::string moment_csv_header();
std::string moment_csv_row(const MomentReport& r);

}  // namespace edgesample

#endif  // EDGESAMPLE_THEORY_HPP
