#include "edgesample/theory.hpp"

#include <bit>
#include <cmath>

#include "edgesample/errors.hpp"
#include "edgesample/format.hpp"
#include "edgesample/rng.hpp"
#include "edgesample/sampling.hpp"

namespace edgesample {

double expected_removed_nodes(const Graph& g, double p) {
  check_probability(p);
  const double keep_none = 1.0 - p;
  double total = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    total += std::pow(keep_none, static_cast<double>(g.degree(static_cast<NodeId>(v))));
  }
  return total;
}

double variance_removed_nodes(const Graph& g, double p) {
  check_probability(p);
  const double q = 1.0 - p;
  double total = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto k = static_cast<double>(g.degree(static_cast<NodeId>(v)));
    total += std::pow(q, k) - std::pow(q, 2.0 * k);
  }
  for (const Edge& e : g.edges()) {
    const auto exponent = static_cast<double>(g.degree(e.u) + g.degree(e.v) - 1);
    total += 2.0 * p * std::pow(q, exponent);
  }
  return total;
}

double expected_sampled_triangles(std::uint64_t triangles, double p) {
  check_probability(p);
  return p * p * p * static_cast<double>(triangles);
}

double variance_edge_triangles(std::uint64_t t, double p) {
  check_probability(p);
  const auto td = static_cast<double>(t);
  const double p2 = p * p;
  const double p3 = p2 * p;
  return p3 * td * (1.0 - p2 + p2 * td - p3 * td);
}

std::uint64_t shared_link_triangle_pairs(const TriangleSequence& triangles) {
  std::uint64_t pairs = 0;
  for (auto t : triangles.per_edge) {
    if (t >= 2) pairs += t * (t - 1) / 2;
  }
  return pairs;
}

std::uint64_t shared_link_triangle_pairs(const Graph& g) { return shared_link_triangle_pairs(edge_triangle_counts(g)); }

double variance_total_triangles(const TriangleSequence& triangles, double p) {
  check_probability(p);
  const auto total = static_cast<double>(triangles.total);
  double sum_sq = 0.0;
  for (auto t : triangles.per_edge) sum_sq += static_cast<double>(t) * static_cast<double>(t);
  const auto shared = static_cast<double>(shared_link_triangle_pairs(triangles));
  const double p2 = p * p;
  const double p3 = p2 * p;
  const double p5 = p3 * p2;
  const double p6 = p3 * p3;
  return (3.0 * p3 * (1.0 - p2) * total + (p5 - p6) * sum_sq + 6.0 * total * (p3 - p6) + 16.0 * shared * (p5 - p6)) /
         9.0;
}

double variance_total_triangles(const Graph& g, double p) {
  return variance_total_triangles(edge_triangle_counts(g), p);
}

MomentReport enumeration_oracle(const Graph& g, double p, OracleQuantity quantity) {
  check_probability(p);
  const std::size_t m = g.edge_count();
  if (m > kMaxOracleEdges) {
    throw CapacityError("enumeration oracle handles at most " + std::to_string(kMaxOracleEdges) + " edges, graph has " +
                        std::to_string(m));
  }

  MomentReport report;
  switch (quantity.kind) {
    case OracleQuantity::Kind::RemovedNodes:
      report.quantity = "removed_nodes";
      break;
    case OracleQuantity::Kind::TotalTriangles:
      report.quantity = "total_triangles";
      break;
    case OracleQuantity::Kind::EdgeTriangles:
      if (quantity.index >= m) throw ParameterError("edge index out of range");
      report.quantity = "edge_triangles[" + std::to_string(quantity.index) + "]";
      break;
    case OracleQuantity::Kind::NodeDegree:
      if (quantity.index >= g.node_count()) throw ParameterError("node index out of range");
      report.quantity = "node_degree[" + std::to_string(quantity.index) + "]";
      break;
  }

  // Incident-edge masks per node, and one 3-edge mask per triangle.
  std::vector<std::uint32_t> incident(g.node_count(), 0);
  for (EdgeId e = 0; e < m; ++e) {
    incident[g.edge(e).u] |= 1u << e;
    incident[g.edge(e).v] |= 1u << e;
  }
  std::vector<std::uint32_t> triangles;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    for (NodeId w : g.neighbors(ed.v)) {
      if (w <= ed.v) continue;
      auto ew = g.find_edge(ed.u, w);
      if (!ew) continue;
      const EdgeId vw = *g.find_edge(ed.v, w);
      triangles.push_back((1u << e) | (1u << *ew) | (1u << vw));
    }
  }

  auto evaluate = [&](std::uint32_t kept) -> double {
    switch (quantity.kind) {
      case OracleQuantity::Kind::RemovedNodes: {
        std::size_t removed = 0;
        for (auto mask : incident) removed += (mask & kept) == 0 ? 1 : 0;
        return static_cast<double>(removed);
      }
      case OracleQuantity::Kind::TotalTriangles: {
        std::size_t count = 0;
        for (auto tri : triangles) count += (tri & kept) == tri ? 1 : 0;
        return static_cast<double>(count);
      }
      case OracleQuantity::Kind::EdgeTriangles: {
        const std::uint32_t bit = 1u << quantity.index;
        std::size_t count = 0;
        for (auto tri : triangles) count += (tri & bit) != 0 && (tri & kept) == tri ? 1 : 0;
        return static_cast<double>(count);
      }
      case OracleQuantity::Kind::NodeDegree:
        return static_cast<double>(std::popcount(incident[quantity.index] & kept));
    }
    return 0.0;
  };

  std::vector<double> weight_by_size(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    weight_by_size[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(m - k));
  }

  const std::uint64_t subsets = std::uint64_t{1} << m;
  std::vector<double> values(subsets);
  double mean = 0.0;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    const auto kept = static_cast<std::uint32_t>(s);
    values[s] = evaluate(kept);
    mean += weight_by_size[std::popcount(kept)] * values[s];
  }
  double variance = 0.0;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    const double d = values[s] - mean;
    variance += weight_by_size[std::popcount(static_cast<std::uint32_t>(s))] * d * d;
  }
  report.mean = mean;
  report.variance = variance;
  return report;
}

std::vector<MomentReport> theory_report(const Graph& g, double p) {
  const auto tri = edge_triangle_counts(g);
  std::vector<MomentReport> rows;
  rows.push_back({"removed_nodes", expected_removed_nodes(g, p), variance_removed_nodes(g, p), {}, {}, 0});
  rows.push_back(
      {"total_triangles", expected_sampled_triangles(tri.total, p), variance_total_triangles(tri, p), {}, {}, 0});
  return rows;
}

void add_empirical_moments(std::vector<MomentReport>& report, const Graph& g, double p, std::size_t replicates,
                           std::uint64_t seed) {
  if (replicates == 0) return;
  double sum_removed = 0.0, sq_removed = 0.0, sum_tri = 0.0, sq_tri = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    const auto s = edge_sample(g, p, mix_seed(seed, r));
    const auto removed = static_cast<double>(s.removed_node_count);
    const auto tri = static_cast<double>(count_triangles(s.graph));
    sum_removed += removed;
    sq_removed += removed * removed;
    sum_tri += tri;
    sq_tri += tri * tri;
  }
  const auto n = static_cast<double>(replicates);
  auto fill = [&](MomentReport& row, double sum, double sq) {
    const double mean = sum / n;
    row.empirical_mean = mean;
    row.empirical_variance = replicates > 1 ? (sq - n * mean * mean) / (n - 1.0) : 0.0;
    row.replicates = replicates;
  };
  for (auto& row : report) {
    if (row.quantity == "removed_nodes") fill(row, sum_removed, sq_removed);
    if (row.quantity == "total_triangles") fill(row, sum_tri, sq_tri);
  }
}

std::string moment_csv_header() { return "quantity,mean,variance,empirical_mean,empirical_variance,replicates"; }

std::string moment_csv_row(const MomentReport& r) {
  return r.quantity + "," + format_double(r.mean) + "," + format_double(r.variance) + "," +
         (r.empirical_mean ? format_double(*r.empirical_mean) : "") + "," +
         (r.empirical_variance ? format_double(*r.empirical_variance) : "") + "," + std::to_string(r.replicates);
}

}  // namespace edgesample
