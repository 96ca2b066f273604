#ifndef EDGESAMPLE_GRAPH_HPP
#define EDGESAMPLE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace edgesample {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Immutable undirected simple graph.
 *
 * Nodes carry contiguous ids 0..N-1 and an original label. Edges are kept in
 * canonical order (sorted by (u, v) with u < v); this order is the edge index
 * used by every per-edge sequence in the library. Adjacency is stored in CSR
 * form with each neighbour list sorted ascending.
 */
class Graph {
 public:
  Graph() = default;

  // Self-loops are dropped and duplicate edges collapsed. Labels default to
  // the decimal node id when `labels` is empty.
  Graph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels = {});

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {adjacency_edge_.data() + offsets_[v], adjacency_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<NodeId> find_label(std::string_view label) const;

  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> adjacency_edge_;
};

/**
 * Interns string labels to contiguous ids in first-seen order and collects
 * edges. Nodes only come into existence through add_edge unless add_node is
 * called explicitly.
 */
class GraphBuilder {
 public:
  NodeId add_node(std::string_view label);
  void add_edge(std::string_view a, std::string_view b);
  Graph build() &&;

 private:
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

// Empty labels are rejected with a ParseError naming the pair index.
Graph build_graph(std::span<const std::pair<std::string, std::string>> edge_pairs);

// Per-edge triangle counts T_l indexed like Graph::edges().
struct TriangleSequence {
  std::vector<std::uint64_t> per_edge;
  std::vector<std::uint64_t> per_node;  // T_i, with 2 T_i = sum of T_l over edges at i
  std::uint64_t total = 0;
};

TriangleSequence edge_triangle_counts(const Graph& g);

// Total number of triangles only.
std::uint64_t count_triangles(const Graph& g);

struct SummaryStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t max_degree = 0;
  double assortativity = 0.0;
  bool assortativity_degenerate = false;  // endpoint-degree variance was zero
  std::uint64_t triangles = 0;
  double mean_clustering = 0.0;
  double mean_triangles_per_edge = 0.0;
};

// Degree assortativity; nodes of degree < 2 contribute local clustering 0.
SummaryStats graph_stats(const Graph& g);

// Single CSV header/row pair for SummaryStats.
std::string summary_csv_header();
std::string summary_csv_row(const SummaryStats& s);

}  // namespace edgesample

#endif  // EDGESAMPLE_GRAPH_HPP
