#include "edgesample/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgesample/errors.hpp"
#include "edgesample/format.hpp"

namespace edgesample {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) {
    labels_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != node_count) {
    throw ParameterError("label count " + std::to_string(labels_.size()) +
                         " does not match node count " + std::to_string(node_count));
  }

  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ParameterError("edge endpoint out of range");
    }
    if (e.u == e.v) continue;
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(node_count + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

  adjacency_.resize(2 * edges_.size());
  adjacency_edge_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v). For node w, edges (u, w) with u < w precede
  // edges (w, v), and each group is ascending, so every list comes out sorted.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[fill[e.u]] = e.v;
    adjacency_edge_[fill[e.u]++] = id;
    adjacency_[fill[e.v]] = e.u;
    adjacency_edge_[fill[e.v]++] = id;
  }
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = degree(static_cast<NodeId>(v));
  return out;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < node_count(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

std::optional<NodeId> Graph::find_label(std::string_view label) const {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) return static_cast<NodeId>(v);
  }
  return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(NodeId a, NodeId b) const {
  if (a >= node_count() || b >= node_count()) return std::nullopt;
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
  if (it == nbrs.end() || *it != b) return std::nullopt;
  return incident_edges(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

NodeId GraphBuilder::add_node(std::string_view label) {
  auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

void GraphBuilder::add_edge(std::string_view a, std::string_view b) {
  if (a == b) return;  // self-loops never create a node on their own
  const NodeId u = add_node(a);
  const NodeId v = add_node(b);
  edges_.push_back({u, v});
}

Graph GraphBuilder::build() && {
  const std::size_t n = labels_.size();
  return Graph(n, std::move(edges_), std::move(labels_));
}

Graph build_graph(std::span<const std::pair<std::string, std::string>> edge_pairs) {
  GraphBuilder builder;
  for (std::size_t i = 0; i < edge_pairs.size(); ++i) {
    const auto& [a, b] = edge_pairs[i];
    if (a.empty() || b.empty()) {
      throw ParseError("pair " + std::to_string(i + 1) + ": empty node label");
    }
    builder.add_edge(a, b);
  }
  return std::move(builder).build();
}

TriangleSequence edge_triangle_counts(const Graph& g) {
  TriangleSequence out;
  out.per_edge.assign(g.edge_count(), 0);
  out.per_node.assign(g.node_count(), 0);

  std::uint64_t sum = 0;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    auto a = g.neighbors(e.u);
    auto b = g.neighbors(e.v);
    std::uint64_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++common;
        ++ia;
        ++ib;
      }
    }
    out.per_edge[id] = common;
    sum += common;
  }

  for (std::size_t v = 0; v < g.node_count(); ++v) {
    std::uint64_t twice = 0;
    for (EdgeId id : g.incident_edges(static_cast<NodeId>(v))) twice += out.per_edge[id];
    out.per_node[v] = twice / 2;
  }
  out.total = sum / 3;
  return out;
}

std::uint64_t count_triangles(const Graph& g) { return edge_triangle_counts(g).total; }

SummaryStats graph_stats(const Graph& g) {
  SummaryStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.max_degree = g.max_degree();

  const auto tri = edge_triangle_counts(g);
  s.triangles = tri.total;

  if (s.nodes > 0) {
    double clustering_sum = 0.0;
    for (std::size_t v = 0; v < s.nodes; ++v) {
      const double k = static_cast<double>(g.degree(static_cast<NodeId>(v)));
      if (k < 2) continue;
      clustering_sum += 2.0 * static_cast<double>(tri.per_node[v]) / (k * (k - 1.0));
    }
    s.mean_clustering = clustering_sum / static_cast<double>(s.nodes);
  }

  if (s.edges > 0) {
    s.mean_triangles_per_edge = 3.0 * static_cast<double>(s.triangles) / static_cast<double>(s.edges);

    // Pearson correlation over the 2M ordered endpoint pairs. Both marginals
    // are the same distribution, so one mean and one variance suffice.
    double mean = 0.0;
    for (const Edge& e : g.edges()) {
      mean += static_cast<double>(g.degree(e.u) + g.degree(e.v));
    }
    mean /= 2.0 * static_cast<double>(s.edges);
    double var = 0.0;
    double cov = 0.0;
    for (const Edge& e : g.edges()) {
      const double x = static_cast<double>(g.degree(e.u)) - mean;
      const double y = static_cast<double>(g.degree(e.v)) - mean;
      var += x * x + y * y;
      cov += 2.0 * x * y;
    }
    if (var <= 1e-12 * mean * mean * 2.0 * static_cast<double>(s.edges)) {
      s.assortativity = 0.0;
      s.assortativity_degenerate = true;
    } else {
      s.assortativity = std::clamp(cov / var, -1.0, 1.0);
    }
  } else {
    s.assortativity_degenerate = true;
  }
  return s;
}

std::string summary_csv_header() {
  return "nodes,edges,max_degree,assortativity,assortativity_degenerate,triangles,mean_clustering,"
         "mean_triangles_per_edge";
}

std::string summary_csv_row(const SummaryStats& s) {
  return std::to_string(s.nodes) + "," + std::to_string(s.edges) + "," + std::to_string(s.max_degree) +
         "," + format_double(s.assortativity) + "," + (s.assortativity_degenerate ? "1" : "0") + "," +
         std::to_string(s.triangles) + "," + format_double(s.mean_clustering) + "," +
         format_double(s.mean_triangles_per_edge);
}

}  // namespace edgesample
