#include "edgesample/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "edgesample/errors.hpp"
#include "edgesample/format.hpp"
#include "edgesample/rng.hpp"

namespace edgesample {

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ParameterError("sampling probability must lie in (0, 1], got " + format_double(p));
  }
}

SampledGraph SampledGraph::from_observed(Graph g, double p) {
  check_probability(p);
  SampledGraph s;
  s.p = p;
  s.parent_node_of.resize(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) s.parent_node_of[v] = static_cast<NodeId>(v);
  s.parent_edge_of.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) s.parent_edge_of[e] = static_cast<EdgeId>(e);
  s.graph = std::move(g);
  return s;
}

SampledGraph edge_sample(const Graph& g, double p, std::uint64_t seed) {
  check_probability(p);
  Rng rng = make_rng(seed);

  SampledGraph s;
  s.p = p;
  std::vector<bool> visible(g.node_count(), false);
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (!bernoulli(rng, p)) continue;
    s.parent_edge_of.push_back(id);
    visible[g.edge(id).u] = true;
    visible[g.edge(id).v] = true;
  }

  constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> sample_id(g.node_count(), kAbsent);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!visible[v]) continue;
    sample_id[v] = static_cast<NodeId>(s.parent_node_of.size());
    s.parent_node_of.push_back(static_cast<NodeId>(v));
    labels.push_back(g.label(static_cast<NodeId>(v)));
  }
  s.removed_node_count = g.node_count() - s.parent_node_of.size();

  std::vector<Edge> edges;
  edges.reserve(s.parent_edge_of.size());
  for (EdgeId id : s.parent_edge_of) {
    const Edge& e = g.edge(id);
    edges.push_back({sample_id[e.u], sample_id[e.v]});
  }
  const std::size_t n = labels.size();
  s.graph = Graph(n, std::move(edges), std::move(labels));
  return s;
}

}  // namespace edgesample
