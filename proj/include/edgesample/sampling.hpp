#ifndef EDGESAMPLE_SAMPLING_HPP
#define EDGESAMPLE_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "edgesample/graph.hpp"

namespace edgesample {

/**
 * An edge-sampled graph G' together with the sampling probability and its
 * mapping back to the parent graph.
 *
 * Sample node ids are assigned in increasing parent-id order and sample
 * edges keep the parent's canonical order, so parent_node_of and
 * parent_edge_of are strictly increasing. Nodes that lost every incident
 * edge are not part of `graph`; they are counted in removed_node_count.
 */
struct SampledGraph {
  Graph graph;
  double p = 1.0;
  std::vector<NodeId> parent_node_of;
  std::vector<EdgeId> parent_edge_of;
  std::size_t removed_node_count = 0;

  // Wraps an observed sample whose parent is unknown. Parent maps are the
  // identity; removed_node_count is 0.
  static SampledGraph from_observed(Graph g, double p);
};

// Throws ParameterError unless 0 < p <= 1.
void check_probability(double p);

// Incident subgraph sampling: every parent edge is kept independently with
// probability p, visiting edges in canonical order.
SampledGraph edge_sample(const Graph& g, double p, std::uint64_t seed);

}  // namespace edgesample

#endif  // EDGESAMPLE_SAMPLING_HPP
