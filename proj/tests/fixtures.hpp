#ifndef EDGESAMPLE_TESTS_FIXTURES_HPP
#define EDGESAMPLE_TESTS_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "edgesample/graph.hpp"

namespace fixtures {

inline edgesample::Graph from_pairs(std::vector<std::pair<std::string, std::string>> pairs) {
  return edgesample::build_graph(pairs);
}

inline edgesample::Graph complete(std::size_t n) {
  std::vector<edgesample::Edge> edges;
  for (edgesample::NodeId a = 0; a < n; ++a)
    for (edgesample::NodeId b = a + 1; b < n; ++b) edges.push_back({a, b});
  return edgesample::Graph(n, std::move(edges));
}

inline edgesample::Graph path(std::size_t n) {
  std::vector<edgesample::Edge> edges;
  for (edgesample::NodeId a = 0; a + 1 < n; ++a) edges.push_back({a, a + 1});
  return edgesample::Graph(n, std::move(edges));
}

// Hub 0 joined to `leaves` leaves.
inline edgesample::Graph star(std::size_t leaves) {
  std::vector<edgesample::Edge> edges;
  for (edgesample::NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return edgesample::Graph(leaves + 1, std::move(edges));
}

inline edgesample::Graph ring(std::size_t n) {
  std::vector<edgesample::Edge> edges;
  for (edgesample::NodeId a = 0; a < n; ++a) edges.push_back({a, static_cast<edgesample::NodeId>((a + 1) % n)});
  return edgesample::Graph(n, std::move(edges));
}

// Two triangles sharing the edge (0, 1): a diamond / bowtie-on-an-edge gadget.
inline edgesample::Graph shared_edge_triangles() {
  return edgesample::Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
}

inline edgesample::Graph two_disjoint_triangles() {
  return edgesample::Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

}  // namespace fixtures

#endif  // EDGESAMPLE_TESTS_FIXTURES_HPP
