#include "edgesample/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "edgesample/errors.hpp"
#include "edgesample/rng.hpp"

namespace edgesample {
namespace {

// Pair index idx = v (v - 1) / 2 + u for u < v.
Edge decode_pair(std::uint64_t idx) {
  auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
  while (v * (v - 1) / 2 > idx) --v;
  while ((v + 1) * v / 2 <= idx) ++v;
  const std::uint64_t u = idx - v * (v - 1) / 2;
  return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

}  // namespace

Graph generate_er(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > pairs) {
    throw CapacityError("G(n,m) with n=" + std::to_string(n) + " admits at most " + std::to_string(pairs) +
                        " edges, requested " + std::to_string(m));
  }
  Rng rng = make_rng(seed);

  // Floyd's algorithm: m distinct pair indices, each subset equally likely.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> sorted(chosen.begin(), chosen.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<Edge> edges;
  edges.reserve(sorted.size());
  for (std::uint64_t idx : sorted) edges.push_back(decode_pair(idx));
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph generate_ba(std::uint64_t n, std::uint64_t m_attach, std::uint64_t seed, BaSeed seed_graph) {
  if (m_attach < 1 || n <= m_attach) {
    throw ParameterError("preferential attachment needs m_attach >= 1 and n > m_attach (got n=" +
                         std::to_string(n) + ", m_attach=" + std::to_string(m_attach) + ")");
  }
  Rng rng = make_rng(seed);

  std::vector<Edge> edges;
  // Every node appears here once per unit of degree.
  std::vector<NodeId> endpoints;
  auto connect = [&](NodeId a, NodeId b) {
    edges.push_back({a, b});
    endpoints.push_back(a);
    endpoints.push_back(b);
  };

  const auto hub = static_cast<NodeId>(m_attach);
  if (seed_graph == BaSeed::Star) {
    for (NodeId t = 0; t < hub; ++t) connect(t, hub);
  } else {
    for (NodeId a = 0; a <= hub; ++a) {
      for (NodeId b = a + 1; b <= hub; ++b) connect(a, b);
    }
  }

  std::vector<NodeId> targets;
  targets.reserve(m_attach);
  for (std::uint64_t source = m_attach + 1; source < n; ++source) {
    targets.clear();
    while (targets.size() < m_attach) {
      const NodeId pick = endpoints[uniform_below(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) targets.push_back(pick);
    }
    for (NodeId t : targets) connect(t, static_cast<NodeId>(source));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

}  // namespace edgesample
