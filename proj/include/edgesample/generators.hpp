#ifndef EDGESAMPLE_GENERATORS_HPP
#define EDGESAMPLE_GENERATORS_HPP

#include <cstdint>

#include "edgesample/graph.hpp"

namespace edgesample {

// G(n, m): exactly m distinct edges drawn uniformly without replacement from
// the n(n-1)/2 possible pairs. Throws CapacityError when m exceeds that.
Graph generate_er(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

enum class BaSeed {
  // Node m_attach joined to nodes 0..m_attach-1. Gives M = m_attach (n - m_attach).
  Star,
  // Complete graph on nodes 0..m_attach. Gives M = C(m_attach+1, 2) + m_attach (n - m_attach - 1).
  Complete,
};

// Preferential attachment. Every node added after the seed picks m_attach
// distinct targets with probability proportional to current degree.
Graph generate_ba(std::uint64_t n, std::uint64_t m_attach, std::uint64_t seed, BaSeed seed_graph = BaSeed::Star);

}  // namespace edgesample

#endif  // EDGESAMPLE_GENERATORS_HPP
