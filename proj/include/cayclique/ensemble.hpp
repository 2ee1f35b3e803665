#pragma once

// Seeded random graph families used by tests, the acceptance run and the CLI.
// Only raw mt19937_64 output is consumed, so sequences are identical across
// standard library implementations.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cayclique/graph.hpp"

namespace cayclique {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

// Each pair becomes an edge with probability permille / 1000.
inline Graph random_graph(std::size_t v, unsigned permille, std::mt19937_64& rng) {
  Graph g(v);
  for (Vertex a = 0; a < v; ++a)
    for (Vertex b = a + 1; b < v; ++b)
      if (rng() % 1000 < permille) g.add_edge(a, b);
  return g;
}

inline constexpr std::array<unsigned, 5> kDensities{150, 350, 500, 700, 900};

// `count` graphs with order drawn uniformly from [min_v, max_v]; densities
// cycle through kDensities.
inline std::vector<Graph> graph_ensemble(std::size_t count, std::size_t min_v, std::size_t max_v,
                                         std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t v = min_v + static_cast<std::size_t>(rng() % (max_v - min_v + 1));
    out.push_back(random_graph(v, kDensities[i % kDensities.size()], rng));
  }
  return out;
}

// The 200-graph family with 2 <= v <= 8.
inline std::vector<Graph> standard_ensemble(std::uint64_t seed = kDefaultSeed) { return graph_ensemble(200, 2, 8, seed); }

// A few graphs of each requested order, densities cycling as above.
inline std::vector<Graph> graphs_of_orders(const std::vector<std::size_t>& orders, std::size_t per_order,
                                           std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<Graph> out;
  for (std::size_t v : orders)
    for (std::size_t i = 0; i < per_order; ++i) out.push_back(random_graph(v, kDensities[i % kDensities.size()], rng));
  return out;
}

}  // namespace cayclique
