#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. Nothing here shares code with include/.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "cayclique/graph.hpp"

namespace oracle {

// Largest clique by enumerating every vertex subset (order <= ~20).
inline std::size_t clique_number(const cayclique::Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && !g.adjacent(static_cast<cayclique::Vertex>(i), static_cast<cayclique::Vertex>(j)))
          ok = false;
    if (ok) best = size;
  }
  return best;
}

inline std::size_t independence_number(const cayclique::Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && g.adjacent(static_cast<cayclique::Vertex>(i), static_cast<cayclique::Vertex>(j)))
          ok = false;
    if (ok) best = size;
  }
  return best;
}

// True iff some map V -> {0..k-1} is proper; tries all k^n maps.
inline bool colourable(const cayclique::Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  if (n == 0) return true;
  if (k == 0) return false;
  std::vector<std::size_t> c(n, 0);
  while (true) {
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (c[u] == c[v]) {
        ok = false;
        break;
      }
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && ++c[i] == k) c[i++] = 0;
    if (i == n) return false;
  }
}

inline std::size_t chromatic_number(const cayclique::Graph& g) {
  std::size_t k = 0;
  while (!colourable(g, k)) ++k;
  return k;
}

// Graph isomorphism by trying all bijections (order <= 9).
inline bool isomorphic(const cayclique::Graph& a, const cayclique::Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<cayclique::Vertex> perm(a.order());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<cayclique::Vertex>(i);
  do {
    bool ok = true;
    for (auto [u, v] : a.edges())
      if (!b.adjacent(perm[u], perm[v])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Polynomial over Z_p irreducible iff it has no monic factor of degree
// 1..deg-1 found by multiplying out every pair of monic polynomials.
inline bool irreducible_by_products(const std::vector<unsigned>& f, unsigned p) {
  const std::size_t deg = f.size() - 1;
  auto monics = [p](std::size_t d) {
    std::vector<std::vector<unsigned>> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<unsigned> g(d + 1, 0);
      std::size_t x = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      g[d] = 1;
      out.push_back(g);
    }
    return out;
  };
  for (std::size_t d = 1; d < deg; ++d)
    for (const auto& a : monics(d))
      for (const auto& b : monics(deg - d)) {
        std::vector<unsigned> prod(deg + 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        if (prod == f) return false;
      }
  return true;
}

}  // namespace oracle
