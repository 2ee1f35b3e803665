#pragma once

// Exact clique, independence and chromatic-number solvers. All of them are
// single-threaded and deterministic, and all of them stop with
// BudgetExhausted instead of returning a possibly wrong answer.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayclique/graph.hpp"

namespace cayclique {

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error("budget exhausted: " + what) {}
};

struct SearchBudget {
  std::uint64_t max_nodes = 200'000'000;
};

// Dense symmetric adjacency as one bitset row per vertex.
class AdjacencyBits {
 public:
  AdjacencyBits() = default;
  explicit AdjacencyBits(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static AdjacencyBits from_graph(const Graph& g) {
    AdjacencyBits a(g.order());
    for (Vertex u = 0; u < g.order(); ++u)
      for (Vertex v : g.neighbors(u)) a.set(u, v);
    return a;
  }

  // adjacent(u, v) must be symmetric; it is queried for u < v only.
  template <class Pred>
  static AdjacencyBits from_predicate(std::size_t n, Pred&& adjacent) {
    AdjacencyBits a(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (adjacent(u, v)) {
          a.set(u, v);
          a.set(v, u);
        }
    return a;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  void set(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }
  bool test(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
  }
  const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }

  AdjacencyBits complemented() const {
    AdjacencyBits c(n_);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v)
        if (u != v && !test(u, v)) c.set(u, v);
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Vertex> witness;  // sorted
};

namespace detail {

// Bitset branch and bound in the style of Tomita's MCQ with the San Segundo
// bit-parallel colouring bound. Vertices are renumbered by non-increasing
// degree so that bit order is the branching priority.
class CliqueSearch {
 public:
  // With a target, only cliques of at least that size are sought and the
  // search stops at the first one.
  CliqueSearch(const AdjacencyBits& adj, SearchBudget budget, std::size_t target = 0) : budget_(budget), target_(target) {
    const std::size_t n = adj.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t w = 0; w < adj.words(); ++w) deg[u] += std::popcount(adj.row(u)[w]);
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
    adj_ = AdjacencyBits(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (adj.test(order_[i], order_[j])) {
          adj_.set(i, j);
          adj_.set(j, i);
        }
  }

  CliqueResult run() {
    const std::size_t n = adj_.size();
    CliqueResult res;
    if (n == 0) return res;
    std::vector<std::uint64_t> p(adj_.words(), 0);
    for (std::size_t v = 0; v < n; ++v) p[v / 64] |= std::uint64_t{1} << (v % 64);
    best_.clear();
    current_.clear();
    try {
      expand(p);
    } catch (const Found&) {
    }
    for (Vertex v : best_) res.witness.push_back(order_[v]);
    std::sort(res.witness.begin(), res.witness.end());
    res.size = res.witness.size();
    return res;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void expand(std::vector<std::uint64_t>& p) {
    if (++nodes_ > budget_.max_nodes) throw BudgetExhausted("max_clique node cap " + std::to_string(budget_.max_nodes));
    std::vector<Vertex> verts;
    std::vector<std::size_t> bound;
    colour_sort(p, verts, bound);
    const std::size_t words = adj_.words();
    std::vector<std::uint64_t> next(words);
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (current_.size() + bound[i] <= std::max(best_.size(), target_ ? target_ - 1 : 0)) return;
      const Vertex v = verts[i];
      current_.push_back(v);
      bool empty = true;
      const std::uint64_t* row = adj_.row(v);
      for (std::size_t w = 0; w < words; ++w) {
        next[w] = p[w] & row[w];
        empty = empty && next[w] == 0;
      }
      if (empty) {
        if (current_.size() > best_.size()) best_ = current_;
        if (target_ && best_.size() >= target_) throw Found{};
      } else {
        expand(next);
      }
      current_.pop_back();
      p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
  }

  // Greedy sequential colouring of p in bit order; verts is sorted by colour
  // class and bound[i] is the colour number of verts[i].
  void colour_sort(const std::vector<std::uint64_t>& p, std::vector<Vertex>& verts, std::vector<std::size_t>& bound) const {
    const std::size_t words = adj_.words();
    std::vector<std::uint64_t> uncoloured = p;
    std::vector<std::uint64_t> q(words);
    std::size_t colour = 0;
    auto any = [&](const std::vector<std::uint64_t>& s) {
      return std::any_of(s.begin(), s.end(), [](std::uint64_t x) { return x != 0; });
    };
    while (any(uncoloured)) {
      ++colour;
      q = uncoloured;
      for (std::size_t w = 0; w < words; ++w) {
        while (q[w]) {
          const auto bit = static_cast<std::size_t>(std::countr_zero(q[w]));
          const auto v = static_cast<Vertex>(w * 64 + bit);
          q[w] &= q[w] - 1;
          uncoloured[w] &= ~(std::uint64_t{1} << bit);
          const std::uint64_t* row = adj_.row(v);
          for (std::size_t k = w; k < words; ++k) q[k] &= ~row[k];
          verts.push_back(v);
          bound.push_back(colour);
        }
      }
    }
  }

  struct Found {};

  AdjacencyBits adj_;
  std::vector<Vertex> order_;
  std::vector<Vertex> best_;
  std::vector<Vertex> current_;
  SearchBudget budget_;
  std::size_t target_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline CliqueResult max_clique(const AdjacencyBits& adj, SearchBudget budget = {}) {
  return detail::CliqueSearch(adj, budget).run();
}

// A clique of at least `target` vertices, or nullopt when none exists.
inline std::optional<CliqueResult> find_clique_at_least(const AdjacencyBits& adj, std::size_t target, SearchBudget budget = {}) {
  if (target == 0) return CliqueResult{};
  auto res = detail::CliqueSearch(adj, budget, target).run();
  if (res.size < target) return std::nullopt;
  return res;
}

inline CliqueResult max_clique(const Graph& g, SearchBudget budget = {}) {
  return max_clique(AdjacencyBits::from_graph(g), budget);
}

inline CliqueResult max_independent_set(const Graph& g, SearchBudget budget = {}) {
  return max_clique(AdjacencyBits::from_graph(g).complemented(), budget);
}

struct ColoringResult {
  std::size_t colors = 0;
  std::vector<std::uint32_t> coloring;  // colour per vertex, in [0, colors)
};

inline bool is_proper_coloring(const Graph& g, const std::vector<std::uint32_t>& coloring) {
  if (coloring.size() != g.order()) return false;
  for (auto [u, v] : g.edges())
    if (coloring[u] == coloring[v]) return false;
  return true;
}

namespace detail {

// DSATUR ordering: most distinct neighbour colours, then highest degree,
// then lowest index.
class Dsatur {
 public:
  explicit Dsatur(const Graph& g) : g_(g) {}

  ColoringResult greedy() const {
    const std::size_t n = g_.order();
    std::vector<std::uint32_t> colour(n, kNone);
    std::vector<std::vector<bool>> seen(n);
    std::vector<std::size_t> sat(n, 0);
    std::size_t used = 0;
    for (std::size_t step = 0; step < n; ++step) {
      Vertex pick = pick_vertex(colour, sat);
      std::uint32_t c = 0;
      while (c < seen[pick].size() && seen[pick][c]) ++c;
      colour[pick] = c;
      used = std::max<std::size_t>(used, c + 1);
      for (Vertex w : g_.neighbors(pick)) {
        if (seen[w].size() <= c) seen[w].resize(c + 1, false);
        if (!seen[w][c]) {
          seen[w][c] = true;
          ++sat[w];
        }
      }
    }
    return {used, colour};
  }

  // Exact test for a proper colouring with at most k colours. The vertices of
  // `clique` are precoloured 0..|clique|-1, which only removes colour
  // symmetry. Returns false when none exists.
  bool colourable(std::size_t k, const std::vector<Vertex>& clique, SearchBudget budget, std::vector<std::uint32_t>& out) {
    const std::size_t n = g_.order();
    if (clique.size() > k) return false;
    colour_.assign(n, kNone);
    counts_.assign(n * k, 0);
    sat_.assign(n, 0);
    k_ = k;
    budget_ = budget;
    nodes_ = 0;
    std::size_t used = 0;
    for (Vertex v : clique) assign(v, static_cast<std::uint32_t>(used++));
    if (!search(n - clique.size(), used)) return false;
    out = colour_;
    return true;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  Vertex pick_vertex(const std::vector<std::uint32_t>& colour, const std::vector<std::size_t>& sat) const {
    Vertex best = 0;
    bool found = false;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (colour[v] != kNone) continue;
      if (!found || sat[v] > sat[best] || (sat[v] == sat[best] && g_.degree(v) > g_.degree(best))) {
        best = v;
        found = true;
      }
    }
    return best;
  }

  void assign(Vertex v, std::uint32_t c) {
    colour_[v] = c;
    for (Vertex w : g_.neighbors(v))
      if (counts_[w * k_ + c]++ == 0) ++sat_[w];
  }

  void unassign(Vertex v) {
    const std::uint32_t c = colour_[v];
    colour_[v] = kNone;
    for (Vertex w : g_.neighbors(v))
      if (--counts_[w * k_ + c] == 0) --sat_[w];
  }

  bool search(std::size_t remaining, std::size_t used) {
    if (remaining == 0) return true;
    if (++nodes_ > budget_.max_nodes)
      throw BudgetExhausted("chromatic_number node cap " + std::to_string(budget_.max_nodes));
    const Vertex v = pick_vertex(colour_, sat_);
    if (sat_[v] >= k_) return false;
    const std::size_t limit = std::min(k_, used + 1);
    for (std::uint32_t c = 0; c < limit; ++c) {
      if (counts_[v * k_ + c] != 0) continue;
      assign(v, c);
      if (search(remaining - 1, std::max<std::size_t>(used, c + 1))) return true;
      unassign(v);
    }
    return false;
  }

  const Graph& g_;
  std::vector<std::uint32_t> colour_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::size_t> sat_;
  std::size_t k_ = 0;
  SearchBudget budget_;
  std::size_t target_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline ColoringResult greedy_coloring(const Graph& g) { return detail::Dsatur(g).greedy(); }

// Exact k-colourability test; returns the colouring when one exists.
inline std::optional<std::vector<std::uint32_t>> find_k_coloring(const Graph& g, std::size_t k, SearchBudget budget = {}) {
  if (g.order() == 0) return std::vector<std::uint32_t>{};
  if (k == 0) return std::nullopt;
  const auto clique = max_clique(g, budget);
  detail::Dsatur solver(g);
  std::vector<std::uint32_t> out;
  if (solver.colourable(k, clique.witness, budget, out)) return out;
  return std::nullopt;
}

// Iterative deepening from the clique lower bound up to the DSATUR upper bound.
inline ColoringResult chromatic_number(const Graph& g, SearchBudget budget = {}) {
  if (g.order() == 0) return {};
  const auto clique = max_clique(g, budget);
  auto upper = greedy_coloring(g);
  detail::Dsatur solver(g);
  for (std::size_t k = clique.size; k < upper.colors; ++k) {
    std::vector<std::uint32_t> out;
    if (solver.colourable(k, clique.witness, budget, out)) return {k, std::move(out)};
  }
  return upper;
}

}  // namespace cayclique
