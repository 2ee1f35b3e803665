#pragma once

// Simple undirected graphs on vertices 0..order-1, plus the structural
// combinators used by the reductions: products, complements, quotients by
// vertex partitions, triangle graphs and covering-map checks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cayclique {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // always stored with first < second

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t order) : adj_(order) {}

  static Graph from_edges(std::size_t order, std::span<const Edge> edges) {
    Graph g(order);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }

  static Graph cycle(std::size_t n) {
    Graph g(n);
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    for (Vertex u = 0; u < n; ++u) g.add_edge(u, static_cast<Vertex>((u + 1) % n));
    return g;
  }

  static Graph path(std::size_t n) {
    Graph g(n);
    for (Vertex u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
  }

  static Graph petersen() {
    Graph g(10);
    for (Vertex i = 0; i < 5; ++i) {
      g.add_edge(i, (i + 1) % 5);
      g.add_edge(i, i + 5);
      g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return g;
  }

  // Adds {u,v}; repeated insertions are ignored. Loops and out-of-range
  // endpoints are rejected.
  void add_edge(Vertex u, Vertex v) {
    if (u >= order() || v >= order())
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (insert_sorted(adj_[u], v)) {
      insert_sorted(adj_[v], u);
      ++edges_;
    }
  }

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& row = adj_.at(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }

  // Edges sorted lexicographically, each as (smaller, larger).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool is_clique(std::span<const Vertex> s) const {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (s[a] == s[b] || !adjacent(s[a], s[b])) return false;
    return true;
  }

  bool is_coclique(std::span<const Vertex> s) const {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (s[a] == s[b] || adjacent(s[a], s[b])) return false;
    return true;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  static bool insert_sorted(std::vector<Vertex>& row, Vertex v) {
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it != row.end() && *it == v) return false;
    row.insert(it, v);
    return true;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

// A partition of 0..order-1 into non-empty, pairwise disjoint cells.
class Partition {
 public:
  Partition(std::size_t order, std::vector<std::vector<Vertex>> cells)
      : cells_(std::move(cells)), cell_of_(order, kUnassigned) {
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      if (cells_[c].empty()) throw std::invalid_argument("partition has an empty cell");
      for (Vertex v : cells_[c]) {
        if (v >= order) throw std::invalid_argument("partition vertex out of range");
        if (cell_of_[v] != kUnassigned)
          throw std::invalid_argument("partition cells overlap at vertex " + std::to_string(v));
        cell_of_[v] = static_cast<std::uint32_t>(c);
      }
    }
    for (Vertex v = 0; v < order; ++v)
      if (cell_of_[v] == kUnassigned)
        throw std::invalid_argument("partition does not cover vertex " + std::to_string(v));
  }

  static Partition singletons(std::size_t order) {
    std::vector<std::vector<Vertex>> cells(order);
    for (Vertex v = 0; v < order; ++v) cells[v] = {v};
    return Partition(order, std::move(cells));
  }

  // Cells from a labelling: vertices with equal labels share a cell; cells are
  // ordered by first occurrence.
  static Partition from_labels(std::span<const std::uint64_t> labels) {
    std::vector<std::vector<Vertex>> cells;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> seen;
    for (Vertex v = 0; v < labels.size(); ++v) {
      auto it = std::find_if(seen.begin(), seen.end(),
                             [&](const auto& s) { return s.first == labels[v]; });
      if (it == seen.end()) {
        seen.emplace_back(labels[v], static_cast<std::uint32_t>(cells.size()));
        cells.push_back({v});
      } else {
        cells[it->second].push_back(v);
      }
    }
    return Partition(labels.size(), std::move(cells));
  }

  std::size_t order() const noexcept { return cell_of_.size(); }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<Vertex>& cell(std::size_t c) const { return cells_.at(c); }
  std::uint32_t cell_of(Vertex v) const { return cell_of_.at(v); }

 private:
  static constexpr std::uint32_t kUnassigned = 0xffffffffu;
  std::vector<std::vector<Vertex>> cells_;
  std::vector<std::uint32_t> cell_of_;
};

// A total map from source vertices into 0..target_order-1.
class VertexMap {
 public:
  VertexMap(std::size_t target_order, std::vector<Vertex> image)
      : target_order_(target_order), image_(std::move(image)) {
    for (Vertex t : image_)
      if (t >= target_order_) throw std::invalid_argument("vertex map image out of range");
  }

  std::size_t source_order() const noexcept { return image_.size(); }
  std::size_t target_order() const noexcept { return target_order_; }
  Vertex operator()(Vertex v) const { return image_.at(v); }
  const std::vector<Vertex>& image() const noexcept { return image_; }

 private:
  std::size_t target_order_;
  std::vector<Vertex> image_;
};

inline Graph complement(const Graph& g) {
  Graph out(g.order());
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

// Vertex (a, x) of g □ h is numbered a * h.order() + x.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t n = h.order();
  Graph out(g.order() * n);
  for (Vertex a = 0; a < g.order(); ++a) {
    for (auto [x, y] : h.edges())
      out.add_edge(static_cast<Vertex>(a * n + x), static_cast<Vertex>(a * n + y));
  }
  for (auto [a, b] : g.edges())
    for (Vertex x = 0; x < n; ++x)
      out.add_edge(static_cast<Vertex>(a * n + x), static_cast<Vertex>(b * n + x));
  return out;
}

// Vertex i of the result is s[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  for (Vertex v : s)
    if (v >= g.order()) throw std::out_of_range("induced_subgraph: vertex out of range");
  Graph out(s.size());
  for (Vertex a = 0; a < s.size(); ++a)
    for (Vertex b = a + 1; b < s.size(); ++b) {
      if (s[a] == s[b]) throw std::invalid_argument("induced_subgraph: repeated vertex");
      if (g.adjacent(s[a], s[b])) out.add_edge(a, b);
    }
  return out;
}

// Vertices are the edges of g in the order of g.edges(); two are adjacent
// when the two edges lie in a common triangle.
inline Graph triangle_graph(const Graph& g) {
  const auto es = g.edges();
  Graph out(es.size());
  auto index_of = [&](Vertex a, Vertex b) -> Vertex {
    Edge e = a < b ? Edge{a, b} : Edge{b, a};
    return static_cast<Vertex>(std::lower_bound(es.begin(), es.end(), e) - es.begin());
  };
  for (auto [u, v] : es) {
    // common neighbours w of u and v close the triangle uvw
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    std::vector<Vertex> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    const Vertex uv = index_of(u, v);
    for (Vertex w : common) {
      const Vertex uw = index_of(u, w);
      const Vertex vw = index_of(v, w);
      out.add_edge(uv, uw);
      out.add_edge(uv, vw);
      out.add_edge(uw, vw);
    }
  }
  return out;
}

inline Graph line_graph(const Graph& g) {
  const auto es = g.edges();
  Graph out(es.size());
  for (Vertex a = 0; a < es.size(); ++a)
    for (Vertex b = a + 1; b < es.size(); ++b) {
      auto [u, v] = es[a];
      auto [x, y] = es[b];
      if (u == x || u == y || v == x || v == y) out.add_edge(a, b);
    }
  return out;
}

// Simplified quotient: one vertex per cell, loops dropped, multi-edges merged.
inline Graph quotient_by_partition(const Graph& g, const Partition& pi) {
  if (pi.order() != g.order()) throw std::invalid_argument("partition order does not match graph");
  Graph out(pi.size());
  for (auto [u, v] : g.edges()) {
    const auto cu = pi.cell_of(u);
    const auto cv = pi.cell_of(v);
    if (cu != cv) out.add_edge(cu, cv);
  }
  return out;
}

struct EquitableResult {
  bool equitable = true;
  // On failure: two vertices of cell `from` with different neighbour counts
  // in cell `to`.
  std::optional<std::pair<Vertex, Vertex>> witness;
  std::size_t from = 0;
  std::size_t to = 0;
};

inline EquitableResult is_equitable(const Graph& g, const Partition& pi) {
  if (pi.order() != g.order()) throw std::invalid_argument("partition order does not match graph");
  std::vector<std::size_t> counts(pi.size());
  std::vector<std::size_t> reference(pi.size());
  for (std::size_t c = 0; c < pi.size(); ++c) {
    const auto& cell = pi.cell(c);
    for (std::size_t idx = 0; idx < cell.size(); ++idx) {
      std::fill(counts.begin(), counts.end(), 0);
      for (Vertex w : g.neighbors(cell[idx])) ++counts[pi.cell_of(w)];
      if (idx == 0) {
        reference = counts;
        continue;
      }
      for (std::size_t d = 0; d < pi.size(); ++d)
        if (counts[d] != reference[d]) return {false, std::pair{cell[0], cell[idx]}, c, d};
    }
  }
  return {};
}

enum class CoverFailure { none, size_mismatch, not_homomorphism, not_surjective, fibre_size, not_local_bijection };

inline const char* to_string(CoverFailure f) {
  switch (f) {
    case CoverFailure::none: return "none";
    case CoverFailure::size_mismatch: return "size_mismatch";
    case CoverFailure::not_homomorphism: return "not_homomorphism";
    case CoverFailure::not_surjective: return "not_surjective";
    case CoverFailure::fibre_size: return "fibre_size";
    case CoverFailure::not_local_bijection: return "not_local_bijection";
  }
  return "unknown";
}

struct CoverResult {
  bool ok = true;
  CoverFailure failure = CoverFailure::none;
  Vertex witness = 0;  // offending source vertex (or target vertex for fibre failures)
  explicit operator bool() const noexcept { return ok; }
};

// True iff h is a surjective homomorphism x -> y, every fibre has exactly r
// vertices, and h maps the neighbourhood of every vertex bijectively onto the
// neighbourhood of its image.
inline CoverResult is_r_fold_cover(const VertexMap& h, const Graph& x, const Graph& y, std::size_t r) {
  if (h.source_order() != x.order() || h.target_order() != y.order())
    return {false, CoverFailure::size_mismatch, 0};
  for (auto [a, b] : x.edges())
    if (!y.adjacent(h(a), h(b))) return {false, CoverFailure::not_homomorphism, a};
  std::vector<std::size_t> fibre(y.order(), 0);
  for (Vertex a = 0; a < x.order(); ++a) ++fibre[h(a)];
  for (Vertex t = 0; t < y.order(); ++t)
    if (fibre[t] == 0) return {false, CoverFailure::not_surjective, t};
  for (Vertex t = 0; t < y.order(); ++t)
    if (fibre[t] != r) return {false, CoverFailure::fibre_size, t};
  for (Vertex a = 0; a < x.order(); ++a) {
    std::vector<Vertex> images;
    for (Vertex b : x.neighbors(a)) images.push_back(h(b));
    std::sort(images.begin(), images.end());
    auto expected = y.neighbors(h(a));
    if (!std::equal(images.begin(), images.end(), expected.begin(), expected.end()))
      return {false, CoverFailure::not_local_bijection, a};
  }
  return {};
}

}  // namespace cayclique
