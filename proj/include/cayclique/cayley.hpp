#pragma once

// Cayley graphs X(G, C) with a ~ b iff a b^{-1} in C, for G = Z_p^n or G = H^n
// with H given by a multiplication table. Graphs stay implicit unless a
// size cap allows materialization; clique numbers go through the
// neighbourhood of the identity.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cayclique/codes.hpp"
#include "cayclique/fplinalg.hpp"
#include "cayclique/graph.hpp"
#include "cayclique/solvers.hpp"

namespace cayclique {

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMaterializeCap = std::uint64_t{1} << 16;

// Finite group by its multiplication table; element 0 is the identity.
class GroupTable {
 public:
  explicit GroupTable(std::vector<std::vector<std::uint32_t>> rows) : order_(rows.size()) {
    if (order_ == 0) throw std::invalid_argument("group table is empty");
    table_.reserve(order_ * order_);
    for (const auto& row : rows) {
      if (row.size() != order_) throw std::invalid_argument("group table is not square");
      for (auto x : row) {
        if (x >= order_) throw std::invalid_argument("group table entry out of range");
        table_.push_back(x);
      }
    }
    for (std::uint32_t a = 0; a < order_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a) throw std::invalid_argument("element 0 is not the identity");
    inverse_.assign(order_, order_);
    for (std::uint32_t a = 0; a < order_; ++a)
      for (std::uint32_t b = 0; b < order_; ++b)
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) throw std::invalid_argument("left and right inverses differ");
          inverse_[a] = b;
          break;
        }
    for (std::uint32_t a = 0; a < order_; ++a)
      if (inverse_[a] == order_) throw std::invalid_argument("element without inverse");
    check_associativity();
  }

  static GroupTable cyclic(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
    return GroupTable(std::move(rows));
  }

  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(order_); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * order_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inverse_.at(a); }

  std::uint32_t element_order(std::uint32_t a) const {
    std::uint32_t k = 1;
    for (std::uint32_t x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  std::uint32_t power(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 0;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  std::vector<std::vector<std::uint32_t>> rows() const {
    std::vector<std::vector<std::uint32_t>> out(order_);
    for (std::size_t a = 0; a < order_; ++a) out[a].assign(table_.begin() + static_cast<std::ptrdiff_t>(a * order_),
                                                           table_.begin() + static_cast<std::ptrdiff_t>((a + 1) * order_));
    return out;
  }

  friend bool operator==(const GroupTable& a, const GroupTable& b) { return a.table_ == b.table_; }

 private:
  // Exhaustive up to order 64; above that 10 N^2 triples from a fixed seed.
  void check_associativity() const {
    auto check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw std::invalid_argument("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                    "," + std::to_string(c) + ")");
    };
    const auto n = static_cast<std::uint32_t>(order_);
    if (n <= 64) {
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::uint32_t c = 0; c < n; ++c) check(a, b, c);
      return;
    }
    std::mt19937_64 rng(0x5eed);
    for (std::uint64_t t = 0; t < 10 * std::uint64_t{n} * n; ++t)
      check(static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n));
  }

  std::size_t order_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

using Element = std::vector<std::uint32_t>;

// Z_p^n (elementary) or H^n for a tabulated H (general), coordinatewise.
class Group {
 public:
  static Group elementary(Coeff p, std::size_t n) {
    if (!is_prime(p)) throw std::invalid_argument("elementary group needs a prime");
    Group g;
    g.p_ = p;
    g.n_ = n;
    g.base_ = p;
    g.init_order();
    return g;
  }

  // `p` is informational (the prime the group was chosen for); `source` is
  // the table file path used when writing spec files.
  static Group power(std::shared_ptr<const GroupTable> table, std::size_t n, Coeff p = 0, std::string source = {}) {
    if (!table) throw std::invalid_argument("power group needs a table");
    Group g;
    g.table_ = std::move(table);
    g.n_ = n;
    g.p_ = p;
    g.base_ = g.table_->order();
    g.source_ = std::move(source);
    g.init_order();
    return g;
  }

  bool is_elementary() const noexcept { return table_ == nullptr; }
  Coeff p() const noexcept { return p_; }
  std::size_t rank() const noexcept { return n_; }
  std::uint64_t base() const noexcept { return base_; }
  const std::shared_ptr<const GroupTable>& table() const noexcept { return table_; }
  const std::string& source() const noexcept { return source_; }

  // |G| when it fits in 64 bits.
  std::optional<std::uint64_t> order() const noexcept { return order_; }

  Element identity() const { return Element(n_, 0); }

  bool contains(const Element& a) const {
    if (a.size() != n_) return false;
    return std::all_of(a.begin(), a.end(), [&](std::uint32_t x) { return x < base_; });
  }

  void check(const Element& a) const {
    if (!contains(a)) throw std::invalid_argument("element does not belong to the group");
  }

  Element mul(const Element& a, const Element& b) const {
    Element r(n_);
    if (is_elementary())
      for (std::size_t i = 0; i < n_; ++i) r[i] = (a[i] + b[i]) % p_;
    else
      for (std::size_t i = 0; i < n_; ++i) r[i] = table_->mul(a[i], b[i]);
    return r;
  }

  Element inv(const Element& a) const {
    Element r(n_);
    if (is_elementary())
      for (std::size_t i = 0; i < n_; ++i) r[i] = (p_ - a[i]) % p_;
    else
      for (std::size_t i = 0; i < n_; ++i) r[i] = table_->inv(a[i]);
    return r;
  }

  // a * b^{-1}
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool is_identity(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t x) { return x == 0; });
  }

  // Mixed-radix index with the first coordinate most significant, so index
  // order is lexicographic order.
  std::uint64_t encode(const Element& a) const {
    require_packable();
    std::uint64_t code = 0;
    for (auto x : a) code = code * base_ + x;
    return code;
  }

  Element decode(std::uint64_t code) const {
    require_packable();
    Element a(n_);
    for (std::size_t i = n_; i-- > 0;) {
      a[i] = static_cast<std::uint32_t>(code % base_);
      code /= base_;
    }
    return a;
  }

  friend bool operator==(const Group& a, const Group& b) {
    if (a.n_ != b.n_ || a.base_ != b.base_ || a.is_elementary() != b.is_elementary()) return false;
    return a.is_elementary() ? a.p_ == b.p_ : *a.table_ == *b.table_;
  }

 private:
  void init_order() {
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (order > (std::uint64_t{1} << 62) / base_) {
        order_.reset();
        return;
      }
      order *= base_;
    }
    order_ = order;
  }

  void require_packable() const {
    if (!order_) throw SizeCapExceeded("group too large for packed indices");
  }

  Coeff p_ = 0;
  std::size_t n_ = 0;
  std::uint64_t base_ = 1;
  std::shared_ptr<const GroupTable> table_;
  std::string source_;
  std::optional<std::uint64_t> order_;
};

// Connection set kept sorted and duplicate-free; identity-free and closed
// under inversion.
class CayleySpec {
 public:
  CayleySpec(Group group, std::vector<Element> connection) : group_(std::move(group)), connection_(std::move(connection)) {
    for (const auto& c : connection_) group_.check(c);
    std::sort(connection_.begin(), connection_.end());
    connection_.erase(std::unique(connection_.begin(), connection_.end()), connection_.end());
    for (const auto& c : connection_) {
      if (group_.is_identity(c)) throw std::invalid_argument("connection set contains the identity");
      if (!contains(group_.inv(c))) throw std::invalid_argument("connection set is not closed under inversion");
    }
  }

  // Adds the inverse of every generator before validating.
  static CayleySpec closed(Group group, std::vector<Element> gens) {
    const auto n = gens.size();
    for (std::size_t i = 0; i < n; ++i) gens.push_back(group.inv(gens[i]));
    return CayleySpec(std::move(group), std::move(gens));
  }

  const Group& group() const noexcept { return group_; }
  const std::vector<Element>& connection() const noexcept { return connection_; }
  std::size_t degree() const noexcept { return connection_.size(); }

  bool contains(const Element& a) const { return std::binary_search(connection_.begin(), connection_.end(), a); }

  std::optional<std::size_t> index_of(const Element& a) const {
    auto it = std::lower_bound(connection_.begin(), connection_.end(), a);
    if (it == connection_.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - connection_.begin());
  }

  bool adjacent(const Element& a, const Element& b) const { return contains(group_.div(a, b)); }

  friend bool operator==(const CayleySpec&, const CayleySpec&) = default;

 private:
  Group group_;
  std::vector<Element> connection_;
};

// {c g : c in C}, in connection-set order.
inline std::vector<Element> neighbor_query(const CayleySpec& spec, const Element& g) {
  spec.group().check(g);
  std::vector<Element> out;
  out.reserve(spec.degree());
  for (const auto& c : spec.connection()) out.push_back(spec.group().mul(c, g));
  return out;
}

// Vertex i is group().decode(i).
inline Graph materialize(const CayleySpec& spec, std::uint64_t cap = kDefaultMaterializeCap) {
  const auto order = spec.group().order();
  if (!order || *order > cap)
    throw SizeCapExceeded("materialize: group order exceeds cap of " + std::to_string(cap));
  Graph g(static_cast<std::size_t>(*order));
  for (std::uint64_t v = 0; v < *order; ++v) {
    const auto a = spec.group().decode(v);
    for (const auto& c : spec.connection()) {
      const auto w = spec.group().encode(spec.group().mul(c, a));
      if (w > v) g.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(w));
    }
  }
  return g;
}

// Graph on the connection set (vertex i is connection()[i]), c ~ c' iff c c'^{-1} in C.
inline Graph neighborhood_of_identity(const CayleySpec& spec) {
  const auto& c = spec.connection();
  Graph g(c.size());
  for (Vertex i = 0; i < c.size(); ++i)
    for (Vertex j = i + 1; j < c.size(); ++j)
      if (spec.adjacent(c[i], c[j])) g.add_edge(i, j);
  return g;
}

struct CayleyClique {
  std::size_t size = 0;
  std::vector<Element> witness;  // contains the identity
};

// omega(X(G,C)) = 1 + omega(neighbourhood of the identity), by vertex transitivity.
inline CayleyClique cayley_clique(const CayleySpec& spec, SearchBudget budget = {}) {
  const auto local = max_clique(neighborhood_of_identity(spec), budget);
  CayleyClique out{local.size + 1, {spec.group().identity()}};
  for (auto v : local.witness) out.witness.push_back(spec.connection()[v]);
  return out;
}

inline std::size_t cayley_clique_number(const CayleySpec& spec, SearchBudget budget = {}) {
  return cayley_clique(spec, budget).size;
}

inline bool is_group_clique(const CayleySpec& spec, const std::vector<Element>& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j] || !spec.adjacent(t[i], t[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Free Cayley graphs Z_p(X) and their quotients by linear codes.

// Trailing coordinates in a basis whose leading block spans the code.
class CodeQuotient {
 public:
  CodeQuotient(LinearCode code, const BasisZpn& basis) : code_(std::move(code)), solver_(basis) {
    if (basis.p != code_.p() || basis.n != code_.n()) throw std::invalid_argument("quotient: basis and code disagree on p or n");
    if (basis.split != code_.k()) throw std::invalid_argument("quotient: basis split differs from code rank");
    std::vector<VecZp> rows = code_.basis();
    for (std::size_t i = 0; i < basis.split; ++i) rows.push_back(basis.vectors[i]);
    if (rank(MatModP::from_rows(code_.p(), rows, code_.n())) != code_.k())
      throw std::invalid_argument("quotient: leading basis block does not span the code");
  }

  // Canonical basis: code generator rows extended by e_1, e_2, ...
  static CodeQuotient canonical(LinearCode code) {
    auto basis = extend_to_basis(code.basis(), code.p(), code.n());
    return CodeQuotient(std::move(code), basis);
  }

  const LinearCode& code() const noexcept { return code_; }
  const BasisZpn& basis() const noexcept { return solver_.basis(); }
  std::size_t ambient() const noexcept { return code_.n(); }
  std::size_t dimension() const noexcept { return code_.n() - code_.k(); }

  VecZp project(const VecZp& alpha) const {
    const auto a = solver_(alpha);
    return VecZp(a.begin() + static_cast<std::ptrdiff_t>(code_.k()), a.end());
  }

 private:
  LinearCode code_;
  CoordinateSolver solver_;
};

// C' = trailing coordinates of C. A code of distance >= 3 keeps 0 out of C';
// the map C -> C' is one-to-one once the code also has no codeword of weight
// 4 or less that is a difference of two elements of C (guaranteed for d >= 5).
inline CayleySpec quotient_connection_set(const CayleySpec& spec, const CodeQuotient& q) {
  const auto& g = spec.group();
  if (!g.is_elementary() || g.p() != q.code().p() || g.rank() != q.ambient())
    throw std::invalid_argument("quotient: spec group does not match the code");
  if (!q.code().distance_at_least(3)) throw std::invalid_argument("quotient: code distance >= 3 is not certified");
  std::vector<Element> image;
  for (const auto& c : spec.connection()) {
    const auto proj = q.project(VecZp(c.begin(), c.end()));
    image.emplace_back(proj.begin(), proj.end());
  }
  return CayleySpec(Group::elementary(g.p(), q.dimension()), image);
}

inline CayleySpec quotient_connection_set(const CayleySpec& spec, const LinearCode& code, const BasisZpn& basis) {
  return quotient_connection_set(spec, CodeQuotient(code, basis));
}

using Arc = std::pair<Vertex, Vertex>;

// Z_p(X), or its quotient by a code, with every connection element labelled
// by the arc it came from: (i, j) stands for g_i - g_j (p >= 3) or for the
// edge {i, j} with i < j (p = 2).
struct FreeCayley {
  Graph x;
  Coeff p = 2;
  CayleySpec spec;
  std::vector<Arc> arcs;                // arcs[i] labels spec.connection()[i]
  std::vector<Element> generators;      // image of e_i
  std::optional<CodeQuotient> quotient;  // absent for Z_p(X) itself
  bool bijective = true;                 // arcs -> connection elements is one-to-one

  const Element& generator(Vertex i) const { return generators.at(i); }

  // Image of g_i - g_j.
  Element difference(Vertex i, Vertex j) const { return spec.group().div(generators.at(i), generators.at(j)); }

  bool distance_at_least(std::size_t d) const { return !quotient || quotient->code().distance_at_least(d); }
};

namespace detail {

inline std::vector<Element> unit_vectors(std::size_t v) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < v; ++i) {
    Element e(v, 0);
    e[i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

inline FreeCayley label_connection(Graph x, Coeff p, Group group, std::vector<Element> gens, std::optional<CodeQuotient> q) {
  std::vector<std::pair<Element, Arc>> labelled;
  for (auto [i, j] : x.edges()) {
    if (p == 2) {
      labelled.emplace_back(group.mul(gens[i], gens[j]), Arc{i, j});
    } else {
      labelled.emplace_back(group.div(gens[i], gens[j]), Arc{i, j});
      labelled.emplace_back(group.div(gens[j], gens[i]), Arc{j, i});
    }
  }
  std::vector<Element> elements;
  for (const auto& l : labelled) elements.push_back(l.first);
  CayleySpec spec(group, elements);
  // When two arcs share an element the first one (in edge order) labels it.
  std::vector<Arc> arcs(spec.degree());
  std::vector<bool> set(spec.degree(), false);
  for (const auto& [element, arc] : labelled) {
    const auto idx = *spec.index_of(element);
    if (!set[idx]) arcs[idx] = arc;
    set[idx] = true;
  }
  const bool bijective = spec.degree() == labelled.size();
  return FreeCayley{std::move(x), p, std::move(spec), std::move(arcs), std::move(gens), std::move(q), bijective};
}

}  // namespace detail

// C = {e_i - e_j : ij an arc} over Z_p^v for odd p, {e_i + e_j : ij an edge} for p = 2.
inline FreeCayley free_cayley(const Graph& x, Coeff p) {
  auto group = Group::elementary(p, x.order());
  return detail::label_connection(x, p, group, detail::unit_vectors(x.order()), std::nullopt);
}

inline CayleySpec free_connection_set(const Graph& x, Coeff p) { return free_cayley(x, p).spec; }

inline FreeCayley quotient(const FreeCayley& free, CodeQuotient q) {
  if (free.quotient) throw std::invalid_argument("quotient: input is already a quotient");
  if (q.code().p() != free.p || q.ambient() != free.x.order()) throw std::invalid_argument("quotient: code does not match graph");
  if (!q.code().distance_at_least(3)) throw std::invalid_argument("quotient: code distance >= 3 is not certified");
  auto group = Group::elementary(free.p, q.dimension());
  std::vector<Element> gens;
  for (const auto& e : detail::unit_vectors(free.x.order())) {
    const auto proj = q.project(VecZp(e.begin(), e.end()));
    gens.emplace_back(proj.begin(), proj.end());
  }
  auto out = detail::label_connection(free.x, free.p, group, std::move(gens), std::move(q));
  if (out.spec != quotient_connection_set(free.spec, *out.quotient)) throw std::logic_error("quotient: labelled and direct C' differ");
  return out;
}

inline FreeCayley quotient(const FreeCayley& free, const LinearCode& code) { return quotient(free, CodeQuotient::canonical(code)); }

// Partition of the materialized Z_p(X) into cosets of the code.
inline Partition coset_partition(const FreeCayley& quotient_graph) {
  if (!quotient_graph.quotient) throw std::invalid_argument("coset_partition: not a quotient");
  const auto& q = *quotient_graph.quotient;
  const auto big = Group::elementary(quotient_graph.p, q.ambient());
  const auto small = Group::elementary(quotient_graph.p, q.dimension());
  const auto order = big.order();
  if (!order || *order > kDefaultMaterializeCap) throw SizeCapExceeded("coset_partition: ambient group too large");
  std::vector<std::uint64_t> labels(*order);
  for (std::uint64_t v = 0; v < *order; ++v) {
    const auto a = big.decode(v);
    const auto proj = q.project(VecZp(a.begin(), a.end()));
    labels[v] = small.encode(Element(proj.begin(), proj.end()));
  }
  return Partition::from_labels(labels);
}

// ---------------------------------------------------------------------------
// Sum distinctness of the canonical generators e_1..e_v of Z_p^v.

struct SumViolation {
  std::string kind;
  std::vector<std::size_t> lhs;
  std::vector<std::size_t> rhs;
};

struct SumReport {
  bool sidon = true;                  // g_i - g_j != g_k - g_l when |{i,j,k,l}| >= 3
  bool sums = true;                   // the p-specific 2-/3-sum statement
  std::size_t permitted_collisions = 0;
  std::vector<SumViolation> violations;
  bool ok() const noexcept { return sidon && sums; }
};

// Checks arbitrary generators; the statement tested depends on p:
//   p >= 5: all 3-sums (summands may repeat) distinct as multisets;
//   p == 3: equal 3-sums have equal multisets or are both of the form 3 g_i;
//   p == 2: 2-sums of distinct summands distinct, and 3-sums with 1 or 3
//           distinct summands distinct.
inline SumReport check_sum_distinctness(const std::vector<VecZp>& gens, Coeff p) {
  SumReport report;
  const std::size_t v = gens.size();
  const std::size_t n = v ? gens.front().size() : 0;
  auto combine = [&](std::initializer_list<std::pair<std::size_t, int>> terms) {
    VecZp s(n, 0);
    for (auto [i, sign] : terms)
      for (std::size_t c = 0; c < n; ++c) s[c] = static_cast<Coeff>((s[c] + (sign > 0 ? gens[i][c] : p - gens[i][c])) % p);
    return s;
  };
  std::map<VecZp, std::vector<std::size_t>> seen;

  std::map<VecZp, std::vector<std::pair<std::size_t, std::size_t>>> diffs;
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) diffs[combine({{i, 1}, {j, -1}})].emplace_back(i, j);
  for (const auto& [value, pairs] : diffs)
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        std::set<std::size_t> idx{pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second};
        if (idx.size() >= 3) {
          report.sidon = false;
          report.violations.push_back({"sidon", {pairs[a].first, pairs[a].second}, {pairs[b].first, pairs[b].second}});
        }
      }

  auto record = [&](const char* kind, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, bool permitted) {
    if (permitted) {
      ++report.permitted_collisions;
    } else {
      report.sums = false;
      report.violations.push_back({kind, a, b});
    }
  };

  if (p == 2) {
    std::map<VecZp, std::vector<std::size_t>> two;
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = i; j < v; ++j) {
        const auto s = combine({{i, 1}, {j, 1}});
        auto it = two.find(s);
        std::vector<std::size_t> cur{i, j};
        if (it != two.end()) record("2-sum", it->second, cur, i == j || it->second[0] == it->second[1]);
        else two.emplace(s, cur);
      }
  }

  std::map<VecZp, std::vector<std::size_t>> three;
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i; j < v; ++j)
      for (std::size_t k = j; k < v; ++k) {
        std::vector<std::size_t> cur{i, j, k};
        const std::size_t distinct = std::set<std::size_t>(cur.begin(), cur.end()).size();
        if (p == 2 && distinct == 2) continue;
        const auto s = combine({{i, 1}, {j, 1}, {k, 1}});
        auto it = three.find(s);
        if (it == three.end()) {
          three.emplace(s, cur);
          continue;
        }
        const auto& prev = it->second;
        const bool both_singletons = distinct == 1 && prev[0] == prev[2];
        record("3-sum", prev, cur, p == 3 && both_singletons);
      }
  return report;
}

inline SumReport check_sum_distinctness(std::size_t v, Coeff p) {
  std::vector<VecZp> gens;
  for (const auto& e : detail::unit_vectors(v)) gens.emplace_back(e.begin(), e.end());
  return check_sum_distinctness(gens, p);
}

inline SumReport check_sum_distinctness(const Graph& x, Coeff p) { return check_sum_distinctness(x.order(), p); }

// ---------------------------------------------------------------------------
// Induced copy of X on the images of e_1..e_v.

struct InducedCopyResult {
  bool ok = true;
  bool distance_precondition = true;  // d >= 5 certified (or trivial code)
  std::vector<Element> embedding;      // vertex i -> image of e_i
  std::optional<std::pair<Vertex, Vertex>> witness;
  std::string reason;
};

inline InducedCopyResult verify_induced_copy(const FreeCayley& fc) {
  if (fc.quotient) {
    const auto& code = fc.quotient->code();
    if (code.k() > 0 && !code.distance_cert() && !code.provenance().designed_distance)
      throw std::invalid_argument("verify_induced_copy: code distance is not certified");
  }
  InducedCopyResult r;
  r.distance_precondition = fc.distance_at_least(5);
  r.embedding = fc.generators;
  const auto v = static_cast<Vertex>(fc.x.order());
  for (Vertex i = 0; i < v; ++i)
    for (Vertex j = i + 1; j < v; ++j) {
      if (fc.generators[i] == fc.generators[j]) return {false, r.distance_precondition, r.embedding, std::pair{i, j}, "images coincide"};
      if (fc.spec.adjacent(fc.generators[i], fc.generators[j]) != fc.x.adjacent(i, j))
        return {false, r.distance_precondition, r.embedding, std::pair{i, j},
                fc.x.adjacent(i, j) ? "edge not preserved" : "non-edge becomes an edge"};
    }
  return r;
}

// ---------------------------------------------------------------------------
// Clique transfer between X and Z_p(X) (or its quotient).

enum class TransferDirection { up, down };

struct TransferCert {
  TransferDirection direction = TransferDirection::up;
  std::vector<Vertex> graph_clique;   // clique in X, sorted
  std::vector<Element> group_clique;  // clique in the Cayley graph, contains the identity
  std::optional<Vertex> anchor;
};

// T = {g_j - g_i : j in s} for the lowest vertex i of s. For p = 2 a triangle
// {a, b, c} maps to the 4-clique {0, g_a+g_b, g_a+g_c, g_b+g_c}.
inline TransferCert clique_up(const std::vector<Vertex>& s_in, const FreeCayley& fc) {
  std::vector<Vertex> s = s_in;
  std::sort(s.begin(), s.end());
  if (s.empty()) throw std::invalid_argument("clique_up: empty clique");
  if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= fc.x.order() || !fc.x.is_clique(s))
    throw std::invalid_argument("clique_up: not a clique of X");
  if (!fc.distance_at_least(7)) throw std::invalid_argument("clique_up: quotient code distance >= 7 is not certified");
  TransferCert cert{TransferDirection::up, s, {}, s.front()};
  for (Vertex j : s) cert.group_clique.push_back(fc.difference(j, s.front()));
  if (fc.p == 2 && s.size() == 3) cert.group_clique.push_back(fc.spec.group().mul(fc.generator(s[1]), fc.generator(s[2])));
  if (!is_group_clique(fc.spec, cert.group_clique)) throw std::logic_error("clique_up: image is not a clique");
  return cert;
}

enum class DownStatus { ok, caveat };

struct DownResult {
  DownStatus status = DownStatus::ok;
  TransferCert cert;
  std::string note;
};

// Recovers a clique of X of size |t| from a clique t of the Cayley graph.
// Translates t so that it contains the identity. In the regimes where the
// arc labels need not share an anchor (p = 2 with |t| <= 4, p = 3 with
// |t| <= 3) a failed recovery is reported as a caveat for the caller to settle
// by exhaustive search.
inline DownResult clique_down(std::vector<Element> t, const FreeCayley& fc) {
  const auto& group = fc.spec.group();
  if (t.empty()) throw std::invalid_argument("clique_down: empty clique");
  for (const auto& a : t) group.check(a);
  if (!is_group_clique(fc.spec, t)) throw std::invalid_argument("clique_down: not a clique of the Cayley graph");
  if (!fc.distance_at_least(7)) throw std::invalid_argument("clique_down: quotient code distance >= 7 is not certified");
  if (std::none_of(t.begin(), t.end(), [&](const Element& a) { return group.is_identity(a); })) {
    const auto shift = t.front();
    for (auto& a : t) a = group.div(a, shift);
  }
  DownResult result;
  result.cert.direction = TransferDirection::down;
  result.cert.group_clique = t;
  std::vector<Arc> arcs;
  for (const auto& a : t)
    if (!group.is_identity(a)) arcs.push_back(fc.arcs[*fc.spec.index_of(a)]);
  if (arcs.empty()) {
    result.cert.graph_clique = {0};
    return result;
  }
  std::optional<Vertex> anchor;
  for (Vertex cand : {arcs[0].first, arcs[0].second}) {
    if (std::all_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.first == cand || a.second == cand; })) {
      std::set<Vertex> s{cand};
      for (const auto& a : arcs) s.insert(a.first == cand ? a.second : a.first);
      std::vector<Vertex> sv(s.begin(), s.end());
      if (sv.size() == t.size() && fc.x.is_clique(sv)) {
        anchor = cand;
        result.cert.graph_clique = sv;
        break;
      }
    }
  }
  if (anchor) {
    result.cert.anchor = anchor;
    return result;
  }
  const bool caveat_regime = (fc.p == 2 && t.size() <= 4) || (fc.p == 3 && t.size() <= 3);
  if (!caveat_regime) throw std::logic_error("clique_down: no common anchor outside the caveat regime");
  result.status = DownStatus::caveat;
  result.note = fc.p == 2 ? "p=2 clique of size <= 4 without common anchor" : "p=3 clique of size <= 3 without common anchor";
  return result;
}

// ---------------------------------------------------------------------------
// Structure of the neighbourhood of the identity relative to T(X).

struct CoverReport {
  bool ok = false;
  std::string kind;  // "isomorphism", "2-fold cover", "2-fold cover after matching removal"
  CoverResult cover;
  bool matching_ok = true;  // p = 3: {c, -c} pairs are edges forming a perfect matching
};

inline CoverReport cover_structure(const Graph& x, Coeff p) {
  const auto fc = free_cayley(x, p);
  auto nbhd = neighborhood_of_identity(fc.spec);
  const auto t = triangle_graph(x);
  const auto edges = x.edges();
  std::vector<Vertex> image(fc.arcs.size());
  for (std::size_t i = 0; i < fc.arcs.size(); ++i) {
    auto [a, b] = fc.arcs[i];
    const Edge e{std::min(a, b), std::max(a, b)};
    image[i] = static_cast<Vertex>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  }
  const VertexMap h(t.order(), image);
  CoverReport report;
  if (p == 2) {
    report.kind = "isomorphism";
    report.cover = is_r_fold_cover(h, nbhd, t, 1);
  } else {
    if (p == 3) {
      report.kind = "2-fold cover after matching removal";
      Graph pruned(nbhd.order());
      std::vector<bool> matched(nbhd.order(), false);
      for (Vertex i = 0; i < nbhd.order(); ++i) {
        const auto j = static_cast<Vertex>(*fc.spec.index_of(fc.spec.group().inv(fc.spec.connection()[i])));
        if (i == j || !nbhd.adjacent(i, j)) report.matching_ok = false;
        matched[i] = true;
      }
      for (auto [a, b] : nbhd.edges()) {
        const bool in_matching = fc.spec.group().is_identity(fc.spec.group().mul(fc.spec.connection()[a], fc.spec.connection()[b]));
        if (!in_matching) pruned.add_edge(a, b);
      }
      report.matching_ok = report.matching_ok && std::all_of(matched.begin(), matched.end(), [](bool m) { return m; });
      nbhd = std::move(pruned);
    } else {
      report.kind = "2-fold cover";
    }
    report.cover = is_r_fold_cover(h, nbhd, t, 2);
  }
  report.ok = report.cover.ok && report.matching_ok;
  return report;
}

// ---------------------------------------------------------------------------
// Lifting a connection set over Z_p^m into G^m along an element of order p.

inline std::uint32_t cauchy_element(const GroupTable& g, Coeff p) {
  if (p == 0 || g.order() % p != 0) throw std::invalid_argument("cauchy_element: p does not divide |G|");
  for (std::uint32_t a = 1; a < g.order(); ++a)
    if (g.element_order(a) == p) return a;
  throw std::logic_error("cauchy_element: no element of order p");  // impossible by Cauchy's theorem
}

inline CayleySpec lift_connection_set(const CayleySpec& spec, std::shared_ptr<const GroupTable> g, std::uint32_t h,
                                      std::string source = {}) {
  const auto& base = spec.group();
  if (!base.is_elementary()) throw std::invalid_argument("lift: input must be over Z_p^m");
  if (h >= g->order() || g->element_order(h) != base.p()) throw std::invalid_argument("lift: h does not have order p");
  std::vector<std::uint32_t> powers(base.p());
  for (Coeff e = 0; e < base.p(); ++e) powers[e] = g->power(h, e);
  auto group = Group::power(g, base.rank(), base.p(), std::move(source));
  std::vector<Element> lifted;
  for (const auto& c : spec.connection()) {
    Element e(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) e[i] = powers[c[i]];
    lifted.push_back(std::move(e));
  }
  return CayleySpec(std::move(group), std::move(lifted));
}

struct LiftReport {
  std::size_t blocks = 0;               // right cosets H^m r of the lifted vertex set
  std::size_t expected_blocks = 0;      // (|G| / p)^m
  std::size_t components = 0;           // connected components of the lifted graph
  std::size_t input_components = 0;
  bool blocks_isomorphic = true;        // a -> phi(a) r is an isomorphism onto each block
  bool no_cross_edges = true;
  std::size_t omega_input = 0;
  std::size_t omega_lifted = 0;
  bool ok() const noexcept {
    return blocks == expected_blocks && components == blocks * input_components && blocks_isomorphic && no_cross_edges &&
           omega_input == omega_lifted;
  }
};

inline std::size_t count_components(const Graph& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t count = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<Vertex> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return count;
}

inline LiftReport verify_lift(const CayleySpec& input, const CayleySpec& lifted, std::uint32_t h, SearchBudget budget = {}) {
  const auto& small = input.group();
  const auto& big = lifted.group();
  const auto& table = *big.table();
  const auto x = materialize(input);
  const auto y = materialize(lifted);
  LiftReport report;
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < small.rank(); ++i) expected *= table.order() / small.p();
  report.expected_blocks = static_cast<std::size_t>(expected);

  std::vector<std::uint32_t> powers(small.p());
  for (Coeff e = 0; e < small.p(); ++e) powers[e] = table.power(h, e);
  auto phi = [&](const Element& a) {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = powers[a[i]];
    return out;
  };

  std::vector<std::int64_t> block(y.order(), -1);
  for (Vertex start = 0; start < y.order(); ++start) {
    if (block[start] >= 0) continue;
    const auto id = static_cast<std::int64_t>(report.blocks++);
    const auto rep = big.decode(start);
    std::vector<Vertex> image(x.order());
    for (Vertex a = 0; a < x.order(); ++a) {
      image[a] = static_cast<Vertex>(big.encode(big.mul(phi(small.decode(a)), rep)));
      if (block[image[a]] >= 0) report.blocks_isomorphic = false;  // cosets overlap: phi is not injective
      block[image[a]] = id;
    }
    for (Vertex a = 0; report.blocks_isomorphic && a < x.order(); ++a)
      for (Vertex b = a + 1; b < x.order(); ++b)
        if (x.adjacent(a, b) != y.adjacent(image[a], image[b])) {
          report.blocks_isomorphic = false;
          break;
        }
  }
  for (auto [u, w] : y.edges())
    if (block[u] != block[w]) report.no_cross_edges = false;
  report.components = count_components(y);
  report.input_components = count_components(x);
  report.omega_input = max_clique(x, budget).size;
  report.omega_lifted = max_clique(y, budget).size;
  return report;
}

}  // namespace cayclique
