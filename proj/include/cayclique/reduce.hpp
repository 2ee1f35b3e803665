#pragma once

// Pipelines on top of the Cayley machinery: the clique-number reduction to a
// quotient of Z_p(X), recovery of omega(X) from the quotient, the chromatic
// gadget and its approximation driver, and the cubelike embedding.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayclique/cayley.hpp"
#include "cayclique/codes.hpp"
#include "cayclique/gf.hpp"
#include "cayclique/graph.hpp"
#include "cayclique/solvers.hpp"

namespace cayclique {

// Raised when v < p^2; such instances are meant to be solved directly.
class SmallInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest m with p^m <= v^2. For v >= p^2 this is also the largest m in
// (log_p v, 2 log_p v], so v <= p^m - 1.
inline unsigned choose_m(std::size_t v, Coeff p) {
  if (!is_prime(p)) throw std::invalid_argument("choose_m: p is not prime");
  if (v < std::size_t{p} * p) throw SmallInstance("choose_m: v = " + std::to_string(v) + " is below p^2");
  const std::uint64_t v2 = std::uint64_t{v} * v;
  unsigned m = 0;
  for (std::uint64_t q = p; q <= v2; q *= p) ++m;
  return m;
}

enum class CaveatPath { none, p2_check34, p3_check23 };

inline const char* to_string(CaveatPath c) {
  switch (c) {
    case CaveatPath::none: return "none";
    case CaveatPath::p2_check34: return "p2_check34";
    case CaveatPath::p3_check23: return "p3_check23";
  }
  return "?";
}

struct Recovery {
  std::size_t omega = 0;
  CaveatPath path = CaveatPath::none;
};

namespace detail {

// Exhaustive search for a k-subset of V(x) that is a clique.
inline bool has_clique_of_size(const Graph& x, std::size_t k) {
  if (k > x.order()) return false;
  std::vector<Vertex> pick;
  std::function<bool(Vertex)> extend = [&](Vertex from) {
    if (pick.size() == k) return true;
    for (Vertex v = from; v < x.order(); ++v) {
      if (!std::all_of(pick.begin(), pick.end(), [&](Vertex u) { return x.adjacent(u, v); })) continue;
      pick.push_back(v);
      if (extend(v + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return extend(0);
}

}  // namespace detail

// omega(X) from the clique number of a d >= 7 (or trivial code) quotient.
inline Recovery recover_omega(std::size_t omega_q, Coeff p, const Graph& x) {
  if (p == 2 && omega_q == 4)
    return {detail::has_clique_of_size(x, 4) ? 4u : 3u, CaveatPath::p2_check34};
  if (p == 3 && omega_q == 3)
    return {detail::has_clique_of_size(x, 3) ? 3u : 2u, CaveatPath::p3_check23};
  return {omega_q, CaveatPath::none};
}

// ---------------------------------------------------------------------------
// Clique reduction.

struct ReductionReport {
  std::size_t v = 0;
  std::size_t edges = 0;
  Coeff p = 2;
  unsigned m = 0;
  PolyZp modulus;
  std::string alpha;                 // primitive element, as a polynomial in x
  std::vector<std::size_t> L_powers;  // L = {alpha^e : e in L_powers}
  std::optional<LinearCode> code;
  std::optional<FreeCayley> quotient;
  std::size_t connection_size = 0;           // |C|
  std::size_t quotient_connection_size = 0;  // |C'|
  bool small_instance = false;               // free spec, trivial code
  std::optional<std::size_t> omega_quotient;
  std::optional<std::size_t> omega_input;
  CaveatPath caveat_path = CaveatPath::none;
  double elapsed_ms = 0;

  std::size_t quotient_exponent() const { return v - (code ? code->k() : 0); }  // |G/D| = p^(v-k)
  // p^(v-k) <= v^12 follows from v - k <= 6m, since p^m <= v^2.
  bool size_bound_holds() const { return small_instance || quotient_exponent() <= 6 * std::size_t{m}; }
};

inline ReductionReport reduce_clique(const Graph& x, Coeff p, bool solve = true, SearchBudget budget = {}) {
  const auto start = std::chrono::steady_clock::now();
  ReductionReport r;
  r.v = x.order();
  r.edges = x.edge_count();
  r.p = p;
  r.m = choose_m(r.v, p);
  const auto ctx = FieldContext::standard(p, r.m);
  const auto alpha = find_primitive(ctx);
  r.modulus = ctx.modulus();
  r.alpha = ctx.to_string(alpha);
  std::vector<FieldElement> support;
  auto power = alpha;
  for (std::size_t e = 1; e <= r.v; ++e) {
    support.push_back(power);
    r.L_powers.push_back(e);
    power = ctx.mul(power, alpha);
  }
  auto code = goppa(GoppaInputs{ctx, monomial(ctx, 6), support});
  try_certify(code, std::uint64_t{1} << 20);
  const auto fc = quotient(free_cayley(x, p), code);
  r.connection_size = p == 2 ? r.edges : 2 * r.edges;
  r.quotient_connection_size = fc.spec.degree();
  r.code = std::move(code);
  r.quotient = fc;
  if (solve) {
    r.omega_quotient = cayley_clique_number(fc.spec, budget);
    const auto rec = recover_omega(*r.omega_quotient, p, x);
    r.omega_input = rec.omega;
    r.caveat_path = rec.path;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Z_p(X) with the trivial code, for instances below p^2.
inline ReductionReport reduce_small(const Graph& x, Coeff p, bool solve = true, SearchBudget budget = {}) {
  const auto start = std::chrono::steady_clock::now();
  ReductionReport r;
  r.v = x.order();
  r.edges = x.edge_count();
  r.p = p;
  r.small_instance = true;
  r.code = LinearCode::trivial(p, r.v);
  r.code->set_distance_cert(DistanceCert{std::nullopt, "trivial"});
  r.quotient = free_cayley(x, p);
  r.connection_size = p == 2 ? r.edges : 2 * r.edges;
  r.quotient_connection_size = r.quotient->spec.degree();
  if (solve) {
    r.omega_quotient = cayley_clique_number(r.quotient->spec, budget);
    const auto rec = recover_omega(*r.omega_quotient, p, x);
    r.omega_input = rec.omega;
    r.caveat_path = rec.path;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// key=value lines in a fixed order. Timings are left out when deterministic.
inline void write_report(std::ostream& out, const ReductionReport& r, bool deterministic = true) {
  out << "v=" << r.v << '\n';
  out << "edges=" << r.edges << '\n';
  out << "p=" << r.p << '\n';
  out << "small_instance=" << (r.small_instance ? "true" : "false") << '\n';
  if (!r.small_instance) {
    out << "m=" << r.m << '\n';
    out << "modulus=" << poly::to_string(r.modulus) << '\n';
    out << "alpha=" << r.alpha << '\n';
    out << "L=alpha^" << (r.L_powers.empty() ? 0 : r.L_powers.front()) << "..alpha^" << (r.L_powers.empty() ? 0 : r.L_powers.back())
        << '\n';
    out << "goppa_g=x^6\n";
  }
  if (r.code) {
    out << "code_n=" << r.code->n() << '\n';
    out << "code_k=" << r.code->k() << '\n';
    if (r.code->distance_cert())
      out << "code_d=" << r.code->distance_cert()->to_string() << '\n';
    else
      out << "code_d_designed=" << r.code->provenance().designed_distance.value_or(0) << '\n';
    out << "code_provenance=" << r.code->provenance().to_string() << '\n';
  }
  out << "quotient_rank=" << r.quotient_exponent() << '\n';
  out << "quotient_order=" << r.p << '^' << r.quotient_exponent() << '\n';
  out << "bound=v^12\n";
  out << "bound_holds=" << (r.size_bound_holds() ? "true" : "false") << '\n';
  out << "|C|=" << r.connection_size << '\n';
  out << "|C'|=" << r.quotient_connection_size << '\n';
  out << "bijection=" << (r.connection_size == r.quotient_connection_size ? "true" : "false") << '\n';
  if (r.omega_quotient) out << "omega_quotient=" << *r.omega_quotient << '\n';
  if (r.omega_input) out << "omega_input=" << *r.omega_input << '\n';
  out << "caveat_path=" << to_string(r.caveat_path) << '\n';
  if (!deterministic) out << "elapsed_ms=" << r.elapsed_ms << '\n';
}

inline std::string to_text(const ReductionReport& r, bool deterministic = true) {
  std::ostringstream out;
  write_report(out, r, deterministic);
  return out.str();
}

// ---------------------------------------------------------------------------
// Chromatic gadget.

struct GadgetSpec {
  CayleySpec base;
  std::size_t level = 0;
  CayleySpec spec;  // over Z_p^(level + n), the level coordinates first
};

namespace detail {

inline void for_each_vector(Coeff p, std::size_t n, const std::function<void(const Element&)>& f) {
  Element a(n, 0);
  while (true) {
    f(a);
    std::size_t i = n;
    while (i > 0 && ++a[i - 1] == p) a[--i] = 0;
    if (i == 0) return;
  }
}

inline Element concat(const Element& a, const Element& b) {
  Element out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

// Connection set {(x,0) : x != 0} u {(0,y) : y != 0} u {(x,c) : x != 0, c in C'}
// with C' the non-neighbours of 0 in the base graph.
inline GadgetSpec gadget(const CayleySpec& base, std::size_t i, std::uint64_t cap = std::uint64_t{1} << 20) {
  const auto& g = base.group();
  if (!g.is_elementary()) throw std::invalid_argument("gadget: base must be over Z_p^n");
  const auto n = g.rank();
  const auto p = g.p();
  if (i < 1 || i > n) throw std::invalid_argument("gadget: level must lie in [1, n]");
  const auto order = g.order();
  if (!order || *order > cap || poly::ipow(p, static_cast<unsigned>(i)) > cap)
    throw SizeCapExceeded("gadget: base too large to enumerate");
  std::vector<Element> complement;
  detail::for_each_vector(p, n, [&](const Element& y) {
    if (!g.is_identity(y) && !base.contains(y)) complement.push_back(y);
  });
  std::vector<Element> s;
  const Element zero_x(i, 0), zero_y(n, 0);
  detail::for_each_vector(p, i, [&](const Element& x) {
    if (x == zero_x) return;
    s.push_back(detail::concat(x, zero_y));
    for (const auto& c : complement) s.push_back(detail::concat(x, c));
  });
  detail::for_each_vector(p, n, [&](const Element& y) {
    if (y != zero_y) s.push_back(detail::concat(zero_x, y));
  });
  return GadgetSpec{base, i, CayleySpec(Group::elementary(p, n + i), std::move(s))};
}

// Restriction of X(Z_p^n, C) to the component of the identity, i.e. to
// span(C), written in coordinates of a basis of span(C).
inline CayleySpec identity_component(const CayleySpec& spec) {
  const auto& g = spec.group();
  if (!g.is_elementary()) throw std::invalid_argument("identity_component: spec must be over Z_p^n");
  std::vector<VecZp> rows;
  for (const auto& c : spec.connection()) rows.emplace_back(c.begin(), c.end());
  const auto red = rref(MatModP::from_rows(g.p(), rows, g.rank()));
  std::vector<VecZp> span;
  for (std::size_t r = 0; r < red.rank; ++r) span.push_back(red.reduced.row(r));
  const CoordinateSolver solver(extend_to_basis(span, g.p(), g.rank()));
  std::vector<Element> conn;
  for (const auto& row : rows) {
    const auto a = solver(row);
    conn.emplace_back(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(red.rank));
  }
  return CayleySpec(Group::elementary(g.p(), red.rank), std::move(conn));
}

// ---------------------------------------------------------------------------
// Colorability of Cayley graphs.

struct ColorabilityAnswer {
  bool colorable = false;
  std::string method;  // "clique-coclique bound", "coclique tiling", "dsatur", "exact"
  std::uint64_t lower = 0;                // ceil(N / alpha)
  std::optional<std::uint64_t> upper;     // colors of the best coloring found
};

namespace detail {

struct LocalComplement {
  std::vector<Element> vertices;  // non-neighbours of the identity
  AdjacencyBits adj;              // u ~ v iff u v^{-1} is neither 0 nor in C
};

// Candidates are listed with the last coordinate most significant. Vertices
// that differ only in the leading coordinates then sit together, which keeps
// the greedy colouring bound of the clique search tight on product-like sets.
inline LocalComplement local_complement(const CayleySpec& spec, std::uint64_t cap) {
  const auto& g = spec.group();
  const auto order = g.order();
  if (!order || *order > cap) throw SizeCapExceeded("cayley_coclique: group order exceeds cap");
  std::vector<bool> in_c(*order, false);
  for (const auto& c : spec.connection()) in_c[g.encode(c)] = true;
  std::vector<std::uint64_t> others;
  for (std::uint64_t a = 1; a < *order; ++a)
    if (!in_c[a]) others.push_back(a);
  auto reversed = [&](std::uint64_t a) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) {
      r = r * g.base() + a % g.base();
      a /= g.base();
    }
    return r;
  };
  std::sort(others.begin(), others.end(), [&](std::uint64_t a, std::uint64_t b) { return reversed(a) < reversed(b); });
  LocalComplement out;
  out.vertices.reserve(others.size());
  for (auto a : others) out.vertices.push_back(g.decode(a));
  if (g.is_elementary()) {
    // Digitwise a - b on mixed-radix codes avoids element allocations.
    const auto n = g.rank();
    const Coeff p = g.p();
    std::vector<std::uint64_t> place(n, 1);
    for (std::size_t i = n; i-- > 1;) place[i - 1] = place[i] * p;
    auto sub = [&](std::uint64_t a, std::uint64_t b) {
      std::uint64_t r = 0;
      for (std::size_t i = n; i-- > 0;) {
        r += ((a % p + p - b % p) % p) * place[i];
        a /= p;
        b /= p;
      }
      return r;
    };
    out.adj = AdjacencyBits::from_predicate(others.size(), [&](std::size_t u, std::size_t v) {
      return !in_c[p == 2 ? (others[u] ^ others[v]) : sub(others[u], others[v])];
    });
  } else {
    out.adj = AdjacencyBits::from_predicate(others.size(), [&](std::size_t u, std::size_t v) {
      return !in_c[g.encode(g.div(out.vertices[u], out.vertices[v]))];
    });
  }
  return out;
}

inline CayleyClique lift_local(const Group& g, const LocalComplement& local, const CliqueResult& r) {
  CayleyClique out{r.size + 1, {g.identity()}};
  for (auto v : r.witness) out.witness.push_back(local.vertices[v]);
  return out;
}

}  // namespace detail

// alpha(X(G, C)) via a clique search in the complement, inside the
// non-neighbours of the identity. The witness contains the identity.
inline CayleyClique cayley_coclique(const CayleySpec& spec, SearchBudget budget = {},
                                    std::uint64_t cap = std::uint64_t{1} << 22) {
  const auto local = detail::local_complement(spec, cap);
  return detail::lift_local(spec.group(), local, max_clique(local.adj, budget));
}

// A coclique with at least `target` vertices, if there is one.
inline std::optional<CayleyClique> cayley_coclique_at_least(const CayleySpec& spec, std::size_t target, SearchBudget budget = {},
                                                            std::uint64_t cap = std::uint64_t{1} << 22) {
  const auto local = detail::local_complement(spec, cap);
  const auto r = find_clique_at_least(local.adj, target > 0 ? target - 1 : 0, budget);
  if (!r) return std::nullopt;
  return detail::lift_local(spec.group(), local, *r);
}

namespace detail {

// Colours Z_p^N by the translates A + t, t ranging over vectors supported off
// J, when the projection onto the coordinates J is a bijection from A onto Z_p^J.
inline std::optional<std::vector<std::uint32_t>> tiling_coloring(const Group& g, const std::vector<Element>& a) {
  const auto n = g.rank();
  const Coeff p = g.p();
  std::size_t s = 0;
  for (std::uint64_t q = 1; q < a.size(); q *= p) ++s;
  if (poly::ipow(p, static_cast<unsigned>(s)) != a.size() || s > n) return std::nullopt;
  std::vector<bool> chosen(n, false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(s), true);
  const auto order = *g.order();
  do {
    std::vector<std::size_t> j, rest;
    for (std::size_t i = 0; i < n; ++i) (chosen[i] ? j : rest).push_back(i);
    auto key = [&](const Element& e, const std::vector<std::size_t>& coords) {
      std::uint64_t k = 0;
      for (auto c : coords) k = k * p + e[c];
      return k;
    };
    std::vector<std::int64_t> owner(a.size(), -1);
    bool bijective = true;
    for (std::size_t idx = 0; idx < a.size() && bijective; ++idx) {
      auto& slot = owner[key(a[idx], j)];
      if (slot >= 0) bijective = false;
      slot = static_cast<std::int64_t>(idx);
    }
    if (!bijective) continue;
    // Vertex z lies in A + t for the unique a in A agreeing with z on J, and
    // t = z - a is zero on J; its colour is t read on the remaining coordinates.
    std::vector<std::uint32_t> coloring(order);
    for (std::uint64_t v = 0; v < order; ++v) {
      const auto z = g.decode(v);
      const auto t = g.div(z, a[static_cast<std::size_t>(owner[key(z, j)])]);
      coloring[v] = static_cast<std::uint32_t>(key(t, rest));
    }
    return coloring;
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return std::nullopt;
}

}  // namespace detail

// Decides whether X(G, C) is k-colorable. Bounds first, then a tiling by
// translates of a maximum coclique, then explicit search on the materialized
// graph. Throws BudgetExhausted or SizeCapExceeded when undecided.
inline ColorabilityAnswer cayley_colorability(const CayleySpec& spec, std::size_t k, SearchBudget budget = {},
                                              std::uint64_t materialize_cap = kDefaultMaterializeCap) {
  const auto& g = spec.group();
  const auto order = g.order();
  if (!order) throw SizeCapExceeded("cayley_colorability: group order does not fit");
  ColorabilityAnswer ans;
  if (k == 0) {
    ans.lower = *order > 0 ? 1 : 0;
    ans.colorable = *order == 0;
    ans.method = "clique-coclique bound";
    return ans;
  }
  // k colours need a colour class, hence a coclique, of size ceil(N / k).
  const std::uint64_t need = (*order + k - 1) / k;
  const auto coclique = cayley_coclique_at_least(spec, need, budget);
  if (!coclique) {
    ans.lower = need > 1 ? (*order + need - 2) / (need - 1) : *order;
    ans.method = "clique-coclique bound";
    return ans;
  }
  const std::uint64_t alpha = coclique->size;
  ans.lower = (*order + alpha - 1) / alpha;
  if (g.is_elementary() && *order % alpha == 0) {
    if (const auto tiling = detail::tiling_coloring(g, coclique->witness)) {
      ans.upper = *order / alpha;
      ans.colorable = *ans.upper <= k;
      ans.method = "coclique tiling";
      return ans;
    }
  }
  const auto graph = materialize(spec, materialize_cap);
  const auto greedy = greedy_coloring(graph);
  ans.upper = greedy.colors;
  if (greedy.colors <= k) {
    ans.colorable = true;
    ans.method = "dsatur";
    return ans;
  }
  ans.colorable = find_k_coloring(graph, k, budget).has_value();
  ans.method = "exact";
  return ans;
}

// ---------------------------------------------------------------------------
// Approximation driver.

// (spec, k) -> is the Cayley graph k-colorable?
using ColorabilityOracle = std::function<bool(const CayleySpec&, std::size_t)>;

inline ColorabilityOracle default_colorability_oracle(SearchBudget budget = {}) {
  return [budget](const CayleySpec& spec, std::size_t k) { return cayley_colorability(spec, k, budget).colorable; };
}

// Adapts an oracle that returns chromatic numbers.
inline ColorabilityOracle from_chromatic_oracle(std::function<std::size_t(const CayleySpec&)> chi) {
  return [chi = std::move(chi)](const CayleySpec& spec, std::size_t k) { return chi(spec) <= k; };
}

struct DriverResult {
  std::size_t y = 0;
  std::uint64_t bound = 1;      // p^y <= omega(Gamma) < p^(y+1)
  std::uint64_t bracket_hi = 0;  // p^(y+1)
  std::size_t rank = 0;         // n, dimension of the identity component of Gamma
  std::size_t oracle_calls = 0;
  CayleySpec gamma;
  bool caveat = false;          // omega(Gamma) may exceed omega(X) in this bracket
  std::string note;
};

// Gamma is the reduction of x (the free spec when v < p^2), cut down to the
// component of the identity. Levels are tried from n downwards; the first i
// with chi(Gamma_i) = p^n gives y.
inline DriverResult approx_clique_driver(const Graph& x, Coeff p, const ColorabilityOracle& oracle) {
  const auto red = x.order() >= std::size_t{p} * p ? reduce_clique(x, p, false) : reduce_small(x, p, false);
  DriverResult r{0, 1, p, 0, 0, identity_component(red.quotient->spec), false, {}};
  r.rank = r.gamma.group().rank();
  const auto pn = poly::ipow(p, static_cast<unsigned>(r.rank));
  for (std::size_t i = r.rank; i >= 1; --i) {
    ++r.oracle_calls;
    if (oracle(gadget(r.gamma, i).spec, pn)) {
      r.y = i;
      break;
    }
  }
  r.bound = poly::ipow(p, static_cast<unsigned>(r.y));
  r.bracket_hi = r.bound * p;
  if ((p == 2 && r.bound <= 4 && 4 < r.bracket_hi) || (p == 3 && r.bound <= 3 && 3 < r.bracket_hi)) {
    r.caveat = true;
    r.note = p == 2 ? "omega(Gamma)=4 would leave omega(x) in {3,4}" : "omega(Gamma)=3 would leave omega(x) in {2,3}";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cubelike embedding.

struct EmbedResult {
  unsigned m = 0;
  std::size_t padded = 0;  // v' = 2^m - 1
  LinearCode code;
  FreeCayley quotient;
  std::vector<Element> embedding;  // vertex i of x -> image of e_i
  std::uint64_t order = 0;         // 2^(v' - k)
  std::uint64_t bound = 0;         // (v' + 1)^2
  InducedCopyResult induced;
};

inline EmbedResult embed_cubelike(const Graph& x) {
  if (x.order() == 0) throw std::invalid_argument("embed_cubelike: empty graph");
  unsigned m = 3;
  while ((std::size_t{1} << m) - 1 < x.order()) ++m;
  const std::size_t padded = (std::size_t{1} << m) - 1;
  Graph xp(padded);
  for (auto [a, b] : x.edges()) xp.add_edge(a, b);
  auto code = bch(m, 2);
  try_certify(code, std::uint64_t{1} << 20);
  auto fc = quotient(free_cayley(xp, 2), code);
  auto induced = verify_induced_copy(fc);
  if (!induced.ok)
    throw std::logic_error("embed_cubelike: induced copy check failed (" + induced.reason + ")");
  EmbedResult r{m, padded, code, fc, {}, 0, (padded + 1) * (padded + 1), induced};
  r.embedding.assign(fc.generators.begin(), fc.generators.begin() + static_cast<std::ptrdiff_t>(x.order()));
  r.order = std::uint64_t{1} << (padded - code.k());
  return r;
}

}  // namespace cayclique
