#include <gtest/gtest.h>

#include <functional>

#include "cayclique/ensemble.hpp"
#include "cayclique/reduce.hpp"
#include "oracles.hpp"

using namespace cayclique;

namespace {

Graph with_isolated(const Graph& g, std::size_t extra) {
  Graph out(g.order() + extra);
  for (auto [a, b] : g.edges()) out.add_edge(a, b);
  return out;
}

// Every inverse-closed, identity-free connection set of Z_p^n.
std::vector<CayleySpec> all_specs(Coeff p, std::size_t n) {
  const auto group = Group::elementary(p, n);
  std::vector<Element> classes;  // one representative of each {c, -c}
  for (std::uint64_t v = 1; v < *group.order(); ++v) {
    const auto a = group.decode(v);
    if (group.encode(group.inv(a)) >= v) classes.push_back(a);
  }
  std::vector<CayleySpec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << classes.size()); ++mask) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (mask >> i & 1) gens.push_back(classes[i]);
    out.push_back(CayleySpec::closed(group, gens));
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(ChooseM, Examples) {
  EXPECT_EQ(choose_m(4, 2), 4u);
  EXPECT_EQ(choose_m(8, 2), 6u);
  EXPECT_EQ(choose_m(16, 2), 8u);
  EXPECT_EQ(choose_m(9, 3), 4u);
  EXPECT_THROW(choose_m(3, 2), SmallInstance);
  EXPECT_THROW(choose_m(24, 5), SmallInstance);
  EXPECT_THROW(choose_m(9, 4), std::invalid_argument);
}

TEST(ChooseM, Postconditions) {
  for (Coeff p : {2u, 3u, 5u})
    for (std::size_t v = std::size_t{p} * p; v <= 200; ++v) {
      const auto m = choose_m(v, p);
      ASSERT_LE(v + 1, ipow(p, m));              // v <= p^m - 1
      ASSERT_LE(ipow(p, m), v * v);              // m <= 2 log_p v
      ASSERT_GT(ipow(p, m + 1), v * v);          // largest such m
    }
}

TEST(Recover, Examples) {
  EXPECT_EQ(recover_omega(7, 5, Graph(10)).omega, 7u);
  const auto k3 = with_isolated(Graph::complete(3), 3);
  const auto r2 = recover_omega(4, 2, k3);
  EXPECT_EQ(r2.omega, 3u);
  EXPECT_EQ(r2.path, CaveatPath::p2_check34);
  EXPECT_EQ(recover_omega(4, 2, Graph::complete(4)).omega, 4u);
  const auto r3 = recover_omega(3, 3, Graph::cycle(5));
  EXPECT_EQ(r3.omega, 2u);
  EXPECT_EQ(r3.path, CaveatPath::p3_check23);
  EXPECT_EQ(recover_omega(3, 3, Graph::complete(3)).omega, 3u);
  EXPECT_EQ(recover_omega(2, 2, Graph::cycle(5)).path, CaveatPath::none);
}

TEST(Reduce, K4PlusIsolated) {
  const auto x = with_isolated(Graph::complete(4), 4);
  const auto r = reduce_clique(x, 2);
  EXPECT_EQ(r.m, 6u);
  EXPECT_EQ(r.L_powers.size(), 8u);
  EXPECT_EQ(r.code->n(), 8u);
  EXPECT_TRUE(r.code->distance_at_least(7));
  EXPECT_TRUE(r.size_bound_holds());
  EXPECT_EQ(r.connection_size, r.quotient_connection_size);
  EXPECT_EQ(*r.omega_quotient, 4u);
  EXPECT_EQ(*r.omega_input, 4u);
  EXPECT_EQ(r.caveat_path, CaveatPath::p2_check34);
}

TEST(Reduce, SmallInstances) {
  EXPECT_THROW(reduce_clique(Graph::complete(3), 2), SmallInstance);
  EXPECT_THROW(reduce_clique(Graph::cycle(8), 3), SmallInstance);
  const auto r = reduce_small(Graph::complete(3), 2);
  EXPECT_EQ(r.quotient->spec.connection(), (std::vector<Element>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(*r.omega_input, 3u);
}

TEST(Reduce, ReportKeysAreStable) {
  const auto text = to_text(reduce_clique(with_isolated(Graph::complete(4), 4), 2));
  EXPECT_NE(text.find("m=6\n"), std::string::npos);
  EXPECT_NE(text.find("bijection=true\n"), std::string::npos);
  EXPECT_NE(text.find("omega_input=4\n"), std::string::npos);
  EXPECT_EQ(text.find("elapsed_ms"), std::string::npos);
  EXPECT_EQ(text, to_text(reduce_clique(with_isolated(Graph::complete(4), 4), 2)));
}

TEST(Reduce, EndToEndSoundness) {
  for (Coeff p : {2u, 3u}) {
    const auto graphs = p == 2 ? graph_ensemble(12, 4, 10, 7) : graph_ensemble(6, 9, 10, 7);
    for (const auto& x : graphs) {
      const auto r = reduce_clique(x, p);
      ASSERT_EQ(*r.omega_input, oracle::clique_number(x)) << "p=" << p;
      ASSERT_EQ(r.connection_size, r.quotient_connection_size);
      ASSERT_TRUE(r.size_bound_holds());
    }
  }
}

TEST(Gadget, Examples) {
  const CayleySpec k2(Group::elementary(2, 1), {{1}});
  const auto g1 = gadget(k2, 1);
  const auto c4 = materialize(g1.spec);
  EXPECT_TRUE(oracle::isomorphic(c4, Graph::cycle(4)));
  EXPECT_EQ(oracle::independence_number(c4), 2u);
  EXPECT_EQ(oracle::chromatic_number(c4), 2u);
  EXPECT_THROW(gadget(k2, 0), std::invalid_argument);
  EXPECT_THROW(gadget(k2, 2), std::invalid_argument);

  // Edgeless base: omega = 1 < p, so more than p^n colours are needed.
  for (Coeff p : {2u, 3u}) {
    const CayleySpec empty(Group::elementary(p, 1), {});
    const auto g = materialize(gadget(empty, 1).spec);
    EXPECT_EQ(oracle::independence_number(g), 1u);
    EXPECT_FALSE(oracle::colourable(g, p));
  }
}

TEST(Gadget, LawOnSmallBases) {
  for (auto [p, n] : {std::pair<Coeff, std::size_t>{2, 1}, {2, 2}, {3, 1}})
    for (const auto& base : all_specs(p, n)) {
      const auto omega = cayley_clique_number(base);
      ASSERT_EQ(omega, oracle::clique_number(materialize(base)));
      for (std::size_t i = 1; i <= n; ++i) {
        const auto g = materialize(gadget(base, i).spec);
        const auto pi = ipow(p, i);
        const auto pn = ipow(p, n);
        ASSERT_EQ(max_independent_set(g).size, std::min<std::uint64_t>(pi, omega));
        ASSERT_EQ(chromatic_number(g).colors == pn, omega >= pi);
        if (g.order() <= 9) {
          ASSERT_EQ(oracle::independence_number(g), std::min<std::uint64_t>(pi, omega));
          ASSERT_EQ(oracle::colourable(g, pn) && !oracle::colourable(g, pn - 1), omega >= pi);
        }
      }
    }
}

TEST(Colorability, AgreesWithExactChromaticNumber) {
  for (auto [p, n] : {std::pair<Coeff, std::size_t>{2, 1}, {2, 2}, {3, 1}})
    for (const auto& base : all_specs(p, n))
      for (std::size_t i = 1; i <= n; ++i) {
        const auto spec = gadget(base, i).spec;
        const auto chi = chromatic_number(materialize(spec)).colors;
        for (std::size_t k = 1; k <= chi + 1; ++k) ASSERT_EQ(cayley_colorability(spec, k).colorable, k >= chi);
      }
  for (const auto& x : graphs_of_orders({4, 5}, 5)) {
    const auto spec = free_connection_set(x, 2);
    const auto chi = chromatic_number(materialize(spec)).colors;
    for (std::size_t k = 1; k <= chi; ++k) ASSERT_EQ(cayley_colorability(spec, k).colorable, k >= chi);
  }
}

TEST(Colorability, CocliqueMatchesComplementClique) {
  for (const auto& x : graphs_of_orders({3, 4, 5}, 4))
    for (Coeff p : {2u, 3u}) {
      if (p == 3 && x.order() > 3) continue;
      const auto spec = free_connection_set(x, p);
      const auto g = materialize(spec);
      ASSERT_EQ(cayley_coclique(spec).size, max_independent_set(g).size);
    }
}

TEST(IdentityComponent, Examples) {
  // Z_2(K_3) spans the even-weight plane: K_4 over Z_2^2.
  const auto comp = identity_component(free_connection_set(Graph::complete(3), 2));
  EXPECT_EQ(comp.group().rank(), 2u);
  EXPECT_EQ(materialize(comp), Graph::complete(4));
  EXPECT_EQ(identity_component(free_connection_set(Graph(4), 3)).group().rank(), 0u);
  for (const auto& x : graphs_of_orders({4, 5}, 4)) {
    const auto spec = free_connection_set(x, 2);
    EXPECT_EQ(cayley_clique_number(identity_component(spec)), cayley_clique_number(spec));
  }
}

TEST(Driver, Examples) {
  const auto oracle = default_colorability_oracle();
  const auto k4 = approx_clique_driver(Graph::complete(4), 2, oracle);
  EXPECT_EQ(k4.y, 2u);
  EXPECT_EQ(k4.bound, 4u);
  const auto k3 = approx_clique_driver(Graph::complete(3), 2, oracle);
  EXPECT_EQ(k3.y, 2u);
  EXPECT_EQ(k3.bracket_hi, 8u);
  EXPECT_TRUE(k3.caveat);
  const auto empty = approx_clique_driver(Graph(5), 2, oracle);
  EXPECT_EQ(empty.y, 0u);
  EXPECT_EQ(empty.bound, 1u);
}

TEST(Driver, ChromaticOracleAdaptorAgrees) {
  const auto exact = from_chromatic_oracle([](const CayleySpec& s) { return chromatic_number(materialize(s)).colors; });
  for (const auto& x : {Graph::complete(3), Graph::path(3), Graph::cycle(4), Graph(3)})
    EXPECT_EQ(approx_clique_driver(x, 2, exact).y, approx_clique_driver(x, 2, default_colorability_oracle()).y);
}

TEST(Driver, Bracket) {
  const auto oracle = default_colorability_oracle();
  const auto graphs = graph_ensemble(30, 2, 7, 11);
  for (const auto& x : graphs) {
    const auto r = approx_clique_driver(x, 2, oracle);
    const auto omega = cayley_clique_number(r.gamma);
    ASSERT_LE(r.bound, omega);
    ASSERT_LT(omega, r.bracket_hi);
  }
}

TEST(Embed, Examples) {
  const auto c7 = embed_cubelike(Graph::cycle(7));
  EXPECT_EQ(c7.m, 3u);
  EXPECT_EQ(c7.padded, 7u);
  EXPECT_EQ(c7.code.k(), 1u);
  EXPECT_EQ(c7.order, 64u);
  EXPECT_EQ(c7.bound, 64u);
  EXPECT_TRUE(c7.induced.ok);

  const auto big = embed_cubelike(graph_ensemble(1, 15, 15, 3).front());
  EXPECT_EQ(big.m, 4u);
  EXPECT_EQ(big.code.k(), 7u);
  EXPECT_EQ(big.order, 256u);
  EXPECT_LE(big.order, big.bound);
  EXPECT_TRUE(big.induced.ok);

  const auto one = embed_cubelike(Graph(1));
  EXPECT_EQ(one.m, 3u);
  EXPECT_EQ(one.padded, 7u);
  EXPECT_EQ(one.embedding.size(), 1u);
}

TEST(Embed, InducedCopyOnOrdersUpToFifteen) {
  for (const auto& x : graphs_of_orders({2, 5, 8, 11, 15}, 3)) {
    const auto r = embed_cubelike(x);
    ASSERT_TRUE(r.induced.ok);
    ASSERT_TRUE(r.induced.distance_precondition);
    ASSERT_LE(r.order, r.bound);
    for (Vertex a = 0; a < x.order(); ++a)
      for (Vertex b = a + 1; b < x.order(); ++b)
        ASSERT_EQ(r.quotient.spec.adjacent(r.embedding[a], r.embedding[b]), x.adjacent(a, b));
  }
}
