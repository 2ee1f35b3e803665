#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cayclique/codes.hpp"
#include "cayclique/fplinalg.hpp"
#include "cayclique/gf.hpp"
#include "oracles.hpp"

using namespace cayclique;

namespace {

FieldElement el(std::vector<Coeff> c) { return FieldElement{std::move(c)}; }

VecZp random_vec(std::mt19937_64& rng, std::size_t n, Coeff p) {
  VecZp v(n);
  for (auto& x : v) x = static_cast<Coeff>(rng() % p);
  return v;
}

MatModP random_mat(std::mt19937_64& rng, Coeff p, std::size_t r, std::size_t c) {
  MatModP m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() % p);
  return m;
}

}  // namespace

TEST(Irreducible, FirstOfEachDegree) {
  EXPECT_EQ(find_irreducible(2, 1), (PolyZp{0, 1}));
  EXPECT_EQ(find_irreducible(2, 3), (PolyZp{1, 1, 0, 1}));
  EXPECT_EQ(find_irreducible(3, 2), (PolyZp{1, 0, 1}));
}

TEST(Irreducible, AgreesWithProductEnumeration) {
  for (Coeff p : {2u, 3u, 5u})
    for (unsigned deg = 1; deg <= (p == 2 ? 6u : 3u); ++deg) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < deg; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        auto f = poly::monic_from_index(idx, deg, p);
        std::vector<unsigned> fu(f.begin(), f.end());
        ASSERT_EQ(poly::is_irreducible(f, p), oracle::irreducible_by_products(fu, p)) << poly::to_string(f);
      }
    }
}

TEST(Field, RejectsBadContexts) {
  EXPECT_THROW(FieldContext(4, {1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(FieldContext(2, {1, 0, 1}), std::invalid_argument);  // (x+1)^2
}

TEST(Field, Examples) {
  const FieldContext gf8(2, {1, 1, 0, 1});
  const auto x = gf8.generator_symbol();
  EXPECT_EQ(gf8.mul(gf8.mul(x, x), x), el({1, 1, 0}));
  const FieldContext gf9(3, {1, 0, 1});
  const auto xp1 = el({1, 1});
  EXPECT_EQ(gf9.mul(xp1, xp1), el({0, 2}));
  for (auto ctx : {gf8, gf9, FieldContext::standard(5, 2), FieldContext::standard(2, 6)})
    for (std::uint64_t i = 1; i < ctx.size(); ++i) {
      const auto a = ctx.from_index(i);
      ASSERT_EQ(ctx.mul(a, ctx.inv(a)), ctx.one());
    }
  EXPECT_THROW(gf8.inv(gf8.zero()), std::domain_error);
}

TEST(Field, Primitive) {
  const auto gf8 = FieldContext::standard(2, 3);
  EXPECT_EQ(find_primitive(gf8), gf8.generator_symbol());
  const auto gf4 = FieldContext::standard(2, 2);
  EXPECT_EQ(find_primitive(gf4), gf4.generator_symbol());
  const FieldContext gf9(3, {1, 0, 1});
  EXPECT_EQ(gf9.order(gf9.generator_symbol()), 4u);
  EXPECT_EQ(find_primitive(gf9), el({1, 1}));
  for (auto ctx : {gf4, gf8, gf9, FieldContext::standard(2, 4), FieldContext::standard(3, 3), FieldContext::standard(7, 2)}) {
    const auto a = find_primitive(ctx);
    std::set<FieldElement> powers;
    auto cur = ctx.one();
    for (std::uint64_t i = 0; i + 1 < ctx.size(); ++i) {
      powers.insert(cur);
      cur = ctx.mul(cur, a);
    }
    ASSERT_EQ(powers.size(), ctx.size() - 1);
    ASSERT_EQ(cur, ctx.one());
  }
}

TEST(Field, FrobeniusAndAdditivity) {
  std::mt19937_64 rng(7);
  for (auto ctx : {FieldContext::standard(2, 5), FieldContext::standard(3, 3), FieldContext::standard(5, 2)})
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = ctx.from_index(rng() % ctx.size());
      const auto b = ctx.from_index(rng() % ctx.size());
      ASSERT_EQ(ctx.pow(ctx.add(a, b), ctx.p()), ctx.add(ctx.pow(a, ctx.p()), ctx.pow(b, ctx.p())));
      const auto va = ctx.to_vector(a);
      const auto vb = ctx.to_vector(b);
      const auto vs = ctx.to_vector(ctx.add(a, b));
      for (unsigned i = 0; i < ctx.m(); ++i) ASSERT_EQ(vs[i], (va[i] + vb[i]) % ctx.p());
    }
}

TEST(Field, ToVector) {
  const auto gf8 = FieldContext::standard(2, 3);
  EXPECT_EQ(gf8.to_vector(gf8.zero()), (VecZp{0, 0, 0}));
  EXPECT_EQ(gf8.to_vector(gf8.one()), (VecZp{1, 0, 0}));
  EXPECT_EQ(gf8.to_vector(gf8.add(gf8.generator_symbol(), gf8.one())), (VecZp{1, 1, 0}));
}

TEST(Field, PolynomialText) {
  EXPECT_EQ(poly::parse("1 1 0 1", 2), (PolyZp{1, 1, 0, 1}));
  EXPECT_EQ(poly::to_string({1, 0, 2}), "1 0 2");
  EXPECT_THROW(poly::parse("1 2", 2), std::invalid_argument);
}

TEST(Linalg, RrefExamples) {
  const auto id = MatModP::identity(3, 4);
  EXPECT_EQ(rref(id).reduced, id);
  EXPECT_EQ(rref(id).rank, 4u);
  const MatModP zero(5, 2, 3);
  EXPECT_EQ(rref(zero).reduced, zero);
  EXPECT_EQ(rref(zero).rank, 0u);
  const auto m = MatModP::from_rows(3, {{1, 2}, {2, 1}});
  const auto r = rref(m);
  EXPECT_EQ(r.reduced, MatModP::from_rows(3, {{1, 2}, {0, 0}}));
  EXPECT_EQ(r.rank, 1u);
}

TEST(Linalg, NullspaceExamples) {
  EXPECT_TRUE(nullspace_basis(MatModP::identity(2, 3)).empty());
  EXPECT_EQ(nullspace_basis(MatModP(3, 1, 4)).size(), 4u);
  const auto ns = nullspace_basis(MatModP::from_rows(2, {{1, 1, 1}}));
  ASSERT_EQ(ns.size(), 2u);
  // Oracle: the even-weight words of Z_2^3 are exactly the span.
  std::set<VecZp> span;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      VecZp w(3);
      for (int i = 0; i < 3; ++i) w[i] = (a * ns[0][i] + b * ns[1][i]) % 2;
      span.insert(w);
    }
  EXPECT_EQ(span, (std::set<VecZp>{{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
}

TEST(Linalg, RandomProperties) {
  std::mt19937_64 rng(11);
  for (Coeff p : {2u, 3u, 5u, 7u})
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 6;
      const std::size_t c = 1 + rng() % 7;
      const auto m = random_mat(rng, p, r, c);
      const auto red = rref(m);
      const auto ns = nullspace_basis(m);
      ASSERT_EQ(red.rank + ns.size(), c);
      ASSERT_EQ(rref(red.reduced).reduced, red.reduced);
      for (const auto& x : ns) {
        const auto prod = m * MatModP::from_rows(p, {x}).transpose();
        ASSERT_TRUE(prod.is_zero());
      }
      if (!ns.empty()) {
        ASSERT_EQ(rank(MatModP::from_rows(p, ns)), ns.size());
      }
    }
}

TEST(Linalg, ExtendToBasis) {
  const auto std3 = extend_to_basis({}, 2, 3);
  EXPECT_EQ(std3.vectors, (std::vector<VecZp>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(std3.split, 0u);
  const std::vector<VecZp> full{{0, 1, 1}, {1, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(extend_to_basis(full, 2, 3).vectors, full);
  const auto b = extend_to_basis({{1, 1, 1}}, 2, 3);
  EXPECT_EQ(b.vectors, (std::vector<VecZp>{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(b.split, 1u);
  EXPECT_THROW(extend_to_basis({{1, 1}, {2, 2}}, 3, 2), std::invalid_argument);
}

TEST(Linalg, Coordinates) {
  const auto b = extend_to_basis({{1, 1, 1}}, 2, 3);
  EXPECT_EQ(coordinates(b, {0, 0, 1}), (VecZp{1, 1, 1}));
  EXPECT_EQ(coordinates(b, {0, 0, 0}), (VecZp{0, 0, 0}));
  EXPECT_EQ(coordinates(b, {1, 0, 0}), (VecZp{0, 1, 0}));
  std::mt19937_64 rng(3);
  for (Coeff p : {2u, 3u, 5u}) {
    const auto basis = extend_to_basis({random_vec(rng, 5, p)}, p, 5);
    const CoordinateSolver solve(basis);
    for (int trial = 0; trial < 30; ++trial) {
      const auto alpha = random_vec(rng, 5, p);
      const auto a = solve(alpha);
      VecZp back(5, 0);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) back[j] = (back[j] + a[i] * basis.vectors[i][j]) % p;
      ASSERT_EQ(back, alpha);
    }
  }
}

TEST(Linalg, MatrixText) {
  std::mt19937_64 rng(5);
  const auto m = random_mat(rng, 5, 3, 4);
  EXPECT_EQ(parse_matrix(to_text(m)), m);
  EXPECT_EQ(parse_matrix(to_text(MatModP(2, 0, 3))), MatModP(2, 0, 3));
  EXPECT_THROW(parse_matrix("mat p=4 rows=1 cols=1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix("mat p=2 rows=1 cols=2\n0 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("mat p=2 rows=2 cols=2\n0 1\n"), ParseError);
}

TEST(Codes, ParityFromGenerator) {
  EXPECT_EQ(parity_from_generator(MatModP::from_rows(2, {{1, 1}})), MatModP::from_rows(2, {{1, 1}}));
  EXPECT_EQ(parity_from_generator(MatModP::identity(2, 4)).rows(), 0u);
  EXPECT_EQ(parity_from_generator(MatModP::from_rows(2, {{1, 0, 1}, {0, 1, 1}})), MatModP::from_rows(2, {{1, 1, 1}}));
}

TEST(Codes, ParityHandlesNonSystematicAndDeficientInput) {
  std::mt19937_64 rng(13);
  for (Coeff p : {2u, 3u, 5u})
    for (int trial = 0; trial < 30; ++trial) {
      const auto gen = random_mat(rng, p, 1 + rng() % 4, 6);
      const auto par = parity_from_generator(gen);
      ASSERT_TRUE((gen * par.transpose()).is_zero());
      ASSERT_EQ(rank(par) + rank(gen), 6u);
      const auto back = generator_from_parity(par);
      ASSERT_EQ(LinearCode::from_generator(back).generator(), LinearCode::from_generator(gen).generator());
    }
}

TEST(Codes, MinimumDistance) {
  EXPECT_EQ(*min_distance_bruteforce(LinearCode::repetition(2, 7)).d, 7u);
  EXPECT_TRUE(min_distance_bruteforce(LinearCode::trivial(2, 5)).infinite());
  EXPECT_EQ(*min_distance_bruteforce(bch(3, 1)).d, 3u);
  EXPECT_EQ(*min_distance_bruteforce(LinearCode::repetition(3, 4)).d, 4u);
  EXPECT_THROW(min_distance_bruteforce(bch(4, 1), 100), BudgetExhausted);
}

TEST(Codes, DistanceOverOddPrimeMatchesEnumeration) {
  // Oracle: test every vector of Z_3^5 for membership and take the minimum weight.
  const auto code = LinearCode::from_generator(MatModP::from_rows(3, {{1, 0, 2, 1, 0}, {0, 1, 1, 1, 2}}));
  std::size_t best = 99;
  for (int idx = 1; idx < 243; ++idx) {
    VecZp w(5);
    int x = idx;
    std::size_t wt = 0;
    for (auto& c : w) {
      c = static_cast<Coeff>(x % 3);
      x /= 3;
      wt += c != 0;
    }
    if (code.contains(w)) best = std::min(best, wt);
  }
  EXPECT_EQ(*min_distance_bruteforce(code).d, best);
}

TEST(Codes, TrivialCodeConventions) {
  const auto zero = LinearCode::trivial(2, 4);
  EXPECT_EQ(zero.k(), 0u);
  EXPECT_TRUE(zero.contains({0, 0, 0, 0}));
  EXPECT_FALSE(zero.contains({0, 1, 0, 0}));
  EXPECT_TRUE(zero.distance_at_least(3));
  EXPECT_TRUE(zero.distance_at_least(7));
}

namespace {

GoppaInputs goppa_inputs(unsigned m, std::size_t r, std::size_t n) {
  auto ctx = FieldContext::standard(2, m);
  const auto alpha = find_primitive(ctx);
  std::vector<FieldElement> L;
  for (std::size_t i = 1; i <= n; ++i) L.push_back(ctx.pow(alpha, i));
  auto g = monomial(ctx, r);
  return GoppaInputs{std::move(ctx), std::move(g), std::move(L)};
}

}  // namespace

// Expected (k, d) come from tests/oracles/goppa_oracle.py, which tests the
// congruence sum a_i/(x - alpha_i) = 0 mod g directly.
TEST(Goppa, SmallCases) {
  auto c1 = goppa(goppa_inputs(3, 1, 7));
  auto c2 = goppa(goppa_inputs(3, 2, 7));
  auto c6 = goppa(goppa_inputs(4, 6, 15));
  for (auto* c : {&c1, &c2, &c6}) {
    ASSERT_TRUE(try_certify(*c));
    EXPECT_TRUE((c->generator() * c->parity().transpose()).is_zero());
  }
  EXPECT_EQ(c1.k(), 4u);
  EXPECT_EQ(*c1.distance_cert()->d, 3u);
  EXPECT_GE(c1.k(), 7u - 3u);
  EXPECT_GE(*c1.distance_cert()->d, 2u);
  EXPECT_EQ(c2.k(), 4u);
  EXPECT_EQ(*c2.distance_cert()->d, 3u);
  EXPECT_EQ(c6.k(), 5u);
  EXPECT_EQ(*c6.distance_cert()->d, 7u);
  EXPECT_EQ(c6.provenance().designed_distance, 7u);
}

TEST(Goppa, PipelineSizedCasesAreTrivial) {
  EXPECT_EQ(goppa(goppa_inputs(6, 6, 8)).k(), 0u);
  EXPECT_EQ(goppa(goppa_inputs(8, 6, 16)).k(), 0u);
}

TEST(Goppa, RejectsBadSupport) {
  auto in = goppa_inputs(3, 1, 3);
  in.L.push_back(in.L.front());
  EXPECT_THROW(goppa(in), std::invalid_argument);
  auto with_root = goppa_inputs(3, 2, 3);
  with_root.L.push_back(with_root.ctx.zero());
  EXPECT_THROW(goppa(with_root), std::invalid_argument);
}

TEST(Goppa, CodeIsClosedUnderLinearCombinations) {
  const auto code = goppa(goppa_inputs(4, 2, 15));
  std::mt19937_64 rng(17);
  const auto rows = code.basis();
  for (int trial = 0; trial < 100; ++trial) {
    VecZp w(code.n(), 0);
    for (const auto& r : rows)
      if (rng() & 1)
        for (std::size_t c = 0; c < w.size(); ++c) w[c] ^= r[c];
    ASSERT_TRUE(code.contains(w));
  }
}

TEST(Bch, Parameters) {
  auto c31 = bch(3, 1);
  auto c42 = bch(4, 2);
  auto c32 = bch(3, 2);
  for (auto* c : {&c31, &c42, &c32}) ASSERT_TRUE(try_certify(*c));
  EXPECT_EQ(c31.n(), 7u);
  EXPECT_EQ(c31.k(), 4u);
  EXPECT_EQ(*c31.distance_cert()->d, 3u);
  EXPECT_EQ(c42.n(), 15u);
  EXPECT_EQ(c42.k(), 7u);
  EXPECT_EQ(*c42.distance_cert()->d, 5u);
  EXPECT_EQ(c32.k(), 1u);
  EXPECT_EQ(*c32.distance_cert()->d, 7u);
  EXPECT_THROW(bch(2, 1), std::invalid_argument);
  EXPECT_THROW(bch(3, 4), std::invalid_argument);
}

TEST(Bch, DesignedBoundsAcrossRange) {
  for (unsigned m : {3u, 4u, 5u})
    for (unsigned t = 0; t < (1u << (m - 1)); ++t) {
      auto c = bch(m, t);
      const std::size_t n = (std::size_t{1} << m) - 1;
      if (m * t < n) {
        ASSERT_GE(c.k(), n - m * t);
      }
      if (c.k() > 20) continue;
      ASSERT_TRUE(try_certify(c));
      ASSERT_TRUE(c.distance_cert()->at_least(2 * t + 1)) << "m=" << m << " t=" << t;
    }
}

TEST(Codes, FileRoundTrip) {
  for (const auto& code : {bch(4, 2), LinearCode::trivial(3, 4), LinearCode::repetition(5, 3), goppa(goppa_inputs(3, 1, 7)),
                           goppa(goppa_inputs(3, 3, 7))}) {
    const auto back = parse_code(to_text(code));
    ASSERT_EQ(back.generator(), code.generator());
    ASSERT_EQ(back.provenance(), code.provenance());
  }
  EXPECT_THROW(parse_code("code p=2 n=3 k=2\n1 1 1\n1 1 1\n"), ParseError);
  EXPECT_THROW(parse_code("code p=2 n=3 k=1\n1 1\n"), ParseError);
}
