#include <gtest/gtest.h>

#include "support.hpp"
#include "stab/invariants.hpp"

using namespace stab;
using testing_support::elems;

namespace {

const Domain Z = Domain::integers();

FpModule mod(std::size_t rank, const std::vector<long>& f) { return FpModule::from_decomposition(Z, rank, elems(f)); }

AssSet ints(const std::vector<long>& primes, bool zero = false) {
  AssSet s;
  if (zero) s.insert(PrimeIdeal::zero(Z));
  for (long p : primes) s.insert(PrimeIdeal::of(Elem(p)));
  return s;
}

FpModule random_module(const Domain& dom, std::mt19937_64& rng) {
  std::vector<Elem> f;
  for (std::size_t i = rng() % 4; i > 0; --i) {
    Elem e = dom == Z ? Elem(static_cast<long>(2 + rng() % 60)) : testing_support::random_elem(dom, rng, 0, 3);
    if (!e.is_zero() && !e.is_unit()) f.push_back(e);
  }
  return testing_support::scrambled_module(dom, f, rng() % 2, rng);
}

Elem random_generator(const Domain& dom, std::mt19937_64& rng) {
  if (dom == Z) {
    long v = static_cast<long>(rng() % 31);
    return Elem(rng() % 5 == 0 ? -v : v);
  }
  return testing_support::random_elem(dom, rng, 0, 2);
}

}  // namespace

TEST(Ass, Examples) {
  EXPECT_EQ(ass(mod(1, {12})), ints({2, 3}, true));
  EXPECT_TRUE(ass(FpModule()).empty());
  EXPECT_EQ(ass(mod(0, {4})), ints({2}));
  EXPECT_EQ(ass(mod(1, {12})).to_strings(), (std::vector<std::string>{"(0)", "(2)", "(3)"}));
}

TEST(Ass, MatchesEnumerationOracleUpTo200) {
  std::vector<std::vector<long>> all;
  std::vector<long> cur;
  testing_support::finite_orders(200, 4, cur, all);
  std::mt19937_64 rng(1);
  for (const auto& orders : all) {
    FpModule m = testing_support::scrambled_module(Z, elems(orders), 0, rng);
    auto primes = oracle::ass_primes({orders});
    EXPECT_EQ(ass(m), ints({primes.begin(), primes.end()}));
  }
}

TEST(Ass, PolynomialMatchesEnumerationOracle) {
  std::mt19937_64 rng(2);
  for (std::uint64_t p : {2u, 3u}) {
    Domain dom = Domain::poly_mod(p);
    for (int t = 0; t < 40; ++t) {
      std::vector<oracle::Poly> fs;
      std::vector<Elem> f;
      unsigned budget = p == 2 ? 7 : 4;  // total degree, keeps |M| <= 128 / 81
      while (budget > 0 && fs.size() < 3) {
        unsigned d = 1 + rng() % budget;
        auto cands = oracle::monic_of_degree(d, p);
        fs.push_back(cands[rng() % cands.size()]);
        f.push_back(Elem::poly(p, fs.back()));
        budget -= d;
      }
      FpModule m = testing_support::scrambled_module(dom, f, 0, rng);
      AssSet want;
      for (const auto& q : oracle::poly_ass(fs, p)) want.insert(PrimeIdeal::of(Elem::poly(p, q)));
      EXPECT_EQ(ass(m), want);
    }
  }
}

TEST(Ann, Examples) {
  EXPECT_EQ(ann(mod(0, {2, 12})), Ideal(Elem(12)));
  EXPECT_EQ(ann(mod(1, {})), Ideal(Elem(0)));
  EXPECT_EQ(ann(FpModule()), Ideal(Elem(1)));
}

TEST(Depth, Examples) {
  EXPECT_EQ(depth(Ideal(Elem(3)), mod(0, {2})), Depth::infinite);
  EXPECT_EQ(depth(Ideal(Elem(6)), mod(1, {2})), Depth::zero);
  EXPECT_EQ(depth(Ideal(Elem(2)), mod(1, {})), Depth::one);
  EXPECT_EQ(depth(Ideal(Elem(1)), mod(1, {8})), Depth::infinite);
  EXPECT_EQ(depth(Ideal(Elem(5)), FpModule()), Depth::infinite);
  EXPECT_EQ(depth(Ideal(Elem(0)), mod(1, {})), Depth::zero);
  EXPECT_EQ(to_string(Depth::infinite), "inf");
}

TEST(Depth, ZeroIffZerodivisorByEnumeration) {
  std::vector<std::vector<long>> all;
  std::vector<long> cur;
  testing_support::finite_orders(60, 3, cur, all);
  for (const auto& orders : all) {
    oracle::FiniteGroup g{orders};
    FpModule m = mod(0, orders);
    for (long j = 0; j <= 12; ++j) {
      bool zerodivisor = false, jm_is_m = true;
      std::set<oracle::Vec> image;
      for (const auto& v : g.elements()) {
        if (!oracle::FiniteGroup::is_zero(v) && oracle::FiniteGroup::is_zero(g.scale(v, j))) zerodivisor = true;
        image.insert(g.scale(v, j));
      }
      jm_is_m = static_cast<long>(image.size()) == g.size();
      Depth d = depth(Ideal(Elem(j)), m);
      EXPECT_EQ(d == Depth::infinite, jm_is_m);
      EXPECT_EQ(d == Depth::zero, zerodivisor && !jm_is_m);
    }
  }
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma(Ideal(Elem(2)), mod(0, {12})).sub.factors(), elems({4}));
  auto g = gamma(Ideal(Elem(2)), mod(1, {12}));
  EXPECT_EQ(g.sub.factors(), elems({4}));
  EXPECT_EQ(decompose(g.quotient), (Decomposition{1, elems({3})}));
  EXPECT_TRUE(gamma(Ideal(Elem(5)), mod(2, {})).sub.is_zero());
  EXPECT_TRUE(isomorphic(gamma(Ideal(Elem(0)), mod(1, {12})).sub, mod(1, {12})));
  // Gamma_R(M) = (0 :_M R) = 0.
  auto unit = gamma(Ideal(Elem(1)), mod(1, {12}));
  EXPECT_TRUE(unit.sub.is_zero());
  EXPECT_TRUE(isomorphic(unit.quotient, mod(1, {12})));
}

TEST(Gamma, AssFormulasOnRandomPairs) {
  std::mt19937_64 rng(34);
  for (Domain dom : {Z, Domain::poly_mod(2), Domain::poly_mod(3)}) {
    for (int t = 0; t < 100; ++t) {
      FpModule m = random_module(dom, rng);
      Ideal i(random_generator(dom, rng));
      auto g = gamma(i, m);
      EXPECT_EQ(ass(g.sub), ass(m).restrict_to(i));
      EXPECT_EQ(ass(g.quotient), ass(m).remove(i));
      EXPECT_TRUE(compose(g.projection, g.inclusion).is_zero());
    }
  }
}

TEST(Cmc, Examples) {
  auto s46 = CmcSet::explicit_set(elems({4, 6}));
  EXPECT_FALSE(is_cmc(s46));
  auto s24 = CmcSet::explicit_set(elems({2, 4}));
  EXPECT_TRUE(is_cmc(s24));
  EXPECT_TRUE(is_coprincipal(s24));
  EXPECT_EQ(cogenerator(s24), Elem(4));
  EXPECT_THROW(tau(s46, mod(0, {12})), std::invalid_argument);
}

TEST(Cmc, PowerFamilyFromTheTorsionTheoryExample) {
  // S = {a^2} u {a^(8 + 12 n)} with a = 2.
  ExponentSet e{{2}, {{8, 12}}};
  auto s = CmcSet::power_family(Elem(2), e);
  EXPECT_TRUE(is_cmc(s));
  EXPECT_FALSE(is_coprincipal(s));
  EXPECT_FALSE(is_mult_closed(s));
  // The witness f(r, t) = (r t)^2 lands in S and in (lcm(r, t)).
  std::vector<unsigned> members;
  for (unsigned k = 1; k <= 80; ++k)
    if (e.contains(k)) members.push_back(k);
  for (unsigned a : members)
    for (unsigned b : members) {
      Elem f = (Elem(2).pow(a) * Elem(2).pow(b)).pow(2);
      EXPECT_TRUE(s.contains(f)) << a << " " << b;
      EXPECT_TRUE(lcm(Elem(2).pow(a), Elem(2).pow(b)).divides(f));
    }
}

TEST(Cmc, TruncatedPowerFamilyIsFiniteHenceCoprincipal) {
  auto s = CmcSet::explicit_set({Elem(4), Elem(2).pow(8), Elem(2).pow(20)});
  EXPECT_TRUE(is_cmc(s));
  EXPECT_TRUE(is_coprincipal(s));
  EXPECT_EQ(cogenerator(s), Elem(2).pow(20));
  EXPECT_FALSE(is_mult_closed(s));
  // The infinite family's witness leaves the truncation.
  EXPECT_FALSE(s.contains((Elem(4) * Elem(2).pow(20)).pow(2)));
}

TEST(Cmc, ClosureAndExponentSets) {
  auto c = CmcSet::closure(elems({2, 3}));
  EXPECT_TRUE(is_cmc(c));
  EXPECT_TRUE(is_mult_closed(c));
  EXPECT_FALSE(is_coprincipal(c));
  EXPECT_TRUE(c.contains(Elem(72)));
  EXPECT_FALSE(c.contains(Elem(10)));
  EXPECT_TRUE(ExponentSet({}, {{1, 1}}).closed_under_addition());
  EXPECT_TRUE(ExponentSet::even().closed_under_addition());
  EXPECT_FALSE(ExponentSet::odd().closed_under_addition());
  EXPECT_TRUE((ExponentSet{{3}, {{5, 1}}}).closed_under_addition());
  EXPECT_FALSE((ExponentSet{{3}, {{7, 1}}}).closed_under_addition());
  EXPECT_THROW(CmcSet::power_family(Elem(2), ExponentSet{{0}, {}}), std::invalid_argument);
}

TEST(Tau, Examples) {
  auto t = tau(CmcSet::explicit_set(elems({2})), mod(0, {4}));
  EXPECT_EQ(t.sub.factors(), elems({2}));
  EXPECT_EQ(t.quotient.factors(), elems({2}));
  EXPECT_TRUE(tau(CmcSet::explicit_set(elems({-1})), mod(0, {12})).sub.is_zero());
  EXPECT_EQ(tau(CmcSet::closure(elems({2})), mod(0, {12})).sub.factors(), elems({4}));
}

TEST(Tau, NonClosedSetKeepsPrimeMeetingS) {
  // S = {2} is cmc but not multiplicatively closed; on M = Z/4 the quotient
  // M / tau_S(M) still has (2) as an associated prime although (2) meets S.
  auto s = CmcSet::explicit_set(elems({2}));
  auto t = tau(s, mod(0, {4}));
  EXPECT_FALSE(is_mult_closed(s));
  EXPECT_TRUE(meets(PrimeIdeal::of(Elem(2)), s));
  EXPECT_EQ(ass(t.quotient), ints({2}));
}

TEST(Tau, MultiplicativelyClosedFormulasOnRandomTriples) {
  std::mt19937_64 rng(77);
  for (Domain dom : {Z, Domain::poly_mod(2), Domain::poly_mod(5)}) {
    for (int t = 0; t < 100; ++t) {
      FpModule m = random_module(dom, rng);
      std::vector<Elem> gens;
      for (std::size_t k = 1 + rng() % 2; k > 0; --k) gens.push_back(random_generator(dom, rng));
      auto s = rng() % 4 == 0 ? CmcSet::power_family(gens[0], ExponentSet{{}, {{1, 1}}}) : CmcSet::closure(gens);
      ASSERT_TRUE(is_mult_closed(s));
      auto split = tau(s, m);
      AssSet meet, miss;
      AssSet all = ass(m);
      for (const auto& p : all.primes()) (meets(p, s) ? meet : miss).insert(p);
      EXPECT_EQ(ass(split.sub), meet);
      EXPECT_EQ(ass(split.quotient), miss);
    }
  }
}
