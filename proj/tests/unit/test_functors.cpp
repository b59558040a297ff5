#include <gtest/gtest.h>

#include "support.hpp"
#include "stab/functors.hpp"

using namespace stab;
using testing_support::elems;

namespace {

const Domain Z = Domain::integers();

FpModule mod(std::size_t rank, const std::vector<long>& f) { return FpModule::from_decomposition(Z, rank, elems(f)); }

FpModule random_module(const Domain& dom, std::mt19937_64& rng, bool torsion) {
  std::vector<Elem> f;
  for (std::size_t i = rng() % 3; i > 0; --i) {
    Elem e = dom == Z ? Elem(static_cast<long>(2 + rng() % 23)) : testing_support::random_elem(dom, rng, 0, 2);
    if (!e.is_zero() && !e.is_unit()) f.push_back(e);
  }
  return testing_support::scrambled_module(dom, f, torsion ? 0 : rng() % 2, rng);
}

Morphism random_hom(const FpModule& m, const FpModule& n, std::mt19937_64& rng) {
  HomModule h(m, n);
  Mat c = testing_support::random_mat(m.domain(), h.module().ambient_rank(), 1, rng, 6, 2);
  return h.realize(c);
}

FpModule torsion_of_order_pk(std::uint64_t p, std::mt19937_64& rng) {
  std::vector<long> f;
  for (std::size_t i = 1 + rng() % 3; i > 0; --i) {
    long q = 1;
    for (unsigned e = 1 + rng() % 3; e > 0; --e) q *= static_cast<long>(p);
    if (rng() % 3 == 0) q *= (p == 2 ? 3 : 2);
    f.push_back(q);
  }
  return testing_support::scrambled_module(Z, elems(f), 0, rng);
}

void expect_functor_laws(const FunctorSpec& f, const FpModule& a, const FpModule& b, const FpModule& c,
                         std::mt19937_64& rng) {
  Morphism g = random_hom(a, b, rng), g2 = random_hom(a, b, rng), h = random_hom(b, c, rng);
  Morphism fid = eval_mor(f, Morphism::identity(a));
  EXPECT_TRUE(fid.equals(Morphism::identity(eval(f, a)))) << kind_name(f);
  Morphism fg = eval_mor(f, g), fh = eval_mor(f, h);
  EXPECT_TRUE(eval_mor(f, compose(h, g)).equals(compose(fh, fg))) << kind_name(f) << " " << a.describe();
  EXPECT_TRUE(eval_mor(f, g + g2).equals(fg + eval_mor(f, g2))) << kind_name(f);
}

std::vector<FunctorSpec> law_variants() {
  FpModule m = mod(0, {6});
  Morphism pres(FpModule::free(Z, 2), mod(1, {4}), testing_support::int_mat({{2, 1}, {0, 3}}));
  OscillatingFunctor osc;
  osc.sets.emplace(Elem(2), ExponentSet::even());
  osc.sets.emplace(Elem(3), ExponentSet{{1}, {}});
  return {IdentityFunctor{},
          HomFromFunctor{mod(1, {4})},
          make_tor1(m),
          make_ext1(mod(0, {4, 12})),
          CoherentFunctor{pres},
          GammaFunctor{Ideal(Elem(2))},
          ModGammaFunctor{Ideal(Elem(6))},
          TauFunctor{CmcSet::explicit_set(elems({2, 4}))},
          ModTauFunctor{CmcSet::closure(elems({3}))},
          ComplexFunctor(Morphism(FpModule::free(Z, 1), FpModule::free(Z, 1), testing_support::int_mat({{4}})),
                         Morphism::zero(FpModule::free(Z, 1), FpModule::zero(Z)), 1),
          MiddleFiniteComplex::gamma_complex(Elem(3)),
          osc};
}

}  // namespace

TEST(Coherent, HomTorExtOfCyclicGroupsAgainstEnumeration) {
  for (long a = 2; a <= 12; ++a)
    for (long b = 2; b <= 12; ++b) {
      FpModule ma = mod(0, {a}), mb = mod(0, {b});
      auto [ker, coker] = oracle::mult_kernel_cokernel(a, b);
      auto want_hom = oracle::hom_invariant_factors({{a}}, {{b}});
      EXPECT_EQ(testing_support::to_longs(eval(HomFromFunctor{ma}, mb).factors()), want_hom);
      EXPECT_EQ(testing_support::to_longs(eval(make_tor1(ma), mb).factors()), oracle::cyclic(ker));
      EXPECT_EQ(testing_support::to_longs(eval(make_ext1(ma), mb).factors()), oracle::cyclic(coker));
    }
}

TEST(Coherent, TorAndExtExamples) {
  EXPECT_TRUE(eval(make_tor1(mod(1, {})), mod(0, {6})).is_zero());
  EXPECT_TRUE(eval(make_ext1(mod(1, {})), mod(0, {6})).is_zero());
  EXPECT_EQ(eval(make_ext1(mod(0, {4})), mod(1, {})).factors(), elems({4}));
  EXPECT_TRUE(eval(make_tor1(mod(0, {4})), mod(1, {})).is_zero());
  FunctorSpec tor0 = tor_ext_as_coherent(mod(0, {4}), TorExt::tor, 0);
  EXPECT_EQ(eval(tor0, mod(0, {6})).factors(), elems({2}));
  EXPECT_EQ(eval(tor0, mod(1, {})).factors(), elems({4}));
  EXPECT_EQ(kind_name(tor_ext_as_coherent(mod(0, {4}), TorExt::ext, 0)), "hom_from");
  EXPECT_THROW(tor_ext_as_coherent(mod(0, {4}), TorExt::ext, 2), std::invalid_argument);
}

TEST(Coherent, ExtAndTorMatchDirectResolutionOnRandomModules) {
  // Ext^1(M, N) and Tor_1(M, N) for M = (+) R/(a_i) split into pieces R/(gcd(a_i, n_j)).
  std::mt19937_64 rng(5);
  for (Domain dom : {Z, Domain::poly_mod(2), Domain::poly_mod(3)}) {
    for (int t = 0; t < 30; ++t) {
      FpModule m = random_module(dom, rng, false), n = random_module(dom, rng, false);
      std::vector<Elem> want;
      for (const Elem& a : m.factors()) {
        for (const Elem& b : n.factors()) {
          Elem g = gcd(a, b);
          if (!g.is_unit()) want.push_back(g);
        }
        for (std::size_t r = 0; r < n.rank(); ++r) want.push_back(a);
      }
      FpModule expect = FpModule::from_decomposition(dom, 0, want);
      EXPECT_TRUE(isomorphic(eval(make_ext1(m), n), expect)) << m.describe() << " " << n.describe();
      EXPECT_TRUE(isomorphic(eval(make_tor1(m), n), FpModule::from_decomposition(dom, 0, [&] {
                               std::vector<Elem> w;
                               for (const Elem& a : m.factors())
                                 for (const Elem& b : n.factors())
                                   if (!gcd(a, b).is_unit()) w.push_back(gcd(a, b));
                               return w;
                             }())));
    }
  }
}

TEST(Complex, RejectsNonComplexes) {
  Morphism d(FpModule::free(Z, 1), FpModule::free(Z, 1), testing_support::int_mat({{2}}));
  EXPECT_THROW(ComplexFunctor(d, d, 1), std::invalid_argument);
  Morphism z = Morphism::zero(FpModule::free(Z, 1), FpModule::free(Z, 1));
  EXPECT_THROW(ComplexFunctor(z, d, 3), std::invalid_argument);
}

TEST(MiddleFinite, GammaComplexAgreesWithLocalCohomology) {
  std::mt19937_64 rng(8);
  for (Domain dom : {Z, Domain::poly_mod(2), Domain::poly_mod(5)}) {
    for (int t = 0; t < 60; ++t) {
      FpModule n = random_module(dom, rng, true);
      Elem g = testing_support::random_elem(dom, rng, 12, 2);
      if (g.is_zero()) continue;
      auto sigma = MiddleFiniteComplex::gamma_complex(g);
      EXPECT_TRUE(isomorphic(middle_finite_eval(sigma, n), gamma(Ideal(g), n).sub))
          << g.to_string() << " " << n.describe();
    }
  }
}

TEST(MiddleFinite, LocalizedEndRejectsNonTorsionArguments) {
  auto sigma = MiddleFiniteComplex::gamma_complex(Elem(2));
  EXPECT_THROW(middle_finite_eval(sigma, mod(1, {4})), DomainViolation);
  EXPECT_THROW(MiddleFiniteComplex::gamma_complex(Elem(0)), std::invalid_argument);
  // A finite complex without localizations accepts any argument: Z -2-> Z -> 0.
  MiddleFiniteComplex plain({FpModule::free(Z, 1)}, FpModule::free(Z, 1), {}, testing_support::int_mat({{2}}),
                            Mat(Z, 0, 1));
  EXPECT_EQ(middle_finite_eval(plain, mod(1, {})).factors(), elems({2}));
  EXPECT_EQ(middle_finite_eval(plain, mod(0, {4})).factors(), elems({2}));
}

TEST(MiddleFinite, ValidatesLocalizedSourceSummand) {
  // Z[1/2] -> Z/3 is fine (2 acts invertibly), Z[1/2] -> Z/4 is not.
  FpModule r = FpModule::free(Z, 1);
  EXPECT_NO_THROW(MiddleFiniteComplex({LocModule{r, Elem(2)}}, mod(0, {3}), {}, testing_support::int_mat({{1}}),
                                      Mat(Z, 0, 1)));
  EXPECT_THROW(MiddleFiniteComplex({LocModule{r, Elem(2)}}, mod(0, {4}), {}, testing_support::int_mat({{1}}),
                                   Mat(Z, 0, 1)),
               std::invalid_argument);
}

TEST(Oscillating, ObjectRule) {
  OscillatingFunctor f;
  f.sets.emplace(Elem(2), ExponentSet::even());
  EXPECT_TRUE(eval(f, mod(0, {2})).is_zero());
  EXPECT_EQ(eval(f, mod(0, {4})).factors(), elems({2}));
  EXPECT_EQ(eval(f, mod(0, {4, 12, 16})).factors(), elems({2, 2, 2}));
  EXPECT_TRUE(eval(f, mod(0, {3, 9})).is_zero());
  // Free summands are dropped.
  EXPECT_EQ(eval(f, mod(2, {4})).factors(), elems({2}));
}

TEST(Oscillating, BlockRuleExample) {
  OscillatingFunctor f;
  f.sets.emplace(Elem(2), ExponentSet{{1, 2}, {}});
  SkeletonObject obj{{{Elem(2), 1}, {Elem(2), 2}}};
  Morphism g = osc_eval_mor(f, obj, obj, testing_support::int_mat({{1, 1}, {2, 1}}));
  EXPECT_EQ(g.images(), Mat::identity(Z, 2));
  // The lower-left entry must be a multiple of 2.
  EXPECT_THROW(osc_eval_mor(f, obj, obj, testing_support::int_mat({{1, 1}, {1, 1}})), std::invalid_argument);
  EXPECT_THROW((SkeletonObject{{{Elem(2), 2}, {Elem(2), 1}}}.validate()), std::invalid_argument);
}

TEST(Oscillating, SkeletonNormalizationIsAnIsomorphism) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    FpModule m = torsion_of_order_pk(2 + 1 * (t % 2), rng);
    SkeletonForm s = skeleton_of(m);
    s.object.validate();
    FpModule sk = s.object.module(Z);
    EXPECT_TRUE(isomorphic(sk, m));
    Morphism in(sk, m, s.generators);  // well defined
    EXPECT_TRUE(isomorphic(image_m(in).module(), m));
  }
}

TEST(Oscillating, FunctorialityPerPrime) {
  std::mt19937_64 rng(13);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    OscillatingFunctor f;
    f.sets.emplace(Elem(static_cast<long>(p)), p == 2 ? ExponentSet::even() : ExponentSet{{1, 3}, {}});
    for (int t = 0; t < 200; ++t) {
      FpModule a = torsion_of_order_pk(p, rng), b = torsion_of_order_pk(p, rng), c = torsion_of_order_pk(p, rng);
      expect_functor_laws(f, a, b, c, rng);
    }
  }
}

TEST(Functors, LawsOnRandomInputs) {
  std::mt19937_64 rng(21);
  auto variants = law_variants();
  for (const auto& f : variants) {
    bool torsion_only = std::holds_alternative<MiddleFiniteComplex>(f);
    for (int t = 0; t < 200; ++t) {
      FpModule a = random_module(Z, rng, torsion_only), b = random_module(Z, rng, torsion_only),
               c = random_module(Z, rng, torsion_only);
      expect_functor_laws(f, a, b, c, rng);
    }
  }
}

TEST(Functors, LawsOverPolynomialBackend) {
  std::mt19937_64 rng(22);
  Domain dom = Domain::poly_mod(3);
  Elem x = testing_support::poly(3, {0, 1});
  std::vector<FunctorSpec> variants{make_ext1(FpModule::cyclic(x * x)), make_tor1(FpModule::cyclic(x + dom.one())),
                                    GammaFunctor{Ideal(x)}, ModTauFunctor{CmcSet::closure({x})},
                                    MiddleFiniteComplex::gamma_complex(x)};
  for (const auto& f : variants)
    for (int t = 0; t < 40; ++t)
      expect_functor_laws(f, random_module(dom, rng, true), random_module(dom, rng, true),
                          random_module(dom, rng, true), rng);
}

TEST(Functors, AnnihilatorOfValueContainsAnnihilatorOfArgument) {
  std::mt19937_64 rng(31);
  auto variants = law_variants();
  for (const auto& f : variants)
    for (int t = 0; t < 60; ++t) {
      bool torsion_only = std::holds_alternative<MiddleFiniteComplex>(f);
      FpModule m = random_module(Z, rng, torsion_only);
      EXPECT_TRUE(ann(eval(f, m)).contains(ann(m).generator())) << kind_name(f) << " " << m.describe();
    }
}

TEST(Functors, GammaAndTauWrappers) {
  EXPECT_EQ(eval(GammaFunctor{Ideal(Elem(2))}, mod(1, {12})).factors(), elems({4}));
  EXPECT_EQ(eval(ModGammaFunctor{Ideal(Elem(2))}, mod(1, {12})).factors(), elems({3}));
  EXPECT_EQ(eval(ModGammaFunctor{Ideal(Elem(2))}, mod(1, {12})).rank(), 1u);
  EXPECT_EQ(eval(TauFunctor{CmcSet::explicit_set(elems({2}))}, mod(0, {4})).factors(), elems({2}));
  EXPECT_EQ(eval(ModTauFunctor{CmcSet::explicit_set(elems({2}))}, mod(0, {4})).factors(), elems({2}));
}
