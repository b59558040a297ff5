#pragma once

// Covariant R-linear functors on finitely presented modules.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "stab/invariants.hpp"

namespace stab {

/// F(N) = coker(Hom(L, N) -> Hom(K, N)) for a presenting map f: K -> L.
struct CoherentFunctor {
  Morphism f;
};

/// H_index(P2 (x) - -> P1 (x) - -> P0 (x) -), index in {0, 1, 2}.
struct ComplexFunctor {
  ComplexFunctor(Morphism d2, Morphism d1, int index);
  Morphism d2, d1;
  int index;
};

struct IdentityFunctor {};
struct HomFromFunctor {
  FpModule m;
};
struct Tor1Functor {
  FpModule m;
  ComplexFunctor complex;
};
struct Ext1Functor {
  FpModule m;
  CoherentFunctor coherent;
};
struct GammaFunctor {
  Ideal ideal;
};
/// id / Gamma_I.
struct ModGammaFunctor {
  Ideal ideal;
};
struct TauFunctor {
  CmcSet set;
};
/// id / tau_S.
struct ModTauFunctor {
  CmcSet set;
};

using EndSummand = std::variant<FpModule, LocModule>;

/// A -> B -> C with B finitely presented and A, C finite sums of modules and
/// localizations. Maps into a localized summand are given on its base.
class MiddleFiniteComplex {
 public:
  /// da is B.ambient x (sum of A ambients); db is (sum of C ambients) x
  /// B.ambient. Throws std::invalid_argument if a map is not well defined,
  /// the composite is not zero, or a localized summand of A does not map
  /// into a part of B on which its inverted element acts invertibly.
  MiddleFiniteComplex(std::vector<EndSummand> a, FpModule b, std::vector<EndSummand> c, Mat da, Mat db);

  /// 0 -> R -> R[1/g]: evaluates to Gamma_(g) on torsion modules.
  static MiddleFiniteComplex gamma_complex(const Elem& g);

  const std::vector<EndSummand>& a() const noexcept { return a_; }
  const FpModule& b() const noexcept { return b_; }
  const std::vector<EndSummand>& c() const noexcept { return c_; }
  const Mat& da() const noexcept { return da_; }
  const Mat& db() const noexcept { return db_; }
  bool has_localized_end() const;

 private:
  std::vector<EndSummand> a_;
  FpModule b_;
  std::vector<EndSummand> c_;
  Mat da_, db_;
};

/// The skeleton of finite torsion modules: R/p_1^e_1 (+) ... with primes in
/// increasing order and exponents nondecreasing within a prime.
struct SkeletonObject {
  struct Part {
    Elem prime;
    unsigned exponent;
    friend bool operator==(const Part&, const Part&) = default;
  };
  std::vector<Part> parts;

  /// Throws std::invalid_argument unless the parts are in skeleton order with
  /// canonical irreducible primes and positive exponents.
  void validate() const;
  /// The module itself; ambient coordinate i is part i.
  FpModule module(Domain dom) const;
  friend bool operator==(const SkeletonObject&, const SkeletonObject&) = default;
};

/// The skeleton object isomorphic to the torsion part of m, with the maps in
/// and out of skeleton coordinates.
struct SkeletonForm {
  SkeletonObject object;
  Mat generators;  // m.ambient x parts: the image of each part's generator
  std::vector<std::size_t> summand;  // summand of m that part i lives in
};
SkeletonForm skeleton_of(const FpModule& m);

/// F(R/P^e) = R/P if e lies in S_P and 0 otherwise, with the block rule on
/// morphisms. Primes without a set map to zero.
struct OscillatingFunctor {
  std::map<Elem, ExponentSet> sets;  // canonical prime -> S_P
  const ExponentSet* set_for(const Elem& prime) const;
  bool keeps(const SkeletonObject::Part& part) const;
};

FpModule osc_eval_obj(const OscillatingFunctor& f, const SkeletonObject& obj, Domain dom);
/// entries: target parts x source parts, acting by multiplication; must be a
/// well-defined map between the skeleton modules.
Morphism osc_eval_mor(const OscillatingFunctor& f, const SkeletonObject& source, const SkeletonObject& target,
                      const Mat& entries);

using FunctorSpec = std::variant<IdentityFunctor, HomFromFunctor, Tor1Functor, Ext1Functor, CoherentFunctor,
                                 GammaFunctor, ModGammaFunctor, TauFunctor, ModTauFunctor, ComplexFunctor,
                                 MiddleFiniteComplex, OscillatingFunctor>;

enum class TorExt { tor, ext };
/// Tor_i(M, -) or Ext^i(M, -) for i in {0, 1}: Ext^0 = hom_from(M), Ext^1 is
/// coherent via a free presentation 0 -> R^m -> R^k -> M -> 0, Tor_i is the
/// homology of that presentation tensored with the argument.
FunctorSpec tor_ext_as_coherent(const FpModule& m, TorExt which, int i);
Tor1Functor make_tor1(const FpModule& m);
Ext1Functor make_ext1(const FpModule& m);

/// Short tag, e.g. "ext1", "oscillating".
std::string kind_name(const FunctorSpec& f);

FpModule eval(const FunctorSpec& f, const FpModule& n);
Morphism eval_mor(const FunctorSpec& f, const Morphism& g);

/// Homology at B of sigma (x) N; throws DomainViolation for non-torsion N when
/// sigma has a localized end.
FpModule middle_finite_eval(const MiddleFiniteComplex& sigma, const FpModule& n);

/// The map a -> b induced by an ambient map sending a's generators into b.
Morphism induced_on_subquotients(const Subquotient& a, const Subquotient& b, const Mat& ambient_map);

}  // namespace stab
