#pragma once

// The category of finitely presented modules over a Euclidean backend.
//
// A module is R^k modulo the column span of a k x m relation matrix. Its
// invariant-factor decomposition R^r (+) R/(d_1) (+) ... (+) R/(d_s) is
// computed once, at construction, from the Smith form of the relations.
// Submodules never exist as objects of their own: they are generator
// matrices in the ambient R^k of the module that contains them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stab/matnf.hpp"

namespace stab {

/// A principal ideal (g), stored by its canonical generator.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(const Elem& generator) : g_(generator.canonical()) {}

  const Elem& generator() const noexcept { return g_; }
  Domain domain() const { return g_.domain(); }
  bool is_zero() const { return g_.is_zero(); }
  bool is_unit_ideal() const { return g_.is_unit(); }
  bool contains(const Elem& x) const { return g_.divides(x); }
  /// Generator of I^n; I^0 = R.
  Elem power_generator(unsigned n) const { return n == 0 ? g_.domain().one() : g_.pow(n); }
  std::string to_string() const { return "(" + g_.to_string() + ")"; }

  friend bool operator==(const Ideal&, const Ideal&) = default;

 private:
  Elem g_ = Elem(0L);
};

class FpModule {
 public:
  /// The zero module over the integers.
  FpModule();
  /// coker(relations); the ambient rank is relations.rows().
  explicit FpModule(const Mat& relations);

  static FpModule free(Domain dom, std::size_t rank);
  static FpModule zero(Domain dom) { return free(dom, 0); }
  /// R/(d).
  static FpModule cyclic(const Elem& d);
  /// R^rank (+) R/(f_1) (+) ...; factors need not form a chain.
  static FpModule from_decomposition(Domain dom, std::size_t rank,
                                     const std::vector<Elem>& factors);

  const Domain& domain() const;
  std::size_t ambient_rank() const;
  const Mat& relations() const;

  /// Free rank r of M = R^r (+) (+)_i R/(d_i).
  std::size_t rank() const;
  /// Nonunit invariant factors d_1 | d_2 | ... (canonical).
  const std::vector<Elem>& factors() const;
  bool is_zero() const { return rank() == 0 && factors().empty(); }
  bool is_torsion() const { return rank() == 0; }

  /// Canonical summands: the invariant factors in chain order followed by
  /// one 0 per free summand.
  const std::vector<Elem>& summand_moduli() const;
  std::size_t num_summands() const { return summand_moduli().size(); }
  /// ambient x s; column j generates summand j.
  const Mat& summand_generators() const;
  /// Coordinates (s x c) of ambient columns x, reduced modulo each summand.
  Mat summand_coords(const Mat& x) const;
  /// Unreduced projection ambient -> summand coordinates (s x ambient).
  const Mat& summand_projection() const;

  /// True iff every column of x is zero in the module.
  bool is_zero_element(const Mat& x) const;
  const Solver& relation_solver() const;

  /// e.g. "Z^1 + Z/(8)" or "0".
  std::string describe() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Equal rank and invariant factors.
bool isomorphic(const FpModule& a, const FpModule& b);

/// An R-linear map given by the images of the source's ambient generators.
class Morphism {
 public:
  /// images is target.ambient_rank() x source.ambient_rank(). Throws
  /// std::invalid_argument unless every source relation maps to zero.
  Morphism(FpModule source, FpModule target, Mat images);

  static Morphism identity(const FpModule& m);
  static Morphism zero(const FpModule& source, const FpModule& target);

  const FpModule& source() const noexcept { return src_; }
  const FpModule& target() const noexcept { return tgt_; }
  const Mat& images() const noexcept { return images_; }

  Mat apply(const Mat& x) const { return images_ * x; }
  Morphism operator+(const Morphism& g) const;
  Morphism operator-(const Morphism& g) const;
  Morphism scaled(const Elem& r) const;

  /// Equality of maps, decided by solving the difference against the
  /// target relations.
  bool equals(const Morphism& g) const;
  bool is_zero() const;

 private:
  FpModule src_, tgt_;
  Mat images_;
};

/// g o f.
Morphism compose(const Morphism& g, const Morphism& f);

/// (<gens> + rel) / (<denominators> + rel) inside an ambient module, with its
/// own presentation on the given generators.
class Subquotient {
 public:
  Subquotient(FpModule ambient, Mat gens, Mat denominators);
  Subquotient(FpModule ambient, Mat gens);

  const FpModule& module() const noexcept { return module_; }
  const FpModule& ambient() const noexcept { return ambient_; }
  const Mat& gens() const noexcept { return gens_; }
  const Mat& denominators() const noexcept { return denoms_; }

  /// Coordinates in module() of ambient elements lying in <gens> + <denominators>
  /// + rel; nullopt if some column does not.
  std::optional<Mat> coords(const Mat& v) const;
  /// The natural map module() -> ambient / <denominators>.
  Morphism inclusion() const;

 private:
  FpModule ambient_;
  Mat gens_, denoms_;
  FpModule module_;
  std::shared_ptr<const Solver> solver_;  // over [gens | denominators | relations]
};

/// Columns of a lie in <b> + relations of m.
bool submodule_contains(const FpModule& m, const Mat& b, const Mat& a);
/// Generators of <a> intersect <b> inside m.
Mat submodule_intersection(const FpModule& m, const Mat& a, const Mat& b);

// ---- structure -------------------------------------------------------------

struct Decomposition {
  std::size_t rank = 0;
  std::vector<Elem> factors;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};
Decomposition decompose(const FpModule& m);

FpModule direct_sum(const FpModule& a, const FpModule& b);
FpModule direct_sum(const std::vector<FpModule>& parts, Domain dom);
/// Block-diagonal map a (+) b.
Morphism direct_sum(const Morphism& f, const Morphism& g);

FpModule tensor(const FpModule& a, const FpModule& b);
/// f (x) g : A (x) B -> A' (x) B'.
Morphism tensor(const Morphism& f, const Morphism& g);

// ---- Hom -------------------------------------------------------------------

/// Hom(M, N) built from the decompositions: Hom(R, R/(b)) = R/(b) via 1 -> 1,
/// Hom(R/(a), R/(b)) = R/(gcd(a, b)) via 1 -> b/gcd(a, b), Hom(R/(a), R) = 0
/// for a != 0. Generators are ordered by source summand then target summand.
class HomModule {
 public:
  HomModule(FpModule source, FpModule target);

  const FpModule& module() const noexcept { return module_; }
  const FpModule& source() const noexcept { return src_; }
  const FpModule& target() const noexcept { return tgt_; }

  /// The morphism represented by an element (column) of module().
  Morphism realize(const Mat& element) const;
  /// The element of module() representing phi (inverse of realize).
  Mat coordinates(const Morphism& phi) const;

 private:
  struct Slot {
    std::size_t source_summand, target_summand;
    Elem multiplier;  // image of the source summand generator, in target coords
    Elem order;       // modulus of this cyclic piece of Hom
  };
  FpModule src_, tgt_, module_;
  std::vector<Slot> slots_;
};

HomModule hom(const FpModule& m, const FpModule& n);
/// Precomposition with f: K -> L, as a map Hom(L, N) -> Hom(K, N).
Morphism hom_induced(const Morphism& f, const HomModule& hom_l, const HomModule& hom_k);
Morphism hom_induced(const Morphism& f, const FpModule& n);
/// Postcomposition with g: N -> N', as a map Hom(K, N) -> Hom(K, N').
Morphism hom_post(const Morphism& g, const HomModule& hom_n, const HomModule& hom_n2);

// ---- kernels, cokernels, homology -----------------------------------------

/// ker f as a submodule of the source (gens in source ambient).
Subquotient kernel_m(const Morphism& f);
/// im f as a submodule of the target (gens = f's images).
Subquotient image_m(const Morphism& f);

struct Cokernel {
  FpModule module;
  Morphism projection;
};
Cokernel cokernel_m(const Morphism& f);

/// ker g / im f for X -f-> Y -g-> Z with g o f = 0.
Subquotient homology(const Morphism& f, const Morphism& g);

// ---- ideal-power constructions ---------------------------------------------

/// T_n = (U + I^n V) / I^n W inside T; requires W inside V + rel(T).
Subquotient subquotient(const FpModule& t, const Mat& u, const Mat& v, const Mat& w,
                        const Ideal& ideal, unsigned n);

/// M / I^n M.
FpModule power_quotient(const FpModule& m, const Ideal& ideal, unsigned n);
/// I^(n-1) M / I^n M, n >= 1.
FpModule power_layer(const FpModule& m, const Ideal& ideal, unsigned n);

// ---- localization -----------------------------------------------------------

/// base localized at x (x != 0): base (x) R[1/x].
struct LocModule {
  FpModule base;
  Elem inverted;
};

/// Generators (in ambient coordinates) of the x-power torsion
/// Gamma_(x)(M) = { m : x^k m = 0 for some k }.
Mat x_torsion_generators(const FpModule& m, const Elem& x);

/// M -> M / Gamma_(x)(M). For torsion M this is the localization M -> M_x.
Cokernel kill_x_torsion(const FpModule& m, const Elem& x);

/// (base (x) N)_x for torsion N, i.e. base (x) N with the x-primary part of
/// every invariant factor removed. Throws DomainViolation for non-torsion N.
FpModule loc_tensor(const LocModule& lx, const FpModule& n);

}  // namespace stab
