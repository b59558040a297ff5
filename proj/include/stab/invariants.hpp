#pragma once

// Associated primes, annihilators, depth, local cohomology Gamma_I and the
// S-torsion functor tau_S over a principal ideal domain.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "stab/fpmod.hpp"

namespace stab {

/// (0) or (p) with p irreducible and canonical.
class PrimeIdeal {
 public:
  static PrimeIdeal zero(Domain dom) { return PrimeIdeal(dom.zero()); }
  /// Throws std::invalid_argument unless p is irreducible.
  static PrimeIdeal of(const Elem& p);

  const Elem& generator() const noexcept { return g_; }
  bool is_zero() const { return g_.is_zero(); }
  /// P contains I, i.e. P lies in V(I).
  bool contains(const Ideal& ideal) const;
  bool contains(const Elem& x) const { return g_.divides(x); }
  /// "(0)", "(2)", "(x^2+x+1)".
  std::string to_string() const { return "(" + g_.to_string() + ")"; }

  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
  /// (0) first, then by generator.
  friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b);

 private:
  explicit PrimeIdeal(Elem g) : g_(std::move(g)) {}
  Elem g_;
};

/// A finite set of primes, kept sorted and without duplicates.
class AssSet {
 public:
  AssSet() = default;
  explicit AssSet(std::vector<PrimeIdeal> primes);

  const std::vector<PrimeIdeal>& primes() const noexcept { return primes_; }
  bool empty() const { return primes_.empty(); }
  std::size_t size() const { return primes_.size(); }
  bool contains(const PrimeIdeal& p) const;
  void insert(const PrimeIdeal& p);

  /// Members lying in V(I).
  AssSet restrict_to(const Ideal& ideal) const;
  /// Members outside V(I).
  AssSet remove(const Ideal& ideal) const;
  std::vector<std::string> to_strings() const;
  std::string to_string() const;  // "{(0), (2)}"

  friend bool operator==(const AssSet&, const AssSet&) = default;

 private:
  std::vector<PrimeIdeal> primes_;
};

enum class Depth { zero, one, infinite };
std::string to_string(Depth d);  // "0", "1", "inf"

/// Exponents E = (finite list) u (start + step * N), all positive.
struct ExponentSet {
  struct Progression {
    unsigned start = 1, step = 1;
    friend bool operator==(const Progression&, const Progression&) = default;
  };
  std::vector<unsigned> finite;
  std::vector<Progression> progressions;

  static ExponentSet list(std::vector<unsigned> values);
  static ExponentSet even() { return {{}, {{2, 2}}}; }
  static ExponentSet odd() { return {{}, {{1, 2}}}; }

  bool contains(unsigned e) const;
  bool is_finite() const { return progressions.empty(); }
  std::optional<unsigned> max() const;
  bool closed_under_addition() const;
  /// Throws std::invalid_argument on a zero exponent or a zero step.
  void validate() const;

  friend bool operator==(const ExponentSet&, const ExponentSet&) = default;
};

/// A subset S of R: an explicit finite list, the multiplicative closure of
/// finitely many generators, or a power family {a^e : e in E}.
class CmcSet {
 public:
  enum class Kind { explicit_list, closure, power_family };

  static CmcSet explicit_set(std::vector<Elem> elements);
  static CmcSet closure(std::vector<Elem> generators);
  static CmcSet power_family(Elem base, ExponentSet exponents);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Elem>& elements() const noexcept { return elems_; }
  const Elem& base() const { return elems_.front(); }
  const ExponentSet& exponents() const noexcept { return exps_; }
  Domain domain() const;
  bool contains(const Elem& x) const;
  std::string describe() const;

 private:
  CmcSet(Kind k, std::vector<Elem> e, ExponentSet x) : kind_(k), elems_(std::move(e)), exps_(std::move(x)) {}
  Kind kind_;
  std::vector<Elem> elems_;  // the list, the generators, or {a}
  ExponentSet exps_;
};

/// For every r, s in S some element of S lies in (lcm(r, s)).
bool is_cmc(const CmcSet& s);
/// Some element of S is divisible by every element of S.
bool is_coprincipal(const CmcSet& s);
std::optional<Elem> cogenerator(const CmcSet& s);
/// Closed under products of pairs.
bool is_mult_closed(const CmcSet& s);
/// P n S is nonempty.
bool meets(const PrimeIdeal& p, const CmcSet& s);

AssSet ass(const FpModule& m);
Ideal ann(const FpModule& m);
Depth depth(const Ideal& j, const FpModule& m);

/// A submodule G of M together with M/G.
struct SubmoduleSplit {
  Mat gens;  // in M's ambient coordinates
  FpModule sub;
  Morphism inclusion;
  FpModule quotient;
  Morphism projection;
};
SubmoduleSplit split_off(const FpModule& m, const Mat& gens);

/// Generators of (0 :_M r).
Mat colon_generators(const FpModule& m, const Elem& r);

/// Gamma_I(M) = elements killed by a power of I.
SubmoduleSplit gamma(const Ideal& ideal, const FpModule& m);
/// tau_S(M) = elements killed by some element of S; requires S cmc.
SubmoduleSplit tau(const CmcSet& s, const FpModule& m);
/// Generators of tau_S(M) without building the split.
Mat tau_generators(const CmcSet& s, const FpModule& m);

}  // namespace stab
