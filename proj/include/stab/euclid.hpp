#pragma once

// Euclidean-domain backends: arbitrary-precision integers and univariate
// polynomials over a prime field F_p. Every higher layer manipulates ring
// elements only through the Elem interface declared here.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stab/errors.hpp"

namespace stab {

enum class Backend { integers, poly_mod_p };

class Elem;

/// Describes which Euclidean domain a value belongs to.
class Domain {
 public:
  Domain() = default;

  static Domain integers() noexcept { return Domain{}; }
  /// F_p[x]; throws std::invalid_argument unless p is prime.
  static Domain poly_mod(std::uint64_t p);

  Backend backend() const noexcept { return backend_; }
  /// 0 for the integers.
  std::uint64_t characteristic() const noexcept { return p_; }

  Elem zero() const;
  Elem one() const;
  Elem constant(long v) const;
  /// The indeterminate x; polynomial backend only.
  Elem variable() const;

  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  friend class Elem;
  Backend backend_ = Backend::integers;
  std::uint64_t p_ = 0;
};

namespace detail {
struct PolyRep {
  std::uint64_t p = 2;
  std::vector<std::uint64_t> c;  // low-to-high, no trailing zeros
  friend bool operator==(const PolyRep&, const PolyRep&) = default;
};
}  // namespace detail

/// A ring element of one of the backends. Values are immutable in spirit:
/// every operation returns a fresh element in canonical storage form.
class Elem {
 public:
  Elem() = default;
  Elem(long v) : rep_(mpz_class(v)) {}  // NOLINT: integers convert implicitly
  explicit Elem(mpz_class v) : rep_(std::move(v)) {}

  static Elem integer(const std::string& decimal);
  /// Polynomial with coefficients low-to-high; coefficients reduced mod p.
  static Elem poly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  static Elem poly_signed(std::uint64_t p, const std::vector<long long>& coeffs);

  Domain domain() const;
  bool is_integer() const noexcept { return rep_.index() == 0; }
  const mpz_class& integer_value() const;
  const std::vector<std::uint64_t>& coeffs() const;
  std::uint64_t characteristic() const;
  /// Polynomial degree, -1 for the zero polynomial.
  int degree() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;

  Elem operator-() const;
  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  Elem& operator+=(const Elem& b) { return *this = *this + b; }
  Elem& operator-=(const Elem& b) { return *this = *this - b; }
  Elem& operator*=(const Elem& b) { return *this = *this * b; }
  Elem pow(unsigned long e) const;

  /// Euclidean division a = q*b + r with r canonical: 0 <= r < |b| for the
  /// integers, deg r < deg b for polynomials. b must be nonzero.
  std::pair<Elem, Elem> divmod(const Elem& b) const;
  /// Canonical remainder modulo m; returns *this when m == 0.
  Elem mod(const Elem& m) const;
  /// Exact quotient; throws std::invalid_argument if b does not divide *this.
  Elem exact_div(const Elem& b) const;
  /// True iff *this divides a (0 divides only 0).
  bool divides(const Elem& a) const;

  /// Canonical associate: nonnegative integer or monic polynomial.
  Elem canonical() const;
  /// The unit u with *this == u * canonical(); one() for zero.
  Elem unit_part() const;
  /// Inverse of a unit; throws std::invalid_argument otherwise.
  Elem unit_inverse() const;

  /// Strict comparison of Euclidean norms (|a| or degree); used for pivoting.
  bool norm_less(const Elem& b) const;

  std::string to_string() const;

  friend bool operator==(const Elem& a, const Elem& b);
  /// Total order within one backend: integers by value, polynomials by
  /// degree then coefficients from the top.
  friend std::strong_ordering operator<=>(const Elem& a, const Elem& b);

 private:
  explicit Elem(detail::PolyRep r) : rep_(std::move(r)) {}
  const detail::PolyRep& poly_rep() const;
  void same_backend(const Elem& b, const char* op) const;

  std::variant<mpz_class, detail::PolyRep> rep_;
};

/// An irreducible element in canonical form with a multiplicity.
struct PrimePower {
  Elem prime;
  unsigned multiplicity = 1;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct GcdExt {
  Elem g, u, v;  // g = u*a + v*b, g canonical
};

GcdExt gcd_ext(const Elem& a, const Elem& b);
Elem gcd(const Elem& a, const Elem& b);
/// Canonical lcm; 0 if either argument is 0.
Elem lcm(const Elem& a, const Elem& b);

/// Factorization into canonical pairwise non-associate primes, sorted by
/// prime. Throws std::invalid_argument on zero. Units factor as {}.
///
/// Integers: trial division then Pollard-Brent rho. Polynomials: square-free
/// split, distinct-degree, then equal-degree (Cantor-Zassenhaus) splitting.
/// Intended for desk-scale inputs: integer prime factors up to ~64 bits.
std::vector<PrimePower> factor(const Elem& a);

/// The largest divisor d' of d supported on primes dividing g, so that no
/// prime of d/d' divides g. Canonical. Throws std::invalid_argument on d == 0.
Elem saturate_part(const Elem& d, const Elem& g);

/// True iff a is irreducible (nonzero nonunit with a single prime factor of
/// multiplicity one).
bool is_irreducible(const Elem& a);

}  // namespace stab
