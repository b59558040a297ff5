#pragma once

// Dense polynomial arithmetic over F_p on raw coefficient vectors
// (low-to-high, no trailing zeros). Internal to the euclid module.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace stab::detail::polyfp {

using Coeffs = std::vector<std::uint64_t>;

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  if (s < a || s >= p) s -= p;
  return s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

void trim(Coeffs& a);
inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

Coeffs add(const Coeffs& a, const Coeffs& b, std::uint64_t p);
Coeffs sub(const Coeffs& a, const Coeffs& b, std::uint64_t p);
Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint64_t p);
Coeffs scale(const Coeffs& a, std::uint64_t s, std::uint64_t p);
std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::uint64_t p);
Coeffs rem(const Coeffs& a, const Coeffs& b, std::uint64_t p);
Coeffs monic(const Coeffs& a, std::uint64_t p);
Coeffs gcd(Coeffs a, Coeffs b, std::uint64_t p);
Coeffs derivative(const Coeffs& a, std::uint64_t p);
Coeffs powmod(const Coeffs& base, const mpz_class& e, const Coeffs& m, std::uint64_t p);

/// Factorization of a monic nonconstant polynomial into monic irreducibles
/// with multiplicities (unsorted, possibly with repeated primes).
std::vector<std::pair<Coeffs, unsigned>> factor_monic(const Coeffs& f, std::uint64_t p);

}  // namespace stab::detail::polyfp
