#include <algorithm>
#include <map>
#include <random>

#include "poly_fp.hpp"
#include "stab/euclid.hpp"

namespace stab {

namespace pf = detail::polyfp;

GcdExt gcd_ext(const Elem& a, const Elem& b) {
  if (a.domain() != b.domain()) throw BackendMismatch("gcd_ext");
  Domain dom = a.domain();
  if (a.is_integer()) {
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.integer_value().get_mpz_t(),
               b.integer_value().get_mpz_t());
    return {Elem(g), Elem(s), Elem(t)};
  }
  // Invariant: r0 = s0*a + t0*b, r1 = s1*a + t1*b.
  Elem r0 = a, r1 = b;
  Elem s0 = dom.one(), s1 = dom.zero();
  Elem t0 = dom.zero(), t1 = dom.one();
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  Elem inv = r0.unit_part().unit_inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

Elem gcd(const Elem& a, const Elem& b) {
  if (a.is_integer() && b.is_integer()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.integer_value().get_mpz_t(), b.integer_value().get_mpz_t());
    return Elem(std::move(g));
  }
  return gcd_ext(a, b).g;
}

Elem lcm(const Elem& a, const Elem& b) {
  if (a.domain() != b.domain()) throw BackendMismatch("lcm");
  if (a.is_zero() || b.is_zero()) return a.domain().zero();
  return (a * b).exact_div(gcd(a, b)).canonical();
}

namespace {

mpz_class pollard_brent(const mpz_class& n, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::uniform_int_distribution<unsigned long> dist(1, 1UL << 40);
  for (;;) {
    mpz_class y = dist(rng) % n, c = dist(rng) % n, g = 1, r = 1, q = 1, x, ys;
    const unsigned long m = 64;
    auto f = [&](const mpz_class& v) {
      mpz_class w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    while (g == 1) {
      x = y;
      for (mpz_class i = 0; i < r; ++i) y = f(y);
      mpz_class k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (mpz_class i = 0; i < m && i < r - k; ++i) {
          y = f(y);
          mpz_class diff = abs(x - y);
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_integer(mpz_class n, std::map<mpz_class, unsigned>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n, rng);
  factor_integer(d, out, rng);
  factor_integer(n / d, out, rng);
}

}  // namespace

std::vector<PrimePower> factor(const Elem& a) {
  if (a.is_zero()) throw std::invalid_argument("factor of zero");
  std::vector<PrimePower> result;
  if (a.is_unit()) return result;
  if (a.is_integer()) {
    mpz_class n = abs(a.integer_value());
    std::map<mpz_class, unsigned> primes;
    for (unsigned long p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        ++primes[mpz_class(p)];
        n /= p;
      }
    }
    std::mt19937_64 rng(0x5eedf00dULL);
    factor_integer(n, primes, rng);
    for (auto& [p, m] : primes) result.push_back({Elem(p), m});
    return result;
  }
  std::uint64_t p = a.characteristic();
  auto parts = pf::factor_monic(pf::monic(a.coeffs(), p), p);
  std::map<std::vector<std::uint64_t>, unsigned> merged;
  for (auto& [q, m] : parts) merged[q] += m;
  for (auto& [q, m] : merged) result.push_back({Elem::poly(p, q), m});
  std::sort(result.begin(), result.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
  return result;
}

Elem saturate_part(const Elem& d, const Elem& g) {
  if (d.is_zero()) throw std::invalid_argument("saturate_part of zero");
  if (g.is_zero()) return d.canonical();
  Elem part = d.domain().one();
  Elem rest = d;
  // Every prime common to rest and g divides h; after rest /= h they all
  // still divide the new h = gcd(rest, h).
  Elem h = gcd(rest, g);
  while (!h.is_unit()) {
    rest = rest.exact_div(h);
    part *= h;
    h = gcd(rest, h);
  }
  return part.canonical();
}

bool is_irreducible(const Elem& a) {
  if (a.is_zero() || a.is_unit()) return false;
  auto f = factor(a);
  return f.size() == 1 && f[0].multiplicity == 1;
}

}  // namespace stab
