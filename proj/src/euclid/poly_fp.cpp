#include "poly_fp.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace stab::detail::polyfp {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::invalid_argument("inverse of zero in F_p");
  return pow_mod(a, p - 2, p);
}

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs add(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = add_mod(x, y, p);
  }
  trim(r);
  return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = sub_mod(x, y, p);
  }
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

Coeffs scale(const Coeffs& a, std::uint64_t s, std::uint64_t p) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], s, p);
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  Coeffs r = a;
  if (r.size() < b.size()) return {{}, r};
  Coeffs q(r.size() - b.size() + 1, 0);
  std::uint64_t lead_inv = inv_mod(b.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t coef = mul_mod(r[k + b.size() - 1], lead_inv, p);
    q[k] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[k + j] = sub_mod(r[k + j], mul_mod(coef, b[j], p), p);
  }
  trim(q);
  trim(r);
  return {q, r};
}

Coeffs rem(const Coeffs& a, const Coeffs& b, std::uint64_t p) {
  return divmod(a, b, p).second;
}

Coeffs monic(const Coeffs& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, inv_mod(a.back(), p), p);
}

Coeffs gcd(Coeffs a, Coeffs b, std::uint64_t p) {
  while (!b.empty()) {
    Coeffs r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Coeffs derivative(const Coeffs& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  Coeffs r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul_mod(a[i], i % p, p);
  trim(r);
  return r;
}

Coeffs powmod(const Coeffs& base, const mpz_class& e, const Coeffs& m, std::uint64_t p) {
  Coeffs result = rem(Coeffs{1}, m, p);
  Coeffs b = rem(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (sgn(e) == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
  }
  return result;
}

namespace {

bool is_one(const Coeffs& a) { return a.size() == 1 && a[0] == 1; }

// a(x) = b(x)^p in F_p[x] (Frobenius is the identity on F_p coefficients).
Coeffs pth_root(const Coeffs& a, std::uint64_t p) {
  Coeffs r;
  for (std::size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
  trim(r);
  return r;
}

void squarefree(const Coeffs& f, std::uint64_t p, unsigned mult_scale,
                std::vector<std::pair<Coeffs, unsigned>>& out) {
  if (degree(f) < 1) return;
  Coeffs d = derivative(f, p);
  if (d.empty()) {
    squarefree(pth_root(f, p), p, mult_scale * static_cast<unsigned>(p), out);
    return;
  }
  Coeffs c = gcd(f, d, p);
  Coeffs w = divmod(f, c, p).first;
  unsigned i = 1;
  while (!is_one(w)) {
    Coeffs y = gcd(w, c, p);
    Coeffs z = divmod(w, y, p).first;
    if (degree(z) >= 1) out.emplace_back(monic(z, p), i * mult_scale);
    ++i;
    w = y;
    c = divmod(c, y, p).first;
  }
  if (degree(c) >= 1)
    squarefree(pth_root(c, p), p, mult_scale * static_cast<unsigned>(p), out);
}

std::vector<std::pair<Coeffs, unsigned>> distinct_degree(Coeffs f, std::uint64_t p) {
  std::vector<std::pair<Coeffs, unsigned>> parts;
  Coeffs x{0, 1};
  Coeffs h = rem(x, f, p);
  mpz_class pe(static_cast<unsigned long>(p));
  unsigned i = 1;
  while (degree(f) >= 2 * static_cast<int>(i)) {
    h = powmod(h, pe, f, p);
    Coeffs g = gcd(f, sub(h, x, p), p);
    if (!is_one(g)) {
      parts.emplace_back(g, i);
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
    }
    ++i;
  }
  if (degree(f) >= 1) parts.emplace_back(f, static_cast<unsigned>(degree(f)));
  return parts;
}

void equal_degree(const Coeffs& f, unsigned d, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<Coeffs>& out) {
  if (degree(f) == static_cast<int>(d)) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
  mpz_class half = (pd - 1) / 2;
  for (;;) {
    Coeffs a(static_cast<std::size_t>(degree(f)));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Coeffs b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) splits over F_2.
      Coeffs t = a;
      b = a;
      for (unsigned k = 1; k < d; ++k) {
        t = rem(mul(t, t, p), f, p);
        b = add(b, t, p);
      }
    } else {
      b = sub(powmod(a, half, f, p), Coeffs{1}, p);
    }
    Coeffs g = gcd(f, b, p);
    if (degree(g) >= 1 && degree(g) < degree(f)) {
      equal_degree(g, d, p, rng, out);
      equal_degree(divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Coeffs, unsigned>> factor_monic(const Coeffs& f, std::uint64_t p) {
  std::vector<std::pair<Coeffs, unsigned>> sqf;
  squarefree(f, p, 1, sqf);
  std::vector<std::pair<Coeffs, unsigned>> result;
  std::mt19937_64 rng(0x5eedf00dULL);
  for (const auto& [g, mult] : sqf) {
    for (const auto& [part, d] : distinct_degree(g, p)) {
      std::vector<Coeffs> irreducibles;
      equal_degree(part, d, p, rng, irreducibles);
      for (auto& q : irreducibles) result.emplace_back(monic(q, p), mult);
    }
  }
  return result;
}

}  // namespace stab::detail::polyfp
