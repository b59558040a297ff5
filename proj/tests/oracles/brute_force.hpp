#pragma once

// Enumeration oracles for small finite modules. Nothing here calls into the
// library's normal forms, gcds or factorization; everything is counted.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;

/// Z/o_1 (+) ... (+) Z/o_k with every o_i >= 1, elements as mixed-radix tuples.
struct FiniteGroup {
  std::vector<long> orders;

  long size() const {
    long s = 1;
    for (long o : orders) s *= o;
    return s;
  }
  Vec element(long index) const {
    Vec v(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      v[i] = index % orders[i];
      index /= orders[i];
    }
    return v;
  }
  std::vector<Vec> elements() const {
    std::vector<Vec> out;
    for (long i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
  }
  Vec scale(const Vec& v, long r) const {
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = ((v[i] * r) % orders[i] + orders[i]) % orders[i];
    return w;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) w[i] = (a[i] + b[i]) % orders[i];
    return w;
  }
  static bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
  }
};

inline bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Trial-division factorization of n >= 1 as prime -> multiplicity.
inline std::map<long, unsigned> trial_factor(long n) {
  std::map<long, unsigned> out;
  for (long d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  if (n > 1) ++out[n];
  return out;
}

/// Invariant factors (nonunit, ascending chain) of a finite abelian group of
/// the given order, from the function r -> #{x : r x = 0}.
inline std::vector<long> invariant_factors_by_counting(long order,
                                                        const std::function<long(long)>& killed_by) {
  // For each prime p: the number of cyclic p-parts of order >= p^k is
  // log_p(|G[p^k]| / |G[p^(k-1)]|).
  std::map<long, std::vector<unsigned>> exps;  // prime -> exponents, descending
  for (auto [p, m] : trial_factor(order)) {
    std::vector<unsigned> at_least;  // at_least[k-1] = #parts with exponent >= k
    long prev = 1, pk = 1;
    for (unsigned k = 1; k <= m; ++k) {
      pk *= p;
      long cur = killed_by(pk);
      long ratio = cur / prev, c = 0;
      while (ratio > 1) {
        ratio /= p;
        ++c;
      }
      at_least.push_back(static_cast<unsigned>(c));
      prev = cur;
    }
    std::vector<unsigned> parts;
    for (unsigned k = 1; k <= at_least.size(); ++k) {
      unsigned exact = at_least[k - 1] - (k < at_least.size() ? at_least[k] : 0);
      for (unsigned t = 0; t < exact; ++t) parts.push_back(k);
    }
    std::sort(parts.rbegin(), parts.rend());
    exps[p] = parts;
  }
  std::size_t len = 0;
  for (auto& [p, v] : exps) len = std::max(len, v.size());
  std::vector<long> out(len, 1);
  for (auto& [p, v] : exps)
    for (std::size_t i = 0; i < v.size(); ++i)
      for (unsigned t = 0; t < v[i]; ++t) out[len - 1 - i] *= p;
  return out;
}

inline std::vector<long> invariant_factors(const FiniteGroup& g) {
  auto els = g.elements();
  return invariant_factors_by_counting(g.size(), [&](long r) {
    return static_cast<long>(
        std::count_if(els.begin(), els.end(), [&](const Vec& v) { return FiniteGroup::is_zero(g.scale(v, r)); }));
  });
}

/// Primes p such that some element has annihilator exactly (p).
inline std::set<long> ass_primes(const FiniteGroup& g) {
  std::set<long> out;
  for (const auto& v : g.elements()) {
    if (FiniteGroup::is_zero(v)) continue;
    long ord = 1;
    while (!FiniteGroup::is_zero(g.scale(v, ord))) ++ord;
    if (is_prime_small(ord)) out.insert(ord);
  }
  return out;
}

/// All Z-linear maps G -> H, as tuples of generator images, found by trying
/// every assignment and checking additivity on all pairs of elements.
inline std::vector<std::vector<Vec>> all_homs(const FiniteGroup& g, const FiniteGroup& h) {
  auto hels = h.elements();
  auto gels = g.elements();
  std::vector<std::vector<Vec>> out;
  std::vector<std::size_t> pick(g.orders.size(), 0);
  for (;;) {
    std::vector<Vec> imgs;
    for (auto i : pick) imgs.push_back(hels[i]);
    auto apply = [&](const Vec& x) {
      Vec y(h.orders.size(), 0);
      for (std::size_t i = 0; i < x.size(); ++i) y = h.add(y, h.scale(imgs[i], x[i]));
      return y;
    };
    bool ok = true;
    // Well defined: o_i e_i = 0 must map to zero.
    for (std::size_t i = 0; i < imgs.size() && ok; ++i)
      if (!FiniteGroup::is_zero(h.scale(imgs[i], g.orders[i]))) ok = false;
    for (std::size_t a = 0; a < gels.size() && ok; ++a)
      for (std::size_t b = 0; b < gels.size() && ok; ++b)
        if (apply(g.add(gels[a], gels[b])) != h.add(apply(gels[a]), apply(gels[b]))) ok = false;
    if (ok) out.push_back(imgs);
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == hels.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

/// Invariant factors of Hom(G, H), by counting the maps killed by r.
inline std::vector<long> hom_invariant_factors(const FiniteGroup& g, const FiniteGroup& h) {
  auto homs = all_homs(g, h);
  return invariant_factors_by_counting(static_cast<long>(homs.size()), [&](long r) {
    long c = 0;
    for (const auto& f : homs)
      if (std::all_of(f.begin(), f.end(), [&](const Vec& v) { return FiniteGroup::is_zero(h.scale(v, r)); }))
        ++c;
    return c;
  });
}

/// #ker and #coker of multiplication by a on Z/b.
inline std::pair<long, long> mult_kernel_cokernel(long a, long b) {
  std::set<long> image;
  long ker = 0;
  for (long x = 0; x < b; ++x) {
    long y = ((a % b) * x) % b;
    if (y < 0) y += b;
    image.insert(y);
    if (y == 0) ++ker;
  }
  return {ker, b / static_cast<long>(image.size())};
}

/// Invariant factors of a cyclic group of order n (subgroups and quotients of
/// cyclic groups are cyclic).
inline std::vector<long> cyclic(long n) { return n == 1 ? std::vector<long>{} : std::vector<long>{n}; }

// ---- F_p[x] --------------------------------------------------------------------

using Poly = std::vector<std::uint64_t>;  // low-to-high, trimmed

inline Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return trim(c);
}

/// All monic polynomials of exact degree d.
inline std::vector<Poly> monic_of_degree(unsigned d, std::uint64_t p) {
  std::vector<Poly> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly f(d + 1, 0);
    std::uint64_t t = k;
    for (unsigned i = 0; i < d; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[d] = 1;
    out.push_back(f);
  }
  return out;
}

/// Remainder of a modulo a monic f.
inline Poly poly_rem(Poly a, const Poly& f, std::uint64_t p) {
  a = trim(a);
  while (a.size() >= f.size()) {
    std::uint64_t c = a.back();
    std::size_t s = a.size() - f.size();
    for (std::size_t i = 0; i < f.size(); ++i) a[s + i] = (a[s + i] + p - c * f[i] % p) % p;
    a = trim(a);
  }
  return a;
}

/// All residues modulo a polynomial of degree d (polynomials of degree < d).
inline std::vector<Poly> residues(unsigned d, std::uint64_t p) {
  std::vector<Poly> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly f(d, 0);
    std::uint64_t t = k;
    for (unsigned i = 0; i < d; ++i) {
      f[i] = t % p;
      t /= p;
    }
    out.push_back(trim(f));
  }
  return out;
}

/// Monic irreducibles of degree d: monic polynomials that are not products of
/// two monic polynomials of positive degree.
inline std::vector<Poly> irreducibles_of_degree(unsigned d, std::uint64_t p) {
  std::set<Poly> reducible;
  for (unsigned i = 1; i < d; ++i)
    for (const auto& a : monic_of_degree(i, p))
      for (const auto& b : monic_of_degree(d - i, p)) reducible.insert(poly_mul(a, b, p));
  std::vector<Poly> out;
  for (const auto& f : monic_of_degree(d, p))
    if (!reducible.count(f)) out.push_back(f);
  return out;
}

/// Ass of F_p[x]/(f_1) (+) ... (+) F_p[x]/(f_k) (monic f_i): the monic
/// irreducibles q for which some nonzero element is killed by q.
inline std::set<Poly> poly_ass(const std::vector<Poly>& fs, std::uint64_t p) {
  unsigned maxdeg = 0;
  for (const auto& f : fs) maxdeg = std::max<unsigned>(maxdeg, static_cast<unsigned>(f.size() - 1));
  std::set<Poly> out;
  for (unsigned d = 1; d <= maxdeg; ++d)
    for (const auto& q : irreducibles_of_degree(d, p)) {
      bool found = false;
      for (std::size_t i = 0; i < fs.size() && !found; ++i)
        for (const auto& v : residues(static_cast<unsigned>(fs[i].size() - 1), p))
          if (!v.empty() && poly_rem(poly_mul(q, v, p), fs[i], p).empty()) {
            found = true;
            break;
          }
      if (found) out.insert(q);
    }
  return out;
}

/// Trial division of a monic f by irreducibles in increasing degree.
inline std::map<Poly, unsigned> poly_trial_factor(Poly f, std::uint64_t p) {
  std::map<Poly, unsigned> out;
  auto divide = [&](const Poly& num, const Poly& den, Poly& q) {
    Poly r = num;
    q.assign(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    while (r.size() >= den.size() && !r.empty()) {
      std::uint64_t c = r.back();  // den is monic
      std::size_t s = r.size() - den.size();
      q[s] = c;
      for (std::size_t i = 0; i < den.size(); ++i) r[s + i] = (r[s + i] + p * p - c * den[i] % p) % p;
      r = trim(r);
    }
    return r.empty();
  };
  for (unsigned d = 1; f.size() > 1 && 2 * d <= f.size() - 1; ++d) {
    for (const auto& g : irreducibles_of_degree(d, p)) {
      Poly q;
      while (f.size() > 1 && divide(f, g, q)) {
        ++out[g];
        f = trim(q);
      }
    }
  }
  if (f.size() > 1) ++out[f];
  return out;
}

}  // namespace oracle
