#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "oracles/brute_force.hpp"
#include "stab/fpmod.hpp"

namespace stab {
inline void PrintTo(const Elem& e, std::ostream* os) { *os << e.to_string(); }
}  // namespace stab

namespace testing_support {

using stab::Domain;
using stab::Elem;
using stab::FpModule;
using stab::Mat;

inline Elem poly(std::uint64_t p, std::vector<std::uint64_t> c) { return Elem::poly(p, std::move(c)); }

inline Mat int_mat(const std::vector<std::vector<long>>& rows, std::size_t cols_if_empty = 0) {
  std::vector<std::vector<Elem>> e;
  for (const auto& r : rows) e.emplace_back(r.begin(), r.end());
  return Mat::from_rows(Domain::integers(), e, cols_if_empty);
}

inline std::vector<Elem> elems(const std::vector<long>& v) { return {v.begin(), v.end()}; }

inline std::vector<long> to_longs(const std::vector<Elem>& v) {
  std::vector<long> out;
  for (const auto& e : v) out.push_back(e.integer_value().get_si());
  return out;
}

inline Elem random_elem(const Domain& dom, std::mt19937_64& rng, long bound, int max_degree = 3) {
  if (dom.backend() == stab::Backend::integers)
    return Elem(std::uniform_int_distribution<long>(-bound, bound)(rng));
  std::uint64_t p = dom.characteristic();
  int deg = std::uniform_int_distribution<int>(-1, max_degree)(rng);
  std::vector<std::uint64_t> c;
  for (int i = 0; i <= deg; ++i) c.push_back(std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng));
  return Elem::poly(p, c);
}

inline Mat random_mat(const Domain& dom, std::size_t r, std::size_t c, std::mt19937_64& rng, long bound,
                      int max_degree = 2) {
  Mat m(dom, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_elem(dom, rng, bound, max_degree);
  return m;
}

/// Product of random elementary matrices; unit determinant by construction.
inline Mat random_unimodular(const Domain& dom, std::size_t n, std::mt19937_64& rng, int steps = 8) {
  Mat u = Mat::identity(dom, n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    u.add_row_multiple(i, j, random_elem(dom, rng, 3, 1));
    if (rng() % 3 == 0) u.swap_rows(i, j);
  }
  return u;
}

/// A scrambled presentation of Z/o_1 (+) ... (+) Z/o_k (plus `rank` free
/// summands): diag(orders) conjugated by random unimodular matrices, with an
/// extra redundant relation column.
inline FpModule scrambled_module(const Domain& dom, const std::vector<Elem>& orders, std::size_t rank,
                                 std::mt19937_64& rng) {
  std::size_t k = orders.size() + rank;
  Mat d(dom, k, orders.size() + 1);
  for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
  if (!orders.empty()) d(0, orders.size()) = orders[0] * random_elem(dom, rng, 3, 1);
  Mat rel = random_unimodular(dom, k, rng) * d * random_unimodular(dom, orders.size() + 1, rng);
  return FpModule(rel);
}

/// All factor lists (each entry >= 2) whose product is at most `max_order`.
inline void finite_orders(long max_order, std::size_t max_parts, std::vector<long>& cur,
                          std::vector<std::vector<long>>& out) {
  long prod = 1;
  for (long o : cur) prod *= o;
  out.push_back(cur);
  if (cur.size() == max_parts) return;
  long start = cur.empty() ? 2 : cur.back();
  for (long o = start; prod * o <= max_order; ++o) {
    cur.push_back(o);
    finite_orders(max_order, max_parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace testing_support
