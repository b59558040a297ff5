#include "stab/matnf.hpp"

namespace stab {

namespace {

// Tracks U, U^{-1} and V alongside the matrix being diagonalized so that
// u * A * v == d holds after every step.
struct SmithState {
  Mat d, u, u_inv, v;

  explicit SmithState(const Mat& a)
      : d(a),
        u(Mat::identity(a.domain(), a.rows())),
        u_inv(Mat::identity(a.domain(), a.rows())),
        v(Mat::identity(a.domain(), a.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    d.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    d.swap_cols(i, j);
    v.swap_cols(i, j);
  }
  void add_row(std::size_t dst, std::size_t src, const Elem& q) {
    d.add_row_multiple(dst, src, q);
    u.add_row_multiple(dst, src, q);
    u_inv.add_col_multiple(src, dst, -q);
  }
  void add_col(std::size_t dst, std::size_t src, const Elem& q) {
    d.add_col_multiple(dst, src, q);
    v.add_col_multiple(dst, src, q);
  }
  void scale_row(std::size_t i, const Elem& unit) {
    d.scale_row(i, unit);
    u.scale_row(i, unit);
    u_inv.scale_col(i, unit.unit_inverse());
  }
};

}  // namespace

std::vector<Elem> SnfResult::diag() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SnfResult snf(const Mat& a) {
  SmithState s(a);
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Elem& x = s.d(i, j);
        if (x.is_zero()) continue;
        if (pi == m || x.norm_less(s.d(pi, pj))) pi = i, pj = j;
      }
    if (pi == m) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s.d(i, t).is_zero()) continue;
        s.add_row(i, t, -s.d(i, t).divmod(s.d(t, t)).first);
        if (!s.d(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s.d(t, j).is_zero()) continue;
        s.add_col(j, t, -s.d(t, j).divmod(s.d(t, t)).first);
        if (!s.d(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // A nonzero remainder has smaller norm than the pivot; promote the
        // smallest one.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!s.d(i, t).is_zero() && s.d(i, t).norm_less(s.d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (!s.d(t, j).is_zero() && s.d(t, j).norm_less(s.d(bi, bj))) bi = t, bj = j;
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (!s.d(t, t).divides(s.d(i, j))) {
            s.add_row(t, i, a.domain().one());
            fixed = true;
          }
      if (!fixed) break;
    }
    Elem unit = s.d(t, t).unit_part();
    if (!unit.is_one()) s.scale_row(t, unit.unit_inverse());
  }
  return SnfResult{std::move(s.d), std::move(s.u), std::move(s.v), std::move(s.u_inv)};
}

HnfResult hnf(const Mat& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Mat h = a;
  Mat u = Mat::identity(a.domain(), n);
  std::vector<std::size_t> pivots;
  std::size_t k = 0;
  for (std::size_t r = 0; r < m && k < n; ++r) {
    bool has_pivot = false;
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j)
        if (!h(r, j).is_zero() && (best == n || h(r, j).norm_less(h(r, best)))) best = j;
      if (best == n) break;
      has_pivot = true;
      h.swap_cols(k, best);
      u.swap_cols(k, best);
      bool done = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (h(r, j).is_zero()) continue;
        Elem q = -h(r, j).divmod(h(r, k)).first;
        h.add_col_multiple(j, k, q);
        u.add_col_multiple(j, k, q);
        if (!h(r, j).is_zero()) done = false;
      }
      if (done) break;
    }
    if (!has_pivot) continue;
    Elem unit = h(r, k).unit_part();
    if (!unit.is_one()) {
      Elem inv = unit.unit_inverse();
      h.scale_col(k, inv);
      u.scale_col(k, inv);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Elem q = -h(r, j).divmod(h(r, k)).first;
      h.add_col_multiple(j, k, q);
      u.add_col_multiple(j, k, q);
    }
    pivots.push_back(r);
    ++k;
  }
  return HnfResult{std::move(h), std::move(u), std::move(pivots)};
}

Solver::Solver(const Mat& a) : s_(snf(a)) {}

std::optional<Mat> Solver::solve(const Mat& b) const {
  const Mat& d = s_.d;
  if (b.rows() != d.rows()) throw std::invalid_argument("solve: row mismatch");
  const std::size_t m = d.rows(), n = d.cols(), r = std::min(m, n);
  Mat c = s_.u * b;
  Mat y(b.domain(), n, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const Elem& ci = c(i, j);
      if (i >= r || d(i, i).is_zero()) {
        if (!ci.is_zero()) return std::nullopt;
        continue;
      }
      auto [q, rem] = ci.divmod(d(i, i));
      if (!rem.is_zero()) return std::nullopt;
      y(i, j) = q;
    }
  }
  return s_.v * y;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) { return Solver(a).solve(b); }

Mat span_basis(const Mat& a) {
  HnfResult r = hnf(a);
  return r.h.block(0, 0, a.rows(), r.rank());
}

Mat kernel(const Mat& a) {
  HnfResult r = hnf(a);
  const std::size_t n = a.cols();
  Mat k = r.u.block(0, r.rank(), n, n - r.rank());
  return span_basis(k);
}

}  // namespace stab
