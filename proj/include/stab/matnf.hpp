#pragma once

// Exact dense matrices over a Euclidean backend with Hermite and Smith
// normal forms. Relations are columns throughout: a matrix A with k rows
// presents coker(A) = R^k / (column span of A).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stab/euclid.hpp"

namespace stab {

class Mat {
 public:
  Mat() = default;
  /// rows x cols zero matrix.
  Mat(Domain dom, std::size_t rows, std::size_t cols);

  static Mat identity(Domain dom, std::size_t n);
  /// Row-major construction; every row must have the same length.
  static Mat from_rows(Domain dom, const std::vector<std::vector<Elem>>& rows,
                       std::size_t cols_if_empty = 0);
  static Mat column(Domain dom, const std::vector<Elem>& entries);
  static Mat diagonal(Domain dom, const std::vector<Elem>& entries);
  static Mat hcat(const Mat& a, const Mat& b);
  static Mat vcat(const Mat& a, const Mat& b);
  /// Kronecker product; index (i, j) of a (x) b sits at i * b.rows() + j.
  static Mat kron(const Mat& a, const Mat& b);

  const Domain& domain() const noexcept { return dom_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Mat col(std::size_t j) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat transpose() const;
  bool is_zero() const;

  Mat operator*(const Mat& b) const;
  Mat operator+(const Mat& b) const;
  Mat operator-(const Mat& b) const;
  Mat scaled(const Elem& s) const;

  // Elementary operations, used by the normal-form kernels.
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row_dst += q * row_src
  void add_row_multiple(std::size_t dst, std::size_t src, const Elem& q);
  /// col_dst += q * col_src
  void add_col_multiple(std::size_t dst, std::size_t src, const Elem& q);
  void scale_row(std::size_t i, const Elem& u);
  void scale_col(std::size_t j, const Elem& u);

  std::string to_string() const;

  friend bool operator==(const Mat& a, const Mat& b);

 private:
  Domain dom_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

struct HnfResult {
  Mat h;                               // A * u == h
  Mat u;                               // unimodular, cols(A) x cols(A)
  std::vector<std::size_t> pivot_rows; // pivot row of column j, j < rank
  std::size_t rank() const { return pivot_rows.size(); }
};

/// Column Hermite form: A * U = H with H in column echelon form, canonical
/// pivots, and entries left of each pivot reduced modulo it.
HnfResult hnf(const Mat& a);

struct SnfResult {
  Mat d;      // u * A * v == d
  Mat u, v;   // unimodular
  Mat u_inv;  // inverse of u, tracked alongside
  /// min(rows, cols) diagonal entries d_1 | d_2 | ... (canonical)
  std::vector<Elem> diag() const;
};

SnfResult snf(const Mat& a);

/// Some x with A * x == b (b may have several columns), if one exists.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Generators of {x : A x = 0}, in canonical Hermite form (independent).
Mat kernel(const Mat& a);

/// Hermite-canonical nonzero generating columns of the column span of a.
Mat span_basis(const Mat& a);

/// Reusable solver against a fixed matrix: one Smith form, many right-hand sides.
class Solver {
 public:
  explicit Solver(const Mat& a);
  std::optional<Mat> solve(const Mat& b) const;
  bool in_span(const Mat& b) const { return solve(b).has_value(); }
  const SnfResult& smith() const noexcept { return s_; }
  std::size_t unknowns() const noexcept { return s_.v.rows(); }

 private:
  SnfResult s_;
};

}  // namespace stab
