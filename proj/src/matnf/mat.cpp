#include <sstream>
#include <stdexcept>

#include "stab/matnf.hpp"

namespace stab {

Mat::Mat(Domain dom, std::size_t rows, std::size_t cols)
    : dom_(dom), rows_(rows), cols_(cols), a_(rows * cols, dom.zero()) {}

Mat Mat::identity(Domain dom, std::size_t n) {
  Mat m(dom, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = dom.one();
  return m;
}

Mat Mat::from_rows(Domain dom, const std::vector<std::vector<Elem>>& rows,
                   std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  Mat m(dom, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j].domain() != dom) throw BackendMismatch("matrix entry");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Mat Mat::column(Domain dom, const std::vector<Elem>& entries) {
  Mat m(dom, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Mat Mat::diagonal(Domain dom, const std::vector<Elem>& entries) {
  Mat m(dom, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
  if (a.dom_ != b.dom_) throw BackendMismatch("hcat");
  Mat m(a.dom_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vcat: column mismatch");
  if (a.dom_ != b.dom_) throw BackendMismatch("vcat");
  Mat m(a.dom_, a.rows_ + b.rows_, a.cols_);
  for (std::size_t j = 0; j < a.cols_; ++j) {
    for (std::size_t i = 0; i < a.rows_; ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i) m(a.rows_ + i, j) = b(i, j);
  }
  return m;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  if (a.dom_ != b.dom_) throw BackendMismatch("kron");
  Mat m(a.dom_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l)
          m(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
    }
  return m;
}

Mat Mat::col(std::size_t j) const { return block(0, j, rows_, 1); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block");
  Mat m(dom_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat m(dom_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat m(dom_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Mat Mat::transpose() const {
  Mat m(dom_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool Mat::is_zero() const {
  for (const auto& e : a_)
    if (!e.is_zero()) return false;
  return true;
}

Mat Mat::operator*(const Mat& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  if (dom_ != b.dom_) throw BackendMismatch("matrix product");
  Mat m(dom_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

Mat Mat::operator+(const Mat& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape");
  Mat m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape");
  Mat m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

Mat Mat::scaled(const Elem& s) const {
  Mat m = *this;
  for (auto& e : m.a_) e *= s;
  return m;
}

void Mat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void Mat::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void Mat::add_row_multiple(std::size_t dst, std::size_t src, const Elem& q) {
  if (q.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!(*this)(src, c).is_zero()) (*this)(dst, c) += q * (*this)(src, c);
}

void Mat::add_col_multiple(std::size_t dst, std::size_t src, const Elem& q) {
  if (q.is_zero()) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if (!(*this)(r, src).is_zero()) (*this)(r, dst) += q * (*this)(r, src);
}

void Mat::scale_row(std::size_t i, const Elem& u) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) *= u;
}

void Mat::scale_col(std::size_t j, const Elem& u) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) *= u;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.dom_ == b.dom_ && a.a_ == b.a_;
}

}  // namespace stab
