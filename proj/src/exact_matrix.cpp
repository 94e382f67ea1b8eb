#include "quiverconn/exact_matrix.hpp"

#include <cmath>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

struct Echelon {
  ExactMatrix reduced;              // full RREF, same shape as input
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

Echelon row_reduce(ExactMatrix m) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const ExactComplex inv = ExactComplex(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const ExactComplex factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

}  // namespace

ExactMatrix ExactMatrix::identity(std::size_t n) { return scalar(n, ExactComplex(1)); }

ExactMatrix ExactMatrix::scalar(std::size_t n, const ExactComplex& x) {
  ExactMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = x;
  return m;
}

ExactMatrix ExactMatrix::from_numeric(const CMatrix& m) {
  ExactMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = ExactComplex::from_double(m(r, c));
  return out;
}

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidInput("block out of range");
  ExactMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void ExactMatrix::set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InvalidInput("block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

CMatrix ExactMatrix::to_numeric() const {
  CMatrix out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).to_complex();
  return out;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch in addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch in subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

ExactMatrix ExactMatrix::scaled(const ExactComplex& x) const {
  ExactMatrix out = *this;
  for (auto& v : out.data_) v *= x;
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix shape mismatch in product");
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ExactComplex& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const ExactComplex& y = b(k, c);
        if (!y.is_zero()) out(r, c) += x * y;
      }
    }
  return out;
}

ExactMatrix shifted(const ExactMatrix& m, const ExactComplex& x) {
  if (m.rows() != m.cols()) throw InvalidInput("shift of a non-square matrix");
  ExactMatrix out = m;
  for (std::size_t k = 0; k < m.rows(); ++k) out(k, k) -= x;
  return out;
}

ColumnSpace column_space(const ExactMatrix& m) {
  Echelon e = row_reduce(m);
  const std::size_t r = e.pivots.size();
  ColumnSpace out{ExactMatrix(m.rows(), r), e.reduced.block(0, 0, r, m.cols())};
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t row = 0; row < m.rows(); ++row) out.basis(row, k) = m(row, e.pivots[k]);
  return out;
}

std::size_t rank(const ExactMatrix& m) { return row_reduce(m).pivots.size(); }

ExactMatrix kernel(const ExactMatrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ExactMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t row = 0; row < e.pivots.size(); ++row) basis(e.pivots[row], k) = -e.reduced(row, f);
  }
  return basis;
}

ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidInput("matrix shape mismatch in solve");
  ExactMatrix aug(a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  Echelon e = row_reduce(aug);
  if (e.pivots.size() != a.cols() || (a.cols() > 0 && e.pivots.back() != a.cols() - 1))
    throw InvalidInput("linear system has no unique solution");
  return e.reduced.block(0, a.cols(), a.cols(), b.cols());
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  return solve(m, ExactMatrix::identity(m.rows()));
}

double frobenius_norm(const ExactMatrix& m) {
  if (m.empty()) return 0.0;
  return m.to_numeric().norm();
}

}  // namespace qc
