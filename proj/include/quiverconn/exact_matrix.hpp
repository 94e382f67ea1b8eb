#pragma once

#include <cstddef>
#include <vector>

#include "quiverconn/exact.hpp"
#include "quiverconn/linalg.hpp"

namespace qc {

/// Dense row-major matrix over ExactComplex.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix scalar(std::size_t n, const ExactComplex& x);
  static ExactMatrix from_numeric(const CMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  ExactComplex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const ExactComplex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ExactMatrix& b);

  bool is_zero() const;
  CMatrix to_numeric() const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix operator-() const;
  ExactMatrix scaled(const ExactComplex& x) const;

  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactComplex> data_;
};

/// m - x·Id for square m.
ExactMatrix shifted(const ExactMatrix& m, const ExactComplex& x);

/// Factorization m = basis · coords with basis made of pivot columns of m
/// and coords the nonzero rows of the reduced row echelon form.
struct ColumnSpace {
  ExactMatrix basis;
  ExactMatrix coords;
};

ColumnSpace column_space(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
/// Kernel basis as columns.
ExactMatrix kernel(const ExactMatrix& m);

/// The unique X with a·X = b; throws InvalidInput otherwise.
ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix inverse(const ExactMatrix& m);

/// Frobenius norm of the numeric image of m.
double frobenius_norm(const ExactMatrix& m);

}  // namespace qc
