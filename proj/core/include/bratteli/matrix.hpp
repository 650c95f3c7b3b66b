#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bratteli {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);  // "p/q", or "p" when integral

// Dense nonnegative integer matrix. Row index = range vertex, column = source vertex.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  // Entry as a machine integer; throws Error("Overflow") if it does not fit.
  long long small(std::size_t r, std::size_t c) const;
  std::vector<long long> small_row(std::size_t r) const;

  BigInt row_sum(std::size_t r) const;
  BigInt col_sum(std::size_t c) const;
  bool positive() const;

  // Boolean support pattern, same shape.
  Matrix support() const;

  Matrix operator*(const Matrix& rhs) const;
  std::vector<BigInt> apply(const std::vector<BigInt>& v) const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

}  // namespace bratteli
