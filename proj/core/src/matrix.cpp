#include "bratteli/matrix.hpp"

#include <limits>

#include "bratteli/error.hpp"

namespace bratteli {

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("ShapeMismatch", {{"row", i}});
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

long long Matrix::small(std::size_t r, std::size_t c) const {
  const BigInt& x = (*this)(r, c);
  if (x > std::numeric_limits<long long>::max()) throw Error("Overflow", {{"row", r}, {"col", c}});
  return static_cast<long long>(x);
}

std::vector<long long> Matrix::small_row(std::size_t r) const {
  std::vector<long long> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = small(r, c);
  return out;
}

BigInt Matrix::row_sum(std::size_t r) const {
  BigInt s = 0;
  for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
  return s;
}

BigInt Matrix::col_sum(std::size_t c) const {
  BigInt s = 0;
  for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
  return s;
}

bool Matrix::positive() const {
  for (const auto& x : data_)
    if (x <= 0) return false;
  return !data_.empty();
}

Matrix Matrix::support() const {
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] > 0 ? 1 : 0;
  return s;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("ShapeMismatch", {{"left_cols", cols_}, {"right_rows", rhs.rows_}});
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<BigInt> Matrix::apply(const std::vector<BigInt>& v) const {
  if (v.size() != cols_) throw Error("ShapeMismatch", {{"cols", cols_}, {"vector", v.size()}});
  std::vector<BigInt> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

}  // namespace bratteli
