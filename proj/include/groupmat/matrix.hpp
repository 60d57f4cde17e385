#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groupmat/errors.hpp"
#include "groupmat/rational.hpp"

namespace groupmat {

/// Dense matrix of exact rationals. Sizes are at least 1x1; the empty matrix
/// is rejected at construction. Row/column positions in the C++ accessors are
/// 0-based; index *sets* passed to the block operators are 1-based, matching
/// the file formats.
class Matrix {
 public:
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw InvalidInput("matrix must be at least 1x1");
    data_.resize(static_cast<size_t>(rows) * cols);
  }

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty() || rows[0].empty()) throw InvalidInput("matrix must be at least 1x1");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols_)
        throw InvalidInput("ragged rows in matrix literal");
      for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }

  static Matrix constant(int rows, int cols, const Rational& value) {
    Matrix m(rows, cols);
    for (auto& e : m.data_) e = value;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Rational& operator()(int i, int j) const { return data_[index(i, j)]; }
  Rational& at(int i, int j) { return data_[index(i, j)]; }

  std::vector<Rational> row(int i) const {
    std::vector<Rational> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

  int rows_, cols_;
  std::vector<Rational> data_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw InvalidInput("product shape mismatch: " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Rational& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        c.at(i, j) += aik * bkj;
      }
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a(i, j);
  return t;
}

namespace detail {
// Sorted, deduplicated, validated copy of a 1-based index set.
inline std::vector<int> checked_index_set(const std::vector<int>& raw, int bound,
                                          const char* what) {
  if (raw.empty()) throw InvalidInput(std::string(what) + ": empty index set");
  std::set<int> s(raw.begin(), raw.end());
  for (int i : s)
    if (i < 1 || i > bound)
      throw InvalidInput(std::string(what) + ": index " + std::to_string(i) +
                         " outside 1.." + std::to_string(bound));
  return {s.begin(), s.end()};
}
}  // namespace detail

/// Rows of P indexed by the 1-based set U, ascending.
inline Matrix submatrix_rows(const Matrix& p, const std::vector<int>& u) {
  auto rows = detail::checked_index_set(u, p.rows(), "submatrix_rows");
  Matrix out(static_cast<int>(rows.size()), p.cols());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < p.cols(); ++j) out.at(static_cast<int>(i), j) = p(rows[i] - 1, j);
  return out;
}

/// Columns of P indexed by the 1-based set V, ascending.
inline Matrix submatrix_cols(const Matrix& p, const std::vector<int>& v) {
  auto cols = detail::checked_index_set(v, p.cols(), "submatrix_cols");
  Matrix out(p.rows(), static_cast<int>(cols.size()));
  for (int i = 0; i < p.rows(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out.at(i, static_cast<int>(j)) = p(i, cols[j] - 1);
  return out;
}

inline Matrix submatrix_block(const Matrix& p, const std::vector<int>& u,
                              const std::vector<int>& v) {
  return submatrix_cols(submatrix_rows(p, u), v);
}

/// The common row sum when all row sums agree, otherwise nothing.
inline std::optional<Rational> is_generalized_stochastic(const Matrix& p) {
  Rational first;
  for (int i = 0; i < p.rows(); ++i) {
    Rational sum;
    for (int j = 0; j < p.cols(); ++j) sum += p(i, j);
    if (i == 0)
      first = sum;
    else if (sum != first)
      return std::nullopt;
  }
  return first;
}

inline bool is_nonnegative(const Matrix& p) {
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j).is_negative()) return false;
  return true;
}

enum class MatrixClass { Stochastic, Nonnegative, Real };

inline const char* to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::Stochastic: return "stochastic";
    case MatrixClass::Nonnegative: return "nonnegative";
    default: return "real";
  }
}

/// Finest applicable tag: stochastic implies nonnegative implies real.
inline MatrixClass classify(const Matrix& p) {
  if (!is_nonnegative(p)) return MatrixClass::Real;
  auto a = is_generalized_stochastic(p);
  if (a && *a == Rational(1)) return MatrixClass::Stochastic;
  return MatrixClass::Nonnegative;
}

inline bool is_stochastic(const Matrix& p) { return classify(p) == MatrixClass::Stochastic; }

inline bool is_doubly_stochastic(const Matrix& p) {
  return p.rows() == p.cols() && is_stochastic(p) && is_stochastic(transpose(p));
}

/// All rows identical.
inline bool is_stable(const Matrix& p) {
  for (int i = 1; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p(i, j) != p(0, j)) return false;
  return true;
}

}  // namespace groupmat
