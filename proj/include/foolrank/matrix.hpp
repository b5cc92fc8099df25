#pragma once

#include "foolrank/bitmatrix.hpp"
#include "foolrank/ffield.hpp"
#include "foolrank/gpattern.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace foolrank {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Zero-nonzero pattern: bit (i, j) is set iff the entry is nonzero.
using ZeroNonzeroPattern = BitMatrix;

// Dense exact matrix over a Field. Finite-field entries are stored as element
// codes, rational entries as reduced fractions.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  // Integers are mapped into the field (reduced mod p for finite fields).
  static Matrix from_ints(Field field, std::size_t rows, std::size_t cols, std::initializer_list<long long> values);
  static Matrix from_ints(Field field, std::size_t rows, std::size_t cols, std::span<const long long> values);
  // Entries become 1 where the pattern is set.
  static Matrix from_pattern(Field field, const BitMatrix& pattern);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const FieldElem& v);
  bool is_zero(std::size_t i, std::size_t j) const;

  // Finite fields only.
  std::uint32_t code(std::size_t i, std::size_t j) const { return codes_[i * cols_ + j]; }
  void set_code(std::size_t i, std::size_t j, std::uint32_t c) { codes_[i * cols_ + j] = c; }
  std::span<const std::uint32_t> codes() const { return codes_; }

  Matrix transpose() const;
  Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> codes_;
  std::vector<Rational> rationals_;
};

struct RankInfo {
  std::size_t rank = 0;
  // Lexicographically first maximal independent row / column index sets.
  // The submatrix on pivot_rows x pivot_cols is nonsingular.
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

std::size_t mat_rank(const Matrix& m);
RankInfo mat_rank_info(const Matrix& m);

Matrix mat_multiply(const Matrix& a, const Matrix& b);
Matrix mat_kronecker(const Matrix& a, const Matrix& b);
Matrix mat_vstack(const Matrix& top, const Matrix& bottom);
ZeroNonzeroPattern mat_sigma(const Matrix& m);

struct RowReduction {
  Matrix reduced;     // E * Y
  Matrix transform;   // E, invertible
  GPattern pattern;   // matched by `reduced`
};

// Gauss-Jordan using row operations only: the leftmost nonzero column of the
// untreated block gives a pivot, which is scaled to 1, swapped up, and used to
// clear the rest of its column.
RowReduction mat_rowreduce_to_gpattern(const Matrix& y);

// True iff y is 0 on the pattern's 0-cells and 1 on its 1-cells.
bool gpattern_match(const Matrix& y, const GPattern& g);

}  // namespace foolrank
