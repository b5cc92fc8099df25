#include "foolrank/matrix.hpp"

#include <numeric>
#include <utility>

namespace foolrank {

namespace {

struct FiniteRing {
  using T = std::uint32_t;
  const FiniteOps& ops;
  bool zero(T a) const { return a == 0; }
  T mul(T a, T b) const { return ops.mul(a, b); }
  T sub(T a, T b) const { return ops.sub(a, b); }
  T inv(T a) const { return ops.inv(a); }
};

struct RationalRing {
  using T = Rational;
  bool zero(const T& a) const { return a == 0; }
  T mul(const T& a, const T& b) const { return a * b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T inv(const T& a) const { return 1 / a; }
};

// Forward elimination; pivot = first nonzero in the column among unused rows,
// scanning top-down. Returns the pivot columns.
template <class Ring>
std::vector<std::size_t> echelon_pivots(std::vector<typename Ring::T> a, std::size_t rows, std::size_t cols,
                                        const Ring& ring) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && ring.zero(a[p * cols + c])) ++p;
    if (p == rows) continue;
    if (p != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[rank * cols + j]);
    const auto pinv = ring.inv(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (ring.zero(a[r * cols + c])) continue;
      const auto f = ring.mul(a[r * cols + c], pinv);
      for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ring.sub(a[r * cols + j], ring.mul(f, a[rank * cols + j]));
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

std::vector<std::size_t> gf2_pivots(const Matrix& m) {
  BitMatrix bits = mat_sigma(m);
  const std::size_t rows = bits.rows(), cols = bits.cols(), words = bits.words_per_row();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / BitMatrix::kWordBits;
    const BitMatrix::Word mask = BitMatrix::Word{1} << (c % BitMatrix::kWordBits);
    std::size_t p = rank;
    while (p < rows && !(bits.row(p)[w] & mask)) ++p;
    if (p == rows) continue;
    if (p != rank) {
      auto a = bits.row(p), b = bits.row(rank);
      for (std::size_t x = 0; x < words; ++x) std::swap(a[x], b[x]);
    }
    auto prow = bits.row(rank);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      auto row = bits.row(r);
      if (row[w] & mask)
        for (std::size_t x = w; x < words; ++x) row[x] ^= prow[x];
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

bool is_gf2(const Field& f) { return f.spec().kind == FieldKind::prime && f.spec().p == 2; }

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  if (is_gf2(m.field())) return gf2_pivots(m);
  if (m.field().is_finite()) {
    std::vector<std::uint32_t> a(m.codes().begin(), m.codes().end());
    return echelon_pivots(std::move(a), m.rows(), m.cols(), FiniteRing{m.field().finite()});
  }
  std::vector<Rational> a;
  a.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(m.at(i, j).rational());
  return echelon_pivots(std::move(a), m.rows(), m.cols(), RationalRing{});
}

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (!(a.field() == b.field())) throw DimensionError(std::string(op) + ": field mismatch");
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols) : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (field_.is_finite())
    codes_.assign(rows * cols, 0);
  else
    rationals_.assign(rows * cols, Rational(0));
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, m.field().one());
  return m;
}

Matrix Matrix::from_ints(Field field, std::size_t rows, std::size_t cols, std::initializer_list<long long> values) {
  return from_ints(std::move(field), rows, cols, std::span<const long long>(values.begin(), values.size()));
}

Matrix Matrix::from_ints(Field field, std::size_t rows, std::size_t cols, std::span<const long long> values) {
  if (values.size() != rows * cols) throw DimensionError("from_ints: expected rows*cols values");
  Matrix m(std::move(field), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, m.field().from_int(values[i * cols + j]));
  return m;
}

Matrix Matrix::from_pattern(Field field, const BitMatrix& pattern) {
  Matrix m(std::move(field), pattern.rows(), pattern.cols());
  for (std::size_t i = 0; i < pattern.rows(); ++i)
    for (std::size_t j = 0; j < pattern.cols(); ++j)
      if (pattern.get(i, j)) m.set(i, j, m.field().one());
  return m;
}

FieldElem Matrix::at(std::size_t i, std::size_t j) const {
  if (field_.is_finite()) return FieldElem(codes_[i * cols_ + j]);
  return FieldElem(rationals_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const FieldElem& v) {
  if (!field_.contains(v)) throw FieldError("value is not an element of " + field_.descriptor());
  if (field_.is_finite())
    codes_[i * cols_ + j] = v.code();
  else
    rationals_[i * cols_ + j] = v.rational();
}

bool Matrix::is_zero(std::size_t i, std::size_t j) const {
  if (field_.is_finite()) return codes_[i * cols_ + j] == 0;
  return rationals_[i * cols_ + j] == 0;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

Matrix Matrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  Matrix s(field_, row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (row_idx[i] >= rows_ || col_idx[j] >= cols_) throw DimensionError("submatrix index out of range");
      s.set(i, j, at(row_idx[i], col_idx[j]));
    }
  return s;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.codes_ == b.codes_ &&
         a.rationals_ == b.rationals_;
}

std::size_t mat_rank(const Matrix& m) { return pivot_columns(m).size(); }

RankInfo mat_rank_info(const Matrix& m) {
  RankInfo info;
  info.pivot_cols = pivot_columns(m);
  info.pivot_rows = pivot_columns(m.transpose());
  info.rank = info.pivot_cols.size();
  return info;
}

Matrix mat_multiply(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "multiply");
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  const Field& f = a.field();
  Matrix c(f, a.rows(), b.cols());
  if (f.is_finite()) {
    const auto& ops = f.finite();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        std::uint32_t acc = 0;
        for (std::size_t t = 0; t < a.cols(); ++t) acc = ops.add(acc, ops.mul(a.code(i, t), b.code(t, j)));
        c.set_code(i, j, acc);
      }
    return c;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) acc += a.at(i, t).rational() * b.at(t, j).rational();
      c.set(i, j, FieldElem(acc));
    }
  return c;
}

Matrix mat_kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "kronecker");
  const Field& f = a.field();
  Matrix k(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.is_zero(i, j)) continue;
      const FieldElem aij = a.at(i, j);
      for (std::size_t s = 0; s < b.rows(); ++s)
        for (std::size_t t = 0; t < b.cols(); ++t)
          k.set(i * b.rows() + s, j * b.cols() + t, f.mul(aij, b.at(s, t)));
    }
  return k;
}

Matrix mat_vstack(const Matrix& top, const Matrix& bottom) {
  require_same_field(top, bottom, "vstack");
  if (top.cols() != bottom.cols()) throw DimensionError("vstack: column counts differ");
  Matrix s(top.field(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) s.set(i, j, top.at(i, j));
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) s.set(top.rows() + i, j, bottom.at(i, j));
  return s;
}

ZeroNonzeroPattern mat_sigma(const Matrix& m) {
  ZeroNonzeroPattern bits(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.is_zero(i, j)) bits.set(i, j);
  return bits;
}

RowReduction mat_rowreduce_to_gpattern(const Matrix& y) {
  const Field& f = y.field();
  Matrix work = y;
  Matrix e = Matrix::identity(f, y.rows());
  const std::size_t rows = y.rows(), cols = y.cols();

  auto scale_row = [&](Matrix& m, std::size_t r, const FieldElem& s) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.set(r, j, f.mul(s, m.at(r, j)));
  };
  auto swap_rows = [&](Matrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      FieldElem t = m.at(a, j);
      m.set(a, j, m.at(b, j));
      m.set(b, j, t);
    }
  };
  // row[target] -= factor * row[source]
  auto axpy = [&](Matrix& m, std::size_t target, std::size_t source, const FieldElem& factor) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.set(target, j, f.sub(m.at(target, j), f.mul(factor, m.at(source, j))));
  };

  std::vector<std::size_t> one_columns;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t p = next;
    while (p < rows && work.is_zero(p, c)) ++p;
    if (p == rows) continue;
    const FieldElem s = f.inv(work.at(p, c));
    scale_row(work, p, s);
    scale_row(e, p, s);
    if (p != next) {
      swap_rows(work, p, next);
      swap_rows(e, p, next);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || work.is_zero(r, c)) continue;
      const FieldElem factor = work.at(r, c);
      axpy(work, r, next, factor);
      axpy(e, r, next, factor);
    }
    one_columns.push_back(c);
    ++next;
  }
  GPattern g(rows, cols, std::move(one_columns));
  return RowReduction{std::move(work), std::move(e), std::move(g)};
}

bool gpattern_match(const Matrix& y, const GPattern& g) {
  if (y.rows() != g.rows() || y.cols() != g.cols()) throw DimensionError("gpattern_match: dimension mismatch");
  const Field& f = y.field();
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      switch (g.symbol(i, j)) {
        case GSymbol::zero:
          if (!y.is_zero(i, j)) return false;
          break;
        case GSymbol::one:
          if (!(y.at(i, j) == f.one())) return false;
          break;
        case GSymbol::star:
          break;
      }
    }
  return true;
}

}  // namespace foolrank
