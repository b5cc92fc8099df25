#include "foolrank/tee.hpp"

#include <algorithm>

namespace foolrank {

namespace {

std::string cell_name(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

// Inverse of a nonsingular square matrix by Gauss-Jordan.
Matrix invert(const Matrix& a) {
  const Field& f = a.field();
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(f, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && work.is_zero(p, c)) ++p;
    if (p == n) throw TeeError("pivot block is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        FieldElem t = work.at(p, j);
        work.set(p, j, work.at(c, j));
        work.set(c, j, t);
        t = inv.at(p, j);
        inv.set(p, j, inv.at(c, j));
        inv.set(c, j, t);
      }
    const FieldElem s = f.inv(work.at(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      work.set(c, j, f.mul(s, work.at(c, j)));
      inv.set(c, j, f.mul(s, inv.at(c, j)));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || work.is_zero(r, c)) continue;
      const FieldElem factor = work.at(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        work.set(r, j, f.sub(work.at(r, j), f.mul(factor, work.at(c, j))));
        inv.set(r, j, f.sub(inv.at(r, j), f.mul(factor, inv.at(c, j))));
      }
    }
  }
  return inv;
}

}  // namespace

TeeShape::TeeShape(std::size_t n, std::vector<std::size_t> index_set)
    : n_(n), index_set_(std::move(index_set)), member_(n, false) {
  std::sort(index_set_.begin(), index_set_.end());
  index_set_.erase(std::unique(index_set_.begin(), index_set_.end()), index_set_.end());
  if (index_set_.empty()) throw TeeError("tee shape needs a nonempty index set");
  for (auto k : index_set_) {
    if (k >= n_) throw TeeError("tee index " + std::to_string(k + 1) + " outside [n]");
    member_[k] = true;
  }
}

std::size_t TeeShape::cell_count() const {
  const std::size_t k = order();
  return n_ * n_ - (n_ - k) * (n_ - k);
}

TeeMatrix::TeeMatrix(TeeShape shape, const Matrix& values, FoolingCheck check)
    : shape_(std::move(shape)), values_(values.field(), shape_.n(), shape_.n()) {
  if (values.rows() != shape_.n() || values.cols() != shape_.n())
    throw TeeError("tee values must be an n x n matrix");
  for (std::size_t i = 0; i < shape_.n(); ++i)
    for (std::size_t j = 0; j < shape_.n(); ++j)
      if (shape_.contains(i, j)) values_.set(i, j, values.at(i, j));
  if (check == FoolingCheck::enforce) {
    if (auto bad = fooling_violation())
      throw TeeError("tee data violates the fooling constraints at " + cell_name(bad->first, bad->second), bad);
  }
}

FieldElem TeeMatrix::at(std::size_t row, std::size_t col) const {
  if (!shape_.contains(row, col)) throw TeeError("cell " + cell_name(row, col) + " is not in the tee shape", std::pair{row, col});
  return values_.at(row, col);
}

Matrix TeeMatrix::core() const { return values_.submatrix(shape_.indices(), shape_.indices()); }

std::optional<std::pair<std::size_t, std::size_t>> TeeMatrix::fooling_violation() const {
  const Field& f = values_.field();
  for (auto k : shape_.indices()) {
    if (!(values_.at(k, k) == f.one())) return std::pair{k, k};
    for (std::size_t l = 0; l < shape_.n(); ++l)
      if (l != k && !values_.is_zero(k, l) && !values_.is_zero(l, k)) return std::pair{k, l};
  }
  return std::nullopt;
}

bool TeeMatrix::satisfies_fooling_constraints() const { return !fooling_violation().has_value(); }

TeeMatrix tee_extract(const Matrix& m, std::size_t r, FoolingCheck check) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw TeeError("tee extraction needs a square matrix");
  if (2 * r > n) throw TeeError("tee order 2r = " + std::to_string(2 * r) + " exceeds n = " + std::to_string(n));
  if (r == 0) throw TeeError("tee order must be positive");
  const RankInfo info = mat_rank_info(m);
  if (info.rank > r)
    throw TeeError("matrix rank " + std::to_string(info.rank) + " exceeds r = " + std::to_string(r));
  std::vector<bool> in(n, false);
  for (auto i : info.pivot_rows) in[i] = true;
  for (auto j : info.pivot_cols) in[j] = true;
  std::size_t size = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  // |I1 u I2| <= 2 rank <= 2r, so padding always reaches 2r exactly.
  for (std::size_t k = 0; k < n && size < 2 * r; ++k)
    if (!in[k]) {
      in[k] = true;
      ++size;
    }
  std::vector<std::size_t> index_set;
  for (std::size_t k = 0; k < n; ++k)
    if (in[k]) index_set.push_back(k);
  return TeeMatrix(TeeShape(n, std::move(index_set)), m, check);
}

Matrix tee_reconstruct(const TeeMatrix& tee, std::size_t s) {
  const Field& f = tee.field();
  const TeeShape& shape = tee.shape();
  const std::size_t n = shape.n();
  const auto& idx = shape.indices();
  const Matrix block = tee.core();
  const RankInfo info = mat_rank_info(block);
  if (info.rank != s)
    throw TeeError("core block has rank " + std::to_string(info.rank) + ", expected " + std::to_string(s));

  Matrix out(f, n, n);
  if (s > 0) {
    std::vector<std::size_t> rows1, cols2;  // I1, I2 as ambient indices
    for (auto i : info.pivot_rows) rows1.push_back(idx[i]);
    for (auto j : info.pivot_cols) cols2.push_back(idx[j]);

    Matrix pivot_block(f, s, s);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b) pivot_block.set(a, b, tee.at(rows1[a], cols2[b]));
    const Matrix pivot_inv = invert(pivot_block);

    Matrix basis(f, s, n);  // rows I1, fully inside T
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t j = 0; j < n; ++j) basis.set(a, j, tee.at(rows1[a], j));

    Matrix row_in_i2(f, 1, s);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t b = 0; b < s; ++b) row_in_i2.set(0, b, tee.at(k, cols2[b]));
      const Matrix coeffs = mat_multiply(row_in_i2, pivot_inv);
      const Matrix row = mat_multiply(coeffs, basis);
      for (std::size_t j = 0; j < n; ++j) out.set(k, j, row.at(0, j));
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (shape.contains(i, j) && !(out.at(i, j) == tee.at(i, j)))
        throw TeeError("no rank-" + std::to_string(s) + " completion: cell " + cell_name(i, j) + " is inconsistent",
                       std::pair{i, j});
  return out;
}

std::size_t tee_support(const FoolingPattern& p, const std::vector<std::size_t>& index_set) {
  const std::size_t n = p.size();
  std::vector<bool> member(n, false);
  for (auto k : index_set) {
    if (k >= n) throw std::invalid_argument("tee index outside [n]");
    member[k] = true;
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((member[i] || member[j]) && p.get(i, j)) ++count;
  return count;
}

}  // namespace foolrank
