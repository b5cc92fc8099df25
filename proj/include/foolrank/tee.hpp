#pragma once

// Tee shapes T = I x [n] u [n] x I and the field data living on them.
//
// A matrix of rank s that agrees with tee data whose I x I block already has
// rank s is determined by that data: pick s independent rows I1 and columns I2
// inside I; every row of the matrix is the unique combination of rows I1 that
// reproduces its entries in columns I2.

#include "foolrank/matrix.hpp"
#include "foolrank/patterns.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace foolrank {

class TeeError : public std::invalid_argument {
 public:
  explicit TeeError(const std::string& what, std::optional<std::pair<std::size_t, std::size_t>> cell = std::nullopt)
      : std::invalid_argument(what), cell_(cell) {}
  // Offending cell (0-based), when the error concerns one.
  const std::optional<std::pair<std::size_t, std::size_t>>& cell() const { return cell_; }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> cell_;
};

class TeeShape {
 public:
  // I is sorted and deduplicated; throws TeeError if empty or out of range.
  TeeShape(std::size_t n, std::vector<std::size_t> index_set);

  std::size_t n() const { return n_; }
  const std::vector<std::size_t>& indices() const { return index_set_; }
  std::size_t order() const { return index_set_.size(); }
  bool in_index_set(std::size_t k) const { return member_[k]; }
  bool contains(std::size_t row, std::size_t col) const { return member_[row] || member_[col]; }
  std::size_t cell_count() const;

  friend bool operator==(const TeeShape&, const TeeShape&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> index_set_;
  std::vector<bool> member_;
};

// Whether to insist on the fooling constraints N(k,k) = 1 and
// N(k,l) N(l,k) = 0 for k in I, l != k.
enum class FoolingCheck { enforce, skip };

// Field values on the cells of a tee shape. Cells outside the shape hold 0 in
// the backing matrix and are not part of the data.
class TeeMatrix {
 public:
  // Takes the T-cells of `values`; throws TeeError on fooling violations when enforced.
  TeeMatrix(TeeShape shape, const Matrix& values, FoolingCheck check = FoolingCheck::enforce);

  const TeeShape& shape() const { return shape_; }
  const Field& field() const { return values_.field(); }
  std::size_t order() const { return shape_.order(); }
  FieldElem at(std::size_t row, std::size_t col) const;  // throws TeeError outside T
  // The I x I block.
  Matrix core() const;
  std::size_t rank() const { return mat_rank(core()); }
  bool satisfies_fooling_constraints() const;
  // First cell breaking the fooling constraints, if any.
  std::optional<std::pair<std::size_t, std::size_t>> fooling_violation() const;

  friend bool operator==(const TeeMatrix&, const TeeMatrix&) = default;

 private:
  TeeShape shape_;
  Matrix values_;
};

// I = I1 u I2 (pivot rows/columns of m), padded with the smallest unused
// indices to exactly 2r. Requires rank(m) <= r and 2r <= n.
TeeMatrix tee_extract(const Matrix& m, std::size_t r, FoolingCheck check = FoolingCheck::enforce);

// The unique n x n matrix of rank s containing the tee data. Throws TeeError
// if the I x I block does not have rank s, or if the rank-s completion
// disagrees with a tee cell (reported in cell()).
Matrix tee_reconstruct(const TeeMatrix& tee, std::size_t s);

// Number of 1-bits of p inside T = I x [n] u [n] x I.
std::size_t tee_support(const FoolingPattern& p, const std::vector<std::size_t>& index_set);

}  // namespace foolrank
