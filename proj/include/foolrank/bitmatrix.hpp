#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace foolrank {

// Dense row-major 0/1 matrix, each row packed into 64-bit words.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + kWordBits - 1) / kWordBits), data_(rows_ * words_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t i, std::size_t j) const { return (data_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v = true) {
    Word& w = data_[i * words_ + j / kWordBits];
    const Word mask = Word{1} << (j % kWordBits);
    w = v ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) { data_[i * words_ + j / kWordBits] ^= Word{1} << (j % kWordBits); }

  std::span<Word> row(std::size_t i) { return {data_.data() + i * words_, words_}; }
  std::span<const Word> row(std::size_t i) const { return {data_.data() + i * words_, words_}; }

  std::size_t count() const;
  BitMatrix transpose() const;

  // Rank over GF(2) by word-parallel elimination.
  std::size_t rank_gf2() const;

  // Rows as strings of '0'/'1'.
  std::string to_string() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend auto operator<=>(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> data_;
};

}  // namespace foolrank
