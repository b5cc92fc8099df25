#include "foolrank/bitmatrix.hpp"

namespace foolrank {

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

std::size_t BitMatrix::count() const {
  std::size_t c = 0;
  for (Word w : data_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i);
  return t;
}

std::size_t BitMatrix::rank_gf2() const {
  std::vector<Word> work = data_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    const std::size_t w = col / kWordBits;
    const Word mask = Word{1} << (col % kWordBits);
    std::size_t pivot = rank;
    while (pivot < rows_ && !(work[pivot * words_ + w] & mask)) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != rank)
      for (std::size_t x = 0; x < words_; ++x) std::swap(work[pivot * words_ + x], work[rank * words_ + x]);
    for (std::size_t r = rank + 1; r < rows_; ++r)
      if (work[r * words_ + w] & mask)
        for (std::size_t x = w; x < words_; ++x) work[r * words_ + x] ^= work[rank * words_ + x];
    ++rank;
  }
  return rank;
}

std::string BitMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
    s += '\n';
  }
  return s;
}

}  // namespace foolrank
