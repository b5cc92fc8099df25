#pragma once

#include "foolrank/matrix.hpp"
#include "foolrank/patterns.hpp"
#include "oracles.hpp"

#include <initializer_list>

namespace testutil {

inline foolrank::BitMatrix bits_of(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t n = rows.size(), m = rows.begin()->size();
  foolrank::BitMatrix b(n, m);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int v : r) b.set(i, j++, v != 0);
    ++i;
  }
  return b;
}

inline foolrank::FoolingPattern pattern_of(std::initializer_list<std::initializer_list<int>> rows) {
  return foolrank::FoolingPattern(bits_of(rows));
}

inline oracle::Mat to_oracle(const foolrank::BitMatrix& b) {
  oracle::Mat m(b.rows(), oracle::Row(b.cols(), 0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m[i][j] = b.get(i, j);
  return m;
}

inline oracle::Mat to_oracle(const foolrank::Matrix& a) {
  oracle::Mat m(a.rows(), oracle::Row(a.cols(), 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = static_cast<int>(a.code(i, j));
  return m;
}

inline foolrank::Field gf(const char* desc) { return foolrank::Field(foolrank::parse_field_descriptor(desc)); }

inline foolrank::Matrix random_matrix(const foolrank::Field& f, std::size_t rows, std::size_t cols,
                                      foolrank::RngStream& rng) {
  foolrank::Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set_code(i, j, static_cast<std::uint32_t>(rng.below(f.finite().order())));
  return m;
}

// Unit diagonal, random nonzero values on the pattern's off-diagonal ones.
inline foolrank::Matrix random_regular(const foolrank::FoolingPattern& p, const foolrank::Field& f,
                                       foolrank::RngStream& rng) {
  const auto q = f.finite().order();
  foolrank::Matrix m(f, p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i == j)
        m.set_code(i, j, 1);
      else if (p.get(i, j))
        m.set_code(i, j, 1 + static_cast<std::uint32_t>(rng.below(q - 1)));
  return m;
}

}  // namespace testutil
