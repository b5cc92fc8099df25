#pragma once

// G-patterns: r x n symbol matrices over {0, 1, *} with the shape of a reduced
// row-echelon factor. A G-pattern is determined by the sorted set of columns
// c_1 < ... < c_s (s <= r) that hold a 1:
//   row i <= s: 0 left of c_i, 1 at c_i, 0 at every other 1-column, * elsewhere
//   rows s+1..r: all 0.
// Column indices are 0-based in the API and 1-based in the text form
// "r n : c1,c2,...".

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace foolrank {

enum class GSymbol : std::uint8_t { zero, one, star };

class GPattern {
 public:
  // Throws std::invalid_argument unless one_columns is strictly increasing,
  // has at most r entries, and every column is < n.
  GPattern(std::size_t r, std::size_t n, std::vector<std::size_t> one_columns);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return n_; }
  std::size_t pivots() const { return one_columns_.size(); }
  const std::vector<std::size_t>& one_columns() const { return one_columns_; }

  GSymbol symbol(std::size_t i, std::size_t j) const;
  std::vector<std::vector<GSymbol>> symbols() const;

  // Number of * entries.
  std::size_t stars() const;

  std::string to_string() const;  // "r n : c1,c2,..."
  static GPattern parse(std::string_view text);

  friend bool operator==(const GPattern&, const GPattern&) = default;

 private:
  std::size_t r_;
  std::size_t n_;
  std::vector<std::size_t> one_columns_;
  std::vector<std::size_t> col_to_row_;  // pivot row of a 1-column, npos otherwise
};

inline GPattern gpattern_make(std::size_t r, std::size_t n, std::vector<std::size_t> one_columns) {
  return GPattern(r, n, std::move(one_columns));
}

inline std::size_t gpattern_stars(const GPattern& g) { return g.stars(); }

// Visits every r x n G-pattern, ordered by number of 1-columns, then
// lexicographically by column set. Returning false from the visitor stops.
void for_each_gpattern(std::size_t r, std::size_t n, const std::function<bool(const GPattern&)>& visit);

std::vector<GPattern> gpattern_enumerate(std::size_t r, std::size_t n);

// sum_{j <= r} C(n, j)
std::uint64_t gpattern_count(std::size_t r, std::size_t n);

// Largest star count over all r x n G-patterns, max_{s <= r} s (n - s).
std::size_t gpattern_max_stars(std::size_t r, std::size_t n);

std::string symbols_to_string(const GPattern& g);

}  // namespace foolrank
