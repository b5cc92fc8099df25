#pragma once

// Fooling-set patterns and their random models.
//
// A fooling-set pattern of size n is an n x n 0/1 matrix with unit diagonal in
// which no off-diagonal entry and its mirror image are both 1. Each unordered
// pair {k, l} is therefore in one of three states: both 0, (k,l) = 1, or
// (l,k) = 1, independently of every other pair. Hence the uniform model Q(n)
// over all 3^C(n,2) patterns is sampled by an independent uniform choice of
// state per pair.
//
// R(n, p) is uniform over the patterns with exactly ceil(p C(n,2)) off-diagonal
// ones: a uniform subset of that many pairs, each oriented by a fair coin.

#include "foolrank/bitmatrix.hpp"
#include "foolrank/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace foolrank {

class PatternError : public std::invalid_argument {
 public:
  PatternError(const std::string& what, std::size_t row, std::size_t col)
      : std::invalid_argument(what), row_(row), col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class FoolingPattern {
 public:
  // Validates; throws PatternError at the first offending cell in row-major order.
  explicit FoolingPattern(BitMatrix bits);

  static FoolingPattern identity(std::size_t n);
  // All ones strictly above (upper = true) or below the diagonal.
  static FoolingPattern triangular(std::size_t n, bool upper);

  std::size_t size() const { return bits_.rows(); }
  bool get(std::size_t k, std::size_t l) const { return bits_.get(k, l); }
  const BitMatrix& bits() const { return bits_; }
  std::size_t off_diagonal_ones() const { return bits_.count() - bits_.rows(); }
  double density() const;

  friend bool operator==(const FoolingPattern&, const FoolingPattern&) = default;
  friend auto operator<=>(const FoolingPattern&, const FoolingPattern&) = default;

 private:
  BitMatrix bits_;
};

inline FoolingPattern pattern_validate(const BitMatrix& bits) { return FoolingPattern(bits); }

// ceil(p * n(n-1)/2). Products within 1e-9 relative of an integer snap to it,
// so decimal inputs such as p = 0.7 are not pushed up by rounding noise.
std::size_t pattern_density_count(std::size_t n, double p);

FoolingPattern sample_q(std::size_t n, RngStream& rng);
FoolingPattern sample_r(std::size_t n, double p, RngStream& rng);

// Every fooling-set pattern of size n (3^C(n,2) of them); for small n.
std::vector<FoolingPattern> enumerate_patterns(std::size_t n);

// Undirected simple graph on vertices 0..n-1 with bitset adjacency rows.
class PatternGraph {
 public:
  explicit PatternGraph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void add_edge(std::size_t u, std::size_t v);  // u != v
  bool has_edge(std::size_t u, std::size_t v) const { return (adj_[u * words_ + v / 64] >> (v % 64)) & 1u; }
  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;
  std::span<const std::uint64_t> neighbours(std::size_t v) const { return {adj_.data() + v * words_, words_}; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> adj_;
};

// Edge {k, l} with k > l iff bits(k, l) = 1. Independent sets are exactly the
// index sets whose principal submatrix has zero strict lower triangle.
PatternGraph pattern_graph(const FoolingPattern& p);

PatternGraph sample_gnq(std::size_t n, double q, RngStream& rng);

enum class MisMode { exact, greedy };

// Exact: branch and bound with degree-0/1 reductions, connected-component
// splitting and a greedy clique-cover bound (a greedy colouring of the
// complement); branching on the lowest-index vertex of maximum degree.
// Greedy: repeatedly take a minimum-degree vertex, lowest index on ties.
// Both are deterministic; returned sets are sorted.
std::vector<std::size_t> max_independent_set(const PatternGraph& g, MisMode mode);

bool is_independent(const PatternGraph& g, const std::vector<std::size_t>& set);

struct TriangularBound {
  std::size_t size = 0;
  std::vector<std::size_t> indices;
};

// Largest found index set whose principal submatrix is upper triangular with
// unit diagonal: a lower bound on the rank of every matrix with pattern p,
// over every field.
TriangularBound triangular_bound(const FoolingPattern& p, MisMode mode);

}  // namespace foolrank
