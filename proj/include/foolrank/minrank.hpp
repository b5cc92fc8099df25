#pragma once

// Minimum rank of a fooling-set pattern over a finite field.
//
// Two independent exact searches are provided:
//   brute     every regular matrix (unit diagonal, arbitrary nonzero values on
//             the off-diagonal ones) with incremental elimination row by row;
//   gpattern  factor M = X Y with Y in G-pattern form, enumerate the free
//             entries of Y and solve for each row of X separately.
// Plus universal lower bounds (ceil(sqrt n) and triangular submatrices) and
// the fooling-set / rank-squared certificate.

#include "foolrank/budget.hpp"
#include "foolrank/matrix.hpp"
#include "foolrank/patterns.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace foolrank {

enum class MinrankMethod { brute, gpattern, both, bounds };

MinrankMethod parse_minrank_method(std::string_view text);
std::string to_string(MinrankMethod m);

struct MinrankResult {
  FoolingPattern pattern;
  FieldSpec field;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::optional<std::size_t> exact;
  std::optional<Matrix> witness;
  std::string method;
  double elapsed_ms = 0.0;
};

// ceil(sqrt(n))
std::size_t sqrt_bound(std::size_t n);

// max(ceil(sqrt n), triangular bound); the triangular bound is exact for
// n <= kExactMisLimit and greedy above. Valid over every field.
inline constexpr std::size_t kExactMisLimit = 64;
std::size_t minrank_lower(const FoolingPattern& p);

// Rank over `field` of the pattern read as a 0/1 matrix: an upper bound.
std::size_t minrank_upper(const FoolingPattern& p, const Field& field);

// Number of leaves of the brute-force search, (q-1)^(off-diagonal ones).
// Saturates at UINT64_MAX.
std::uint64_t brute_search_size(const FoolingPattern& p, const Field& field);

// Leaves `exact` empty if brute_search_size exceeds budget.
MinrankResult minrank_exact_brute(const FoolingPattern& p, const Field& field, std::uint64_t budget);

struct GPatternDecision {
  bool satisfiable = false;
  std::optional<Matrix> witness;  // regular, sigma(witness) = p, rank <= r
  std::uint64_t y_candidates = 0;
};

// Estimated work of deciding rank <= r; with exact_rank_only, only factors
// whose Y has exactly r nonzero rows are counted.
double gpattern_search_size(const FoolingPattern& p, const Field& field, std::size_t r, bool exact_rank_only);

// Decides whether some M with sigma(M) = p has rank <= r.
// Throws BudgetExceeded if gpattern_search_size exceeds budget.
GPatternDecision minrank_decide_gpattern(const FoolingPattern& p, const Field& field, std::size_t r,
                                         std::uint64_t budget);

// Minimum rank by deciding r = minrank_lower(p), r + 1, ... in turn. Once
// ranks below r are excluded, a rank-r solution needs a Y with exactly r
// nonzero rows, so each step only enumerates those.
MinrankResult minrank_exact_gpattern(const FoolingPattern& p, const Field& field, std::uint64_t budget);

// Runs the requested method(s). With `both`, throws std::logic_error if the
// two searches disagree.
MinrankResult minrank(const FoolingPattern& p, const Field& field, MinrankMethod method, std::uint64_t budget);

using FoolingPair = std::pair<std::size_t, std::size_t>;  // (row x, column y)

class FoolingSetError : public std::invalid_argument {
 public:
  FoolingSetError(const std::string& what, std::size_t i, std::size_t j)
      : std::invalid_argument(what), i_(i), j_(j) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

struct FoolingSetCertificate {
  std::vector<FoolingPair> pairs;
  std::size_t size = 0;
  std::size_t rank_of_a = 0;
  std::size_t rank_of_kronecker = 0;
  // The submatrix of A (x) A^T on rows (x_i, y_i) and columns (y_j, x_j) has
  // the zero-nonzero pattern of the identity.
  bool permutation_submatrix = false;
  bool holds() const {
    return permutation_submatrix && rank_of_kronecker == rank_of_a * rank_of_a && size <= rank_of_a * rank_of_a;
  }
};

// Throws FoolingSetError (with the offending indices) if `pairs` is not a
// fooling set for sigma(a).
FoolingSetCertificate fooling_bound_check(const Matrix& a, const std::vector<FoolingPair>& pairs);

// A maximum fooling set of sigma(m) (exact; desk-scale sizes).
std::vector<FoolingPair> max_fooling_set(const Matrix& m);

}  // namespace foolrank
