#pragma once

// Zero-nonzero patterns of polynomial tuples over finite fields, the
// C(n + m d, n) pattern-count bound and its triangular certificate.

#include "foolrank/budget.hpp"
#include "foolrank/ffield.hpp"
#include "foolrank/gpattern.hpp"
#include "foolrank/matrix.hpp"
#include "foolrank/patterns.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace foolrank {

struct Monomial {
  std::uint32_t coeff = 0;               // field element code
  std::vector<std::uint32_t> exponents;  // one per variable
  std::size_t degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Polynomial {
  std::vector<Monomial> terms;
  std::size_t degree() const;  // 0 for the zero polynomial
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

class PolyTuple {
 public:
  // Finite fields only; every monomial needs n_vars exponents and a valid
  // coefficient code. Throws std::invalid_argument otherwise.
  PolyTuple(Field field, std::size_t n_vars, std::vector<Polynomial> polys);

  const Field& field() const { return field_; }
  std::size_t n_vars() const { return n_vars_; }
  std::size_t h() const { return polys_.size(); }
  std::size_t degree() const;
  const std::vector<Polynomial>& polys() const { return polys_; }

 private:
  Field field_;
  std::size_t n_vars_;
  std::vector<Polynomial> polys_;
};

std::uint32_t poly_eval(const Field& field, const Polynomial& f, std::span<const std::uint32_t> u);
std::vector<std::uint32_t> poly_eval(const PolyTuple& f, std::span<const std::uint32_t> u);

using ZeroPattern = std::vector<std::uint8_t>;  // sigma of a value vector, entries 0/1

std::size_t pattern_weight(const ZeroPattern& y);
std::string to_string(const ZeroPattern& y);

struct PatternSet {
  std::size_t weight_bound = 0;
  // Achieved patterns with the lexicographically first point achieving each.
  std::map<ZeroPattern, std::vector<std::uint32_t>> witnesses;
  std::size_t size() const { return witnesses.size(); }
  bool contains(const ZeroPattern& y) const { return witnesses.count(y) != 0; }
};

inline constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 24;

// Evaluates f at every point of F^n_vars. Throws BudgetExceeded if there are
// more than `budget` points. With threads > 1 the points are split into
// contiguous chunks; the result does not depend on the thread count.
PatternSet zero_patterns_enumerate(const PolyTuple& f, std::size_t m, std::uint64_t budget = kDefaultPointBudget,
                                   unsigned threads = 1);

// C(n_vars + m d, n_vars)
BigInt rbg_bound(std::size_t n_vars, std::size_t m, std::size_t d);

struct RbgReport {
  std::size_t n_vars = 0;
  std::size_t h = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t pattern_count = 0;
  BigInt bound;
  bool hypothesis = false;  // h >= n_vars; the bound is only claimed then
  bool within_bound() const { return BigInt(pattern_count) <= bound; }
  bool passed() const { return hypothesis && within_bound(); }
};

RbgReport rbg_check(const PolyTuple& f, std::size_t m, std::uint64_t budget = kDefaultPointBudget);

class CertificateError : public std::logic_error {
 public:
  CertificateError(const std::string& what, std::size_t y, std::size_t z) : std::logic_error(what), y_(y), z_(z) {}
  std::size_t y() const { return y_; }
  std::size_t z() const { return z_; }

 private:
  std::size_t y_;
  std::size_t z_;
};

struct RbgCertificate {
  // Achieved patterns, ordered by weight then lexicographically, so that
  // z >= y entrywise implies z does not come before y.
  std::vector<ZeroPattern> patterns;
  std::vector<std::vector<std::uint32_t>> witnesses;
  // matrix(y, z) = g_y(u_z) with g_y the product of the f_j with y_j = 1.
  Matrix matrix;
  bool upper_triangular = false;
  std::size_t rank = 0;
  bool holds() const { return upper_triangular && rank == patterns.size(); }
};

// Throws CertificateError if g_y(u_z) != 0 disagrees with z >= y.
RbgCertificate rbg_certificate(const PolyTuple& f, std::size_t m, std::uint64_t budget = kDefaultPointBudget);

// The system whose zero-nonzero pattern is sigma(X Y) for Y with G-pattern g:
// one polynomial per cell (k, l) of the n x n product, row-major. Variables
// are X (n x r, row-major) followed by the * cells of g (row-major).
PolyTuple gpattern_system(const Field& field, const GPattern& g);

// Text form: one polynomial per line, monomials "coeff:e1,...,en" joined by
// "+". Blank lines and lines starting with '#' are skipped; "0" alone is the
// zero polynomial.
PolyTuple parse_polys(const Field& field, std::size_t n_vars, std::string_view text);
// Infers n_vars from the first monomial.
PolyTuple parse_polys(const Field& field, std::string_view text);
std::string format_polys(const PolyTuple& f);

}  // namespace foolrank
