#pragma once

// Exact arithmetic over small finite fields GF(p^k) and over the rationals.
//
// Finite field elements are encoded as integers < p^k: the polynomial
// a_0 + a_1 x + ... + a_{k-1} x^{k-1} (reduced modulo a fixed irreducible
// modulus) is stored as a_0 + a_1 p + ... + a_{k-1} p^{k-1}. For prime fields
// this is the usual residue. Rationals are arbitrary-precision fractions kept
// in lowest terms.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace foolrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FieldKind { prime, prime_power, rational };

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

struct FieldSpec {
  FieldKind kind = FieldKind::prime;
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  // Coefficients over GF(p), constant term first, length k + 1. Present iff k > 1.
  std::vector<std::uint32_t> modulus;

  static FieldSpec prime(std::uint32_t p);
  static FieldSpec prime_power(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  // Uses the lexicographically smallest monic irreducible of degree k.
  static FieldSpec prime_power(std::uint32_t p, std::uint32_t k);
  static FieldSpec rational();

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Number of elements; 0 stands for "infinite" (rational kind).
std::uint64_t order(const FieldSpec& spec);

// "gf2", "gf3", "gf4", "gf(2^3)", "gf(2^3;1,1,0,1)", "q".
FieldSpec parse_field_descriptor(std::string_view text);
std::string field_descriptor(const FieldSpec& spec);

bool is_prime(std::uint64_t v);
// Irreducibility over GF(p) of a polynomial given constant-first.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

class FieldElem {
 public:
  FieldElem() : value_(std::uint32_t{0}) {}
  explicit FieldElem(std::uint32_t code) : value_(code) {}
  explicit FieldElem(Rational q) : value_(std::move(q)) {}

  bool is_code() const { return std::holds_alternative<std::uint32_t>(value_); }
  std::uint32_t code() const { return std::get<std::uint32_t>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  std::variant<std::uint32_t, Rational> value_;
};

namespace detail {
struct FiniteTables;
}

// Table-driven arithmetic on element codes of a finite field.
class FiniteOps {
 public:
  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (!add_.empty()) return add_[a * q_ + b];
    return add_digits(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_.empty()) return mul_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // Precondition a != 0.
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

 private:
  friend struct detail::FiniteTables;
  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_ = 2;
  std::uint32_t k_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1) so log sums need no reduction
  std::vector<std::uint16_t> add_;  // full tables for q <= kFullTableOrder
  std::vector<std::uint16_t> mul_;
};

// Immutable, cheaply copyable field handle.
class Field {
 public:
  explicit Field(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_finite() const { return spec_.kind != FieldKind::rational; }
  std::uint64_t order() const { return foolrank::order(spec_); }
  std::uint32_t characteristic() const { return is_finite() ? spec_.p : 0; }
  std::string descriptor() const { return field_descriptor(spec_); }

  // Throws FieldError for the rational field.
  const FiniteOps& finite() const;

  FieldElem zero() const;
  FieldElem one() const;
  // Image of an integer under the canonical ring map Z -> F.
  FieldElem from_int(std::int64_t v) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;  // throws FieldError on zero
  FieldElem div(const FieldElem& a, const FieldElem& b) const;
  bool is_zero(const FieldElem& a) const;
  bool contains(const FieldElem& a) const;

  // All elements in code order; finite fields only.
  std::vector<FieldElem> elements() const;

  // Canonical text encoding: the integer code, or "a/b" ("a" when b = 1).
  std::string format(const FieldElem& a) const;
  FieldElem parse(std::string_view text) const;

  // Test hook: a field whose multiplication table has one wrong entry.
  // Used to confirm that the invariant suites notice broken arithmetic.
  static Field with_corrupted_product(const FieldSpec& spec, std::uint32_t a, std::uint32_t b,
                                      std::uint32_t wrong);

  friend bool operator==(const Field& x, const Field& y) { return x.spec_ == y.spec_; }

 private:
  FieldSpec spec_;
  std::shared_ptr<const FiniteOps> tables_;
};

}  // namespace foolrank
