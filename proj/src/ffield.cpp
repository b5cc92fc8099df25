#include "foolrank/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace foolrank {

namespace {

constexpr std::uint32_t kFullTableOrder = 256;

using Poly = std::vector<std::uint32_t>;  // constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

// Remainder of a modulo a nonzero divisor over GF(p).
Poly poly_mod(Poly a, Poly d, std::uint32_t p) {
  trim(a);
  trim(d);
  const std::uint32_t lead_inv = inv_mod(d.back(), p);
  while (a.size() >= d.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::uint64_t sub = factor * d[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits_of(std::uint32_t code, std::uint32_t p, std::uint32_t k) {
  Poly out(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    out[i] = code % p;
    code /= p;
  }
  return out;
}

std::uint32_t code_of(const Poly& digits, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) code = code * p + digits[i];
  return code;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    r *= b;
    if (r > (std::uint64_t{1} << 32)) throw FieldError("field order overflow");
  }
  return static_cast<std::uint32_t>(r);
}

std::string trim_ws(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::uint32_t parse_u32(std::string_view s, const char* what) {
  std::string t = trim_ws(s);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw FieldError(std::string("bad ") + what + " in field descriptor: '" + t + "'");
  return v;
}

}  // namespace

namespace detail {

struct FiniteTables {
  static std::shared_ptr<FiniteOps> build(const FieldSpec& spec) {
    auto ops = std::make_shared<FiniteOps>();
    const std::uint32_t p = spec.p;
    const std::uint32_t k = spec.k;
    const std::uint32_t q = ipow(p, k);
    ops->p_ = p;
    ops->k_ = k;
    ops->q_ = q;

    ops->neg_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      Poly d = digits_of(a, p, k);
      for (auto& c : d) c = (p - c) % p;
      ops->neg_[a] = code_of(d, p);
    }

    auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
      if (k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
      Poly da = digits_of(a, p, k), db = digits_of(b, p, k);
      Poly prod(2 * k - 1, 0);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j)
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
      Poly r = poly_mod(prod, spec.modulus, p);
      r.resize(k, 0);
      return code_of(r, p);
    };

    // Primitive element: smallest code whose powers run through all of F*.
    std::uint32_t generator = 0;
    for (std::uint32_t g = (q == 2 ? 1 : 2); g < q && generator == 0; ++g) {
      std::uint32_t x = g;
      std::uint32_t period = 1;
      while (x != 1) {
        x = slow_mul(x, g);
        ++period;
        if (period > q) break;
      }
      if (period == q - 1) generator = g;
    }
    if (generator == 0) throw FieldError("no primitive element found; modulus not irreducible?");

    ops->log_.assign(q, 0);
    ops->exp_.assign(2 * (q - 1), 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      ops->exp_[i] = x;
      ops->exp_[i + q - 1] = x;
      ops->log_[x] = i;
      x = slow_mul(x, generator);
    }
    ops->inv_.assign(q, 0);
    for (std::uint32_t a = 1; a < q; ++a) ops->inv_[a] = ops->exp_[(q - 1 - ops->log_[a]) % (q - 1)];

    if (q <= kFullTableOrder) {
      ops->add_.resize(std::size_t{q} * q);
      ops->mul_.resize(std::size_t{q} * q);
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
          ops->add_[a * q + b] = static_cast<std::uint16_t>(ops->add_digits(a, b));
          ops->mul_[a * q + b] = static_cast<std::uint16_t>(
              (a == 0 || b == 0) ? 0 : ops->exp_[ops->log_[a] + ops->log_[b]]);
        }
    }
    return ops;
  }

  static void corrupt(FiniteOps& ops, std::uint32_t a, std::uint32_t b, std::uint32_t wrong) {
    if (ops.mul_.empty()) throw FieldError("corruption hook requires a tabulated field");
    ops.mul_[a * ops.q_ + b] = static_cast<std::uint16_t>(wrong);
  }
};

}  // namespace detail

std::uint32_t FiniteOps::add_digits(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  std::uint32_t result = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t da = a % p_, db = b % p_;
    result += ((da + db) % p_) * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return result;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint32_t count = ipow(p, static_cast<std::uint32_t>(d));
    for (std::uint32_t c = 0; c < count; ++c) {
      Poly g = digits_of(c, p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (p > kMaxFieldOrder) throw FieldError("field order exceeds 2^16");
  FieldSpec s;
  s.kind = FieldKind::prime;
  s.p = p;
  s.k = 1;
  return s;
}

FieldSpec FieldSpec::prime_power(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) {
  if (k == 1) return prime(p);
  if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw FieldError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw FieldError("field order exceeds 2^16");
  }
  for (auto c : modulus)
    if (c >= p) throw FieldError("modulus coefficient out of range for GF(" + std::to_string(p) + ")");
  trim(modulus);
  if (modulus.size() != k + 1) throw FieldError("modulus must have degree exactly k");
  const std::uint32_t lead_inv = inv_mod(modulus.back(), p);
  for (auto& c : modulus) c = static_cast<std::uint32_t>(std::uint64_t{c} * lead_inv % p);
  if (!is_irreducible(p, modulus)) throw FieldError("modulus is reducible over GF(" + std::to_string(p) + ")");
  FieldSpec s;
  s.kind = FieldKind::prime_power;
  s.p = p;
  s.k = k;
  s.modulus = std::move(modulus);
  return s;
}

FieldSpec FieldSpec::prime_power(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return prime(p);
  if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw FieldError("field order exceeds 2^16");
  }
  for (std::uint32_t c = 0; c < q; ++c) {
    Poly m = digits_of(c, p, k);
    m.push_back(1);
    if (is_irreducible(p, m)) return prime_power(p, k, std::move(m));
  }
  throw FieldError("no irreducible polynomial found");
}

FieldSpec FieldSpec::rational() {
  FieldSpec s;
  s.kind = FieldKind::rational;
  s.p = 0;
  s.k = 0;
  return s;
}

std::uint64_t order(const FieldSpec& spec) {
  if (spec.kind == FieldKind::rational) return 0;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.k; ++i) q *= spec.p;
  return q;
}

FieldSpec parse_field_descriptor(std::string_view text) {
  std::string t = trim_ws(text);
  std::string lower = t;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "q") return FieldSpec::rational();
  if (lower.rfind("gf", 0) != 0) throw FieldError("unknown field descriptor '" + t + "'");
  std::string rest = lower.substr(2);
  if (rest.empty()) throw FieldError("unknown field descriptor '" + t + "'");
  if (rest.front() != '(') {
    const std::uint32_t q = parse_u32(rest, "order");
    if (is_prime(q)) return FieldSpec::prime(q);
    // Prime power shorthand, e.g. gf4, gf8, gf9.
    for (std::uint32_t p = 2; p <= q; ++p) {
      if (q % p != 0) continue;
      if (!is_prime(p)) break;
      std::uint32_t k = 0, v = q;
      while (v % p == 0) {
        v /= p;
        ++k;
      }
      if (v != 1) break;
      return FieldSpec::prime_power(p, k);
    }
    throw FieldError("field order " + std::to_string(q) + " is not a prime power (non-prime p)");
  }
  if (rest.back() != ')') throw FieldError("unterminated field descriptor '" + t + "'");
  std::string body = rest.substr(1, rest.size() - 2);
  std::string head = body, coeffs;
  if (auto semi = body.find(';'); semi != std::string::npos) {
    head = body.substr(0, semi);
    coeffs = body.substr(semi + 1);
  }
  std::uint32_t p = 0, k = 1;
  if (auto caret = head.find('^'); caret != std::string::npos) {
    p = parse_u32(head.substr(0, caret), "characteristic");
    k = parse_u32(head.substr(caret + 1), "degree");
  } else {
    p = parse_u32(head, "characteristic");
  }
  if (coeffs.empty()) return k == 1 ? FieldSpec::prime(p) : FieldSpec::prime_power(p, k);
  std::vector<std::uint32_t> mod;
  std::stringstream ss(coeffs);
  std::string item;
  while (std::getline(ss, item, ',')) mod.push_back(parse_u32(item, "modulus coefficient"));
  if (k == 1) throw FieldError("a modulus is only meaningful for k > 1");
  return FieldSpec::prime_power(p, k, std::move(mod));
}

std::string field_descriptor(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::rational:
      return "q";
    case FieldKind::prime:
      return "gf" + std::to_string(spec.p);
    case FieldKind::prime_power: {
      std::string s = "gf(" + std::to_string(spec.p) + "^" + std::to_string(spec.k) + ";";
      for (std::size_t i = 0; i < spec.modulus.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(spec.modulus[i]);
      }
      return s + ")";
    }
  }
  return {};
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
  switch (spec.kind) {
    case FieldKind::rational:
      if (spec.p != 0 || spec.k != 0 || !spec.modulus.empty())
        throw FieldError("rational field spec carries finite-field data");
      return;
    case FieldKind::prime:
      spec_ = FieldSpec::prime(spec.p);
      break;
    case FieldKind::prime_power:
      spec_ = FieldSpec::prime_power(spec.p, spec.k, spec.modulus);
      break;
  }
  tables_ = detail::FiniteTables::build(spec_);
}

Field Field::with_corrupted_product(const FieldSpec& spec, std::uint32_t a, std::uint32_t b,
                                    std::uint32_t wrong) {
  Field f(spec);
  auto ops = std::make_shared<FiniteOps>(f.finite());
  detail::FiniteTables::corrupt(*ops, a, b, wrong);
  f.tables_ = std::move(ops);
  return f;
}

const FiniteOps& Field::finite() const {
  if (!tables_) throw FieldError("operation requires a finite field");
  return *tables_;
}

FieldElem Field::zero() const { return is_finite() ? FieldElem(0u) : FieldElem(Rational(0)); }
FieldElem Field::one() const { return is_finite() ? FieldElem(1u) : FieldElem(Rational(1)); }

FieldElem Field::from_int(std::int64_t v) const {
  if (!is_finite()) return FieldElem(Rational(v));
  const std::int64_t p = spec_.p;
  return FieldElem(static_cast<std::uint32_t>(((v % p) + p) % p));
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
  if (is_finite()) return FieldElem(tables_->add(a.code(), b.code()));
  return FieldElem(Rational(a.rational() + b.rational()));
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
  if (is_finite()) return FieldElem(tables_->sub(a.code(), b.code()));
  return FieldElem(Rational(a.rational() - b.rational()));
}

FieldElem Field::neg(const FieldElem& a) const {
  if (is_finite()) return FieldElem(tables_->neg(a.code()));
  return FieldElem(Rational(-a.rational()));
}

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
  if (is_finite()) return FieldElem(tables_->mul(a.code(), b.code()));
  return FieldElem(Rational(a.rational() * b.rational()));
}

FieldElem Field::inv(const FieldElem& a) const {
  if (is_zero(a)) throw FieldError("inverse of zero");
  if (is_finite()) return FieldElem(tables_->inv(a.code()));
  return FieldElem(Rational(1 / a.rational()));
}

FieldElem Field::div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }

bool Field::is_zero(const FieldElem& a) const {
  if (is_finite()) return a.code() == 0;
  return a.rational() == 0;
}

bool Field::contains(const FieldElem& a) const {
  if (is_finite()) return a.is_code() && a.code() < tables_->order();
  return !a.is_code();
}

std::vector<FieldElem> Field::elements() const {
  const auto& ops = finite();
  std::vector<FieldElem> out;
  out.reserve(ops.order());
  for (std::uint32_t c = 0; c < ops.order(); ++c) out.emplace_back(c);
  return out;
}

std::string Field::format(const FieldElem& a) const {
  if (is_finite()) return std::to_string(a.code());
  const Rational& r = a.rational();
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

FieldElem Field::parse(std::string_view text) const {
  std::string t = trim_ws(text);
  if (is_finite()) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || v >= tables_->order())
      throw FieldError("'" + t + "' is not an element of " + descriptor());
    return FieldElem(v);
  }
  try {
    auto slash = t.find('/');
    if (slash == std::string::npos) return FieldElem(Rational(BigInt(t)));
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) throw FieldError("zero denominator in '" + t + "'");
    return FieldElem(Rational(num, den));
  } catch (const FieldError&) {
    throw;
  } catch (const std::exception&) {
    throw FieldError("'" + t + "' is not a rational number");
  }
}

}  // namespace foolrank
