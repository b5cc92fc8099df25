#include "foolrank/zeropatterns.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <thread>

namespace foolrank {

std::size_t Monomial::degree() const {
  std::size_t d = 0;
  for (auto e : exponents) d += e;
  return d;
}

std::size_t Polynomial::degree() const {
  std::size_t d = 0;
  for (const auto& t : terms)
    if (t.coeff != 0) d = std::max(d, t.degree());
  return d;
}

PolyTuple::PolyTuple(Field field, std::size_t n_vars, std::vector<Polynomial> polys)
    : field_(std::move(field)), n_vars_(n_vars), polys_(std::move(polys)) {
  if (!field_.is_finite()) throw std::invalid_argument("polynomial tuples need a finite field");
  const std::uint32_t q = field_.finite().order();
  for (std::size_t j = 0; j < polys_.size(); ++j)
    for (const auto& t : polys_[j].terms) {
      if (t.exponents.size() != n_vars_)
        throw std::invalid_argument("polynomial " + std::to_string(j + 1) + " has a monomial with " +
                                    std::to_string(t.exponents.size()) + " exponents, expected " +
                                    std::to_string(n_vars_));
      if (t.coeff >= q) throw std::invalid_argument("coefficient code outside the field");
    }
}

std::size_t PolyTuple::degree() const {
  std::size_t d = 0;
  for (const auto& p : polys_) d = std::max(d, p.degree());
  return d;
}

std::uint32_t poly_eval(const Field& field, const Polynomial& f, std::span<const std::uint32_t> u) {
  const FiniteOps& ops = field.finite();
  std::uint32_t acc = 0;
  for (const auto& t : f.terms) {
    std::uint32_t v = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size() && v != 0; ++i)
      for (std::uint32_t e = 0; e < t.exponents[i]; ++e) v = ops.mul(v, u[i]);
    acc = ops.add(acc, v);
  }
  return acc;
}

std::vector<std::uint32_t> poly_eval(const PolyTuple& f, std::span<const std::uint32_t> u) {
  if (u.size() != f.n_vars())
    throw std::invalid_argument("point has " + std::to_string(u.size()) + " coordinates, expected " +
                                std::to_string(f.n_vars()));
  std::vector<std::uint32_t> out;
  out.reserve(f.h());
  for (const auto& p : f.polys()) out.push_back(poly_eval(f.field(), p, u));
  return out;
}

std::size_t pattern_weight(const ZeroPattern& y) { return static_cast<std::size_t>(std::count(y.begin(), y.end(), 1)); }

std::string to_string(const ZeroPattern& y) {
  std::string s;
  for (auto b : y) s += b ? '1' : '0';
  return s;
}

namespace {

// First point index achieving each pattern within [begin, end).
using FirstHits = std::map<ZeroPattern, std::uint64_t>;

void decode_point(std::uint64_t index, std::uint32_t q, std::vector<std::uint32_t>& u) {
  for (std::size_t i = u.size(); i-- > 0;) {
    u[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
}

FirstHits scan(const PolyTuple& f, std::size_t m, std::uint64_t begin, std::uint64_t end) {
  FirstHits hits;
  const std::uint32_t q = f.field().finite().order();
  std::vector<std::uint32_t> u(f.n_vars());
  decode_point(begin, q, u);
  ZeroPattern y(f.h());
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < f.h() && w <= m; ++j) {
      y[j] = poly_eval(f.field(), f.polys()[j], u) != 0;
      w += y[j];
    }
    if (w <= m) hits.emplace(y, idx);  // keeps the earliest index
    for (std::size_t i = u.size(); i-- > 0;) {
      if (++u[i] < q) break;
      u[i] = 0;
    }
  }
  return hits;
}

}  // namespace

PatternSet zero_patterns_enumerate(const PolyTuple& f, std::size_t m, std::uint64_t budget, unsigned threads) {
  const std::uint64_t q = f.field().finite().order();
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < f.n_vars(); ++i) {
    if (points > budget / q) throw BudgetExceeded("zero-pattern enumeration needs more than " +
                                                  std::to_string(budget) + " points");
    points *= q;
  }
  if (points > budget) throw BudgetExceeded("zero-pattern enumeration exceeds the budget");

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(points, 64))));
  std::vector<FirstHits> parts(threads);
  if (threads == 1) {
    parts[0] = scan(f, m, 0, points);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] { parts[t] = scan(f, m, points * t / threads, points * (t + 1) / threads); });
    for (auto& th : pool) th.join();
  }
  FirstHits merged;
  for (auto& part : parts)
    for (auto& [y, idx] : part) {
      auto [it, inserted] = merged.emplace(y, idx);
      if (!inserted) it->second = std::min(it->second, idx);
    }

  PatternSet out;
  out.weight_bound = m;
  std::vector<std::uint32_t> u(f.n_vars());
  for (auto& [y, idx] : merged) {
    decode_point(idx, static_cast<std::uint32_t>(q), u);
    out.witnesses.emplace(y, u);
  }
  return out;
}

BigInt rbg_bound(std::size_t n_vars, std::size_t m, std::size_t d) {
  const std::size_t top = n_vars + m * d;
  BigInt c = 1;
  for (std::size_t i = 1; i <= n_vars; ++i) c = c * (top - n_vars + i) / i;
  return c;
}

RbgReport rbg_check(const PolyTuple& f, std::size_t m, std::uint64_t budget) {
  RbgReport r;
  r.n_vars = f.n_vars();
  r.h = f.h();
  r.d = f.degree();
  r.m = m;
  r.hypothesis = f.h() >= f.n_vars();
  r.pattern_count = zero_patterns_enumerate(f, m, budget).size();
  r.bound = rbg_bound(r.n_vars, m, r.d);
  return r;
}

RbgCertificate rbg_certificate(const PolyTuple& f, std::size_t m, std::uint64_t budget) {
  const PatternSet set = zero_patterns_enumerate(f, m, budget);
  std::vector<std::pair<ZeroPattern, std::vector<std::uint32_t>>> items(set.witnesses.begin(), set.witnesses.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return pattern_weight(a.first) < pattern_weight(b.first); });

  const std::size_t s = items.size();
  const Field& field = f.field();
  const FiniteOps& ops = field.finite();
  Matrix a(field, s, s);
  bool triangular = true;
  for (std::size_t z = 0; z < s; ++z) {
    const auto values = poly_eval(f, items[z].second);
    for (std::size_t y = 0; y < s; ++y) {
      std::uint32_t g = 1;  // empty product for y = 0
      for (std::size_t j = 0; j < f.h(); ++j)
        if (items[y].first[j]) g = ops.mul(g, values[j]);
      a.set_code(y, z, g);
      bool dominates = true;
      for (std::size_t j = 0; j < f.h(); ++j)
        if (items[y].first[j] && !items[z].first[j]) dominates = false;
      if ((g != 0) != dominates)
        throw CertificateError("g_y(u_z) is " + std::string(g ? "nonzero" : "zero") + " for y = " +
                                   to_string(items[y].first) + ", z = " + to_string(items[z].first),
                               y, z);
      if (g != 0 && z < y) triangular = false;
      if (y == z && g == 0) triangular = false;
    }
  }

  RbgCertificate cert{{}, {}, a, triangular, mat_rank(a)};
  for (auto& [y, u] : items) {
    cert.patterns.push_back(y);
    cert.witnesses.push_back(u);
  }
  return cert;
}

PolyTuple gpattern_system(const Field& field, const GPattern& g) {
  const std::size_t r = g.rows(), n = g.cols();
  // Star cells get variable indices after the n*r entries of X.
  std::vector<std::size_t> star_var(r * n, 0);
  std::size_t vars = n * r;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (g.symbol(i, l) == GSymbol::star) star_var[i * n + l] = vars++;

  std::vector<Polynomial> polys;
  polys.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Polynomial f;
      for (std::size_t j = 0; j < r; ++j) {
        const GSymbol sym = g.symbol(j, l);
        if (sym == GSymbol::zero) continue;
        Monomial t{1, std::vector<std::uint32_t>(vars, 0)};
        t.exponents[k * r + j] = 1;
        if (sym == GSymbol::star) t.exponents[star_var[j * n + l]] = 1;
        f.terms.push_back(std::move(t));
      }
      polys.push_back(std::move(f));
    }
  return PolyTuple(field, vars, std::move(polys));
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint32_t parse_exponent(const std::string& s, std::size_t line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 6)
    throw std::invalid_argument("line " + std::to_string(line) + ": bad exponent '" + s + "'");
  return static_cast<std::uint32_t>(std::stoul(s));
}

std::vector<Polynomial> parse_lines(const Field& field, std::string_view text, std::optional<std::size_t>& n_vars) {
  std::vector<Polynomial> polys;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw);
    if (body.empty() || body[0] == '#') continue;
    Polynomial p;
    if (body != "0") {
      for (const auto& mono : split(body, '+')) {
        const auto colon = mono.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("line " + std::to_string(line) + ": monomial '" + mono + "' lacks ':'");
        const FieldElem c = field.parse(trim(mono.substr(0, colon)));
        Monomial t{c.code(), {}};
        const std::string exps = trim(mono.substr(colon + 1));
        if (!exps.empty())
          for (const auto& e : split(exps, ',')) t.exponents.push_back(parse_exponent(e, line));
        if (!n_vars) n_vars = t.exponents.size();
        if (t.exponents.size() != *n_vars)
          throw std::invalid_argument("line " + std::to_string(line) + ": expected " + std::to_string(*n_vars) +
                                      " exponents");
        p.terms.push_back(std::move(t));
      }
    }
    polys.push_back(std::move(p));
  }
  return polys;
}

}  // namespace

PolyTuple parse_polys(const Field& field, std::size_t n_vars, std::string_view text) {
  std::optional<std::size_t> nv = n_vars;
  auto polys = parse_lines(field, text, nv);
  return PolyTuple(field, n_vars, std::move(polys));
}

PolyTuple parse_polys(const Field& field, std::string_view text) {
  std::optional<std::size_t> nv;
  auto polys = parse_lines(field, text, nv);
  return PolyTuple(field, nv.value_or(0), std::move(polys));
}

std::string format_polys(const PolyTuple& f) {
  std::string out;
  for (const auto& p : f.polys()) {
    if (p.terms.empty()) {
      out += "0\n";
      continue;
    }
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
      if (i) out += '+';
      out += std::to_string(p.terms[i].coeff) + ':';
      for (std::size_t v = 0; v < p.terms[i].exponents.size(); ++v) {
        if (v) out += ',';
        out += std::to_string(p.terms[i].exponents[v]);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace foolrank
