#include "foolrank/minrank.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace foolrank {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

MinrankResult bounds_only(const FoolingPattern& p, const Field& field, std::string method) {
  MinrankResult res{p, field.spec(), minrank_lower(p), minrank_upper(p, field), std::nullopt, std::nullopt,
                    std::move(method), 0.0};
  return res;
}

// Incremental echelon basis over a finite field: every stored row has a unit
// pivot and is zero in the pivot columns of the rows stored before it.
class EchelonBasis {
 public:
  EchelonBasis(const FiniteOps& ops, std::size_t n) : ops_(ops), n_(n) {}

  // Reduces v in place; returns true (and stores v) if it was independent.
  bool insert(std::vector<std::uint32_t>& v) {
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const std::uint32_t f = v[pivots_[b]];
      if (f == 0) continue;
      const auto& row = rows_[b];
      for (std::size_t j = 0; j < n_; ++j)
        if (row[j]) v[j] = ops_.sub(v[j], ops_.mul(f, row[j]));
    }
    std::size_t piv = 0;
    while (piv < n_ && v[piv] == 0) ++piv;
    if (piv == n_) return false;
    const std::uint32_t s = ops_.inv(v[piv]);
    for (std::size_t j = piv; j < n_; ++j) v[j] = ops_.mul(s, v[j]);
    rows_.push_back(v);
    pivots_.push_back(piv);
    return true;
  }
  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }

 private:
  const FiniteOps& ops_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

class BruteSearch {
 public:
  BruteSearch(const FoolingPattern& p, const FiniteOps& ops, std::size_t floor)
      : ops_(ops), n_(p.size()), floor_(floor), basis_(ops, p.size()), current_(p.size() * p.size(), 0) {
    ones_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      current_[k * n_ + k] = 1;
      for (std::size_t l = 0; l < n_; ++l)
        if (l != k && p.get(k, l)) ones_[k].push_back(l);
    }
  }

  void run() { dfs(0, 0); }
  std::size_t best() const { return best_; }
  const std::vector<std::uint32_t>& best_matrix() const { return best_matrix_; }

 private:
  void dfs(std::size_t k, std::size_t rank) {
    if (best_ <= floor_) return;
    if (k == n_) {
      if (rank < best_) {
        best_ = rank;
        best_matrix_ = current_;
      }
      return;
    }
    const auto& cells = ones_[k];
    const std::uint32_t q = ops_.order();
    for (auto l : cells) current_[k * n_ + l] = 1;
    while (true) {
      std::vector<std::uint32_t> v(current_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                                   current_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_));
      const bool grew = basis_.insert(v);
      const std::size_t next_rank = rank + (grew ? 1 : 0);
      if (next_rank < best_) dfs(k + 1, next_rank);
      if (grew) basis_.pop();
      if (best_ <= floor_) return;
      // Next assignment of values in {1..q-1} to this row's off-diagonal ones.
      std::size_t t = 0;
      while (t < cells.size() && current_[k * n_ + cells[t]] == q - 1) current_[k * n_ + cells[t++]] = 1;
      if (t == cells.size()) break;
      ++current_[k * n_ + cells[t]];
    }
  }

  const FiniteOps& ops_;
  std::size_t n_;
  std::size_t floor_;
  EchelonBasis basis_;
  std::vector<std::vector<std::size_t>> ones_;
  std::vector<std::uint32_t> current_;
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> best_matrix_;
};

std::vector<GPattern> patterns_with_pivots(std::size_t r, std::size_t n, std::size_t s_min, std::size_t s_max) {
  std::vector<GPattern> out;
  for_each_gpattern(r, n, [&](const GPattern& g) {
    if (g.pivots() >= s_min && g.pivots() <= s_max) out.push_back(g);
    return g.pivots() <= s_max;
  });
  // Cheapest subproblems first.
  std::stable_sort(out.begin(), out.end(), [](const GPattern& a, const GPattern& b) { return a.stars() < b.stars(); });
  return out;
}

class GPatternSearch {
 public:
  GPatternSearch(const FoolingPattern& p, const Field& field) : p_(p), field_(field), ops_(field.finite()), n_(p.size()) {}

  // Searches the given G-patterns; on success fills witness_.
  bool run(const std::vector<GPattern>& patterns) {
    for (const auto& g : patterns)
      if (try_pattern(g)) return true;
    return false;
  }

  std::uint64_t y_candidates() const { return y_candidates_; }
  std::optional<Matrix>& witness() { return witness_; }

 private:
  bool try_pattern(const GPattern& g) {
    const std::size_t s = g.pivots();
    const auto& piv = g.one_columns();
    std::vector<bool> is_pivot(n_, false);
    for (auto c : piv) is_pivot[c] = true;

    // Column c_i of M = X Y equals column i of X, so the support of X is
    // forced by the pattern.
    support_.assign(n_, {});
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < s; ++i)
        if (p_.get(k, piv[i])) support_[k].push_back(i);
    // A non-pivot column left of every pivot in the row's support is zero
    // in M, so P must be zero there too.
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t l = 0; l < n_; ++l) {
        if (is_pivot[l] || !p_.get(k, l)) continue;
        const bool reachable =
            std::any_of(support_[k].begin(), support_[k].end(), [&](std::size_t i) { return piv[i] < l; });
        if (!reachable) return false;
      }

    // Y restricted to its s nonzero rows.
    y_.assign(s * n_, 0);
    stars_.clear();
    for (std::size_t i = 0; i < s; ++i) {
      y_[i * n_ + piv[i]] = 1;
      for (std::size_t l = piv[i] + 1; l < n_; ++l)
        if (!is_pivot[l]) stars_.push_back(i * n_ + l);
    }
    free_cols_.clear();
    for (std::size_t l = 0; l < n_; ++l)
      if (!is_pivot[l]) free_cols_.push_back(l);

    x_.assign(n_ * s, 0);
    const std::uint32_t q = ops_.order();
    while (true) {
      ++y_candidates_;
      bool ok = true;
      for (std::size_t k = 0; k < n_ && ok; ++k) ok = solve_row(k, s);
      if (ok) {
        build_witness(s);
        return true;
      }
      std::size_t t = 0;
      while (t < stars_.size() && y_[stars_[t]] == q - 1) y_[stars_[t++]] = 0;
      if (t == stars_.size()) break;
      ++y_[stars_[t]];
    }
    return false;
  }

  // Looks for X_k with X_k,i != 0 exactly on support_[k] such that
  // sigma(X_k Y) agrees with row k of P on the non-pivot columns.
  bool solve_row(std::size_t k, std::size_t s) {
    const auto& sup = support_[k];
    const std::uint32_t q = ops_.order();
    std::uint32_t* x = x_.data() + k * s;
    for (std::size_t i = 0; i < s; ++i) x[i] = 0;
    for (auto i : sup) x[i] = 1;
    while (true) {
      bool ok = true;
      for (auto l : free_cols_) {
        std::uint32_t acc = 0;
        for (auto i : sup) acc = ops_.add(acc, ops_.mul(x[i], y_[i * n_ + l]));
        if ((acc != 0) != p_.get(k, l)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
      std::size_t t = 0;
      while (t < sup.size() && x[sup[t]] == q - 1) x[sup[t++]] = 1;
      if (t == sup.size()) return false;
      ++x[sup[t]];
    }
  }

  void build_witness(std::size_t s) {
    Matrix m(field_, n_, n_);
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t l = 0; l < n_; ++l) {
        std::uint32_t acc = 0;
        for (std::size_t i = 0; i < s; ++i) acc = ops_.add(acc, ops_.mul(x_[k * s + i], y_[i * n_ + l]));
        m.set_code(k, l, acc);
      }
    // Divide each row by its diagonal entry.
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint32_t d = ops_.inv(m.code(k, k));
      for (std::size_t l = 0; l < n_; ++l) m.set_code(k, l, ops_.mul(d, m.code(k, l)));
    }
    witness_ = std::move(m);
  }

  const FoolingPattern& p_;
  Field field_;
  const FiniteOps& ops_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::uint32_t> y_;
  std::vector<std::uint32_t> x_;
  std::vector<std::size_t> stars_;
  std::vector<std::size_t> free_cols_;
  std::uint64_t y_candidates_ = 0;
  std::optional<Matrix> witness_;
};

double search_size_for(const std::vector<GPattern>& patterns, std::size_t n, double q) {
  double total = 0.0;
  for (const auto& g : patterns)
    total += std::pow(q, static_cast<double>(g.stars())) * static_cast<double>(n) *
             std::pow(q - 1.0, static_cast<double>(g.pivots()));
  return total;
}

}  // namespace

MinrankMethod parse_minrank_method(std::string_view text) {
  if (text == "brute") return MinrankMethod::brute;
  if (text == "gpattern") return MinrankMethod::gpattern;
  if (text == "both") return MinrankMethod::both;
  if (text == "bounds") return MinrankMethod::bounds;
  throw std::invalid_argument("unknown minrank method '" + std::string(text) + "'");
}

std::string to_string(MinrankMethod m) {
  switch (m) {
    case MinrankMethod::brute: return "brute";
    case MinrankMethod::gpattern: return "gpattern";
    case MinrankMethod::both: return "both";
    case MinrankMethod::bounds: return "bounds";
  }
  return {};
}

std::size_t sqrt_bound(std::size_t n) {
  std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

std::size_t minrank_lower(const FoolingPattern& p) {
  const MisMode mode = p.size() <= kExactMisLimit ? MisMode::exact : MisMode::greedy;
  return std::max(sqrt_bound(p.size()), triangular_bound(p, mode).size);
}

std::size_t minrank_upper(const FoolingPattern& p, const Field& field) {
  return mat_rank(Matrix::from_pattern(field, p.bits()));
}

std::uint64_t brute_search_size(const FoolingPattern& p, const Field& field) {
  return saturating_pow(field.finite().order() - 1, p.off_diagonal_ones());
}

MinrankResult minrank_exact_brute(const FoolingPattern& p, const Field& field, std::uint64_t budget) {
  const auto t0 = Clock::now();
  MinrankResult res = bounds_only(p, field, "brute");
  if (brute_search_size(p, field) > budget) {
    res.elapsed_ms = ms_since(t0);
    return res;
  }
  BruteSearch search(p, field.finite(), res.lower);
  search.run();
  Matrix w(field, p.size(), p.size());
  const auto& codes = search.best_matrix();
  for (std::size_t k = 0; k < p.size(); ++k)
    for (std::size_t l = 0; l < p.size(); ++l) w.set_code(k, l, codes[k * p.size() + l]);
  res.exact = search.best();
  res.witness = std::move(w);
  res.elapsed_ms = ms_since(t0);
  return res;
}

double gpattern_search_size(const FoolingPattern& p, const Field& field, std::size_t r, bool exact_rank_only) {
  const std::size_t n = p.size();
  r = std::min(r, n);
  const auto patterns = patterns_with_pivots(r, n, exact_rank_only ? r : 0, r);
  return search_size_for(patterns, n, static_cast<double>(field.finite().order()));
}

GPatternDecision minrank_decide_gpattern(const FoolingPattern& p, const Field& field, std::size_t r,
                                         std::uint64_t budget) {
  const std::size_t n = p.size();
  if (r > n) r = n;
  const auto patterns = patterns_with_pivots(r, n, 0, r);
  if (search_size_for(patterns, n, static_cast<double>(field.finite().order())) > static_cast<double>(budget))
    throw BudgetExceeded("gpattern search for rank <= " + std::to_string(r) + " exceeds the budget");
  GPatternSearch search(p, field);
  GPatternDecision d;
  d.satisfiable = search.run(patterns);
  d.witness = std::move(search.witness());
  d.y_candidates = search.y_candidates();
  return d;
}

MinrankResult minrank_exact_gpattern(const FoolingPattern& p, const Field& field, std::uint64_t budget) {
  const auto t0 = Clock::now();
  MinrankResult res = bounds_only(p, field, "gpattern");
  const std::size_t n = p.size();
  const double q = static_cast<double>(field.finite().order());
  double spent = 0.0;
  for (std::size_t r = res.lower; r <= n; ++r) {
    const auto patterns = patterns_with_pivots(r, n, r, r);
    spent += search_size_for(patterns, n, q);
    if (spent > static_cast<double>(budget)) break;
    GPatternSearch search(p, field);
    if (search.run(patterns)) {
      res.exact = r;
      res.witness = std::move(search.witness());
      break;
    }
  }
  res.elapsed_ms = ms_since(t0);
  return res;
}

MinrankResult minrank(const FoolingPattern& p, const Field& field, MinrankMethod method, std::uint64_t budget) {
  switch (method) {
    case MinrankMethod::bounds: {
      const auto t0 = Clock::now();
      MinrankResult res = bounds_only(p, field, "bounds");
      res.elapsed_ms = ms_since(t0);
      return res;
    }
    case MinrankMethod::brute:
      return minrank_exact_brute(p, field, budget);
    case MinrankMethod::gpattern:
      return minrank_exact_gpattern(p, field, budget);
    case MinrankMethod::both: {
      MinrankResult a = minrank_exact_brute(p, field, budget);
      MinrankResult b = minrank_exact_gpattern(p, field, budget);
      if (a.exact && b.exact && *a.exact != *b.exact)
        throw std::logic_error("brute-force and gpattern searches disagree: " + std::to_string(*a.exact) + " vs " +
                               std::to_string(*b.exact));
      const double elapsed = a.elapsed_ms + b.elapsed_ms;
      MinrankResult out = a.exact ? std::move(a) : std::move(b);
      out.method = "both";
      out.elapsed_ms = elapsed;
      return out;
    }
  }
  throw std::invalid_argument("unknown minrank method");
}

FoolingSetCertificate fooling_bound_check(const Matrix& a, const std::vector<FoolingPair>& pairs) {
  const std::size_t t = pairs.size();
  for (std::size_t i = 0; i < t; ++i) {
    const auto [x, y] = pairs[i];
    if (x >= a.rows() || y >= a.cols()) throw FoolingSetError("fooling pair out of range", i, i);
    if (a.is_zero(x, y)) throw FoolingSetError("A(x_i, y_i) is zero for i = " + std::to_string(i + 1), i, i);
  }
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j) {
      const auto [xi, yi] = pairs[i];
      const auto [xj, yj] = pairs[j];
      if (!a.is_zero(xi, yj) && !a.is_zero(xj, yi))
        throw FoolingSetError("pairs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " violate the fooling condition",
                              i, j);
    }

  FoolingSetCertificate cert;
  cert.pairs = pairs;
  cert.size = t;
  cert.rank_of_a = mat_rank(a);
  // B = A (x) A^T, B[(x, y'), (y, x')] = A[x, y] * A[x', y'].
  const Matrix b = mat_kronecker(a, a.transpose());
  cert.rank_of_kronecker = mat_rank(b);
  const std::size_t nx = a.rows(), ny = a.cols();
  std::vector<std::size_t> rows, cols;
  for (const auto& [x, y] : pairs) {
    rows.push_back(x * ny + y);
    cols.push_back(y * nx + x);
  }
  const ZeroNonzeroPattern sub = mat_sigma(b.submatrix(rows, cols));
  cert.permutation_submatrix = sub == BitMatrix::identity(t);
  return cert;
}

std::vector<FoolingPair> max_fooling_set(const Matrix& m) {
  std::vector<FoolingPair> cand;
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = 0; y < m.cols(); ++y)
      if (!m.is_zero(x, y)) cand.emplace_back(x, y);
  // Conflict graph: two candidates conflict iff both cross entries are nonzero.
  PatternGraph conflicts(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (!m.is_zero(cand[i].first, cand[j].second) && !m.is_zero(cand[j].first, cand[i].second))
        conflicts.add_edge(i, j);
  std::vector<FoolingPair> out;
  for (auto v : max_independent_set(conflicts, MisMode::exact)) out.push_back(cand[v]);
  return out;
}

}  // namespace foolrank
