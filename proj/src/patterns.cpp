#include "foolrank/patterns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace foolrank {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

std::uint64_t RngStream::below(std::uint64_t bound) {
  // Rejection sampling on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double RngStream::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

FoolingPattern::FoolingPattern(BitMatrix bits) : bits_(std::move(bits)) {
  if (bits_.rows() != bits_.cols()) throw PatternError("fooling-set pattern must be square", 0, 0);
  const std::size_t n = bits_.rows();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (k == l) {
        if (!bits_.get(k, k))
          throw PatternError("zero diagonal entry at (" + std::to_string(k + 1) + "," + std::to_string(k + 1) + ")", k, k);
      } else if (bits_.get(k, l) && bits_.get(l, k)) {
        throw PatternError("diagonally opposite 1-pair at (" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                               ")/(" + std::to_string(l + 1) + "," + std::to_string(k + 1) + ")",
                           k, l);
      }
    }
  }
}

FoolingPattern FoolingPattern::identity(std::size_t n) { return FoolingPattern(BitMatrix::identity(n)); }

FoolingPattern FoolingPattern::triangular(std::size_t n, bool upper) {
  BitMatrix b = BitMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) upper ? b.set(i, j) : b.set(j, i);
  return FoolingPattern(std::move(b));
}

double FoolingPattern::density() const {
  const std::size_t n = size();
  if (n < 2) return 0.0;
  return static_cast<double>(off_diagonal_ones()) / static_cast<double>(n * (n - 1) / 2);
}

std::size_t pattern_density_count(std::size_t n, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("density p must lie in ]0,1]");
  if (n == 0) throw std::invalid_argument("pattern size must be >= 1");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double x = p * pairs;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

FoolingPattern sample_q(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("pattern size must be >= 1");
  BitMatrix b = BitMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      switch (rng.below(3)) {
        case 1: b.set(i, j); break;
        case 2: b.set(j, i); break;
        default: break;
      }
    }
  return FoolingPattern(std::move(b));
}

FoolingPattern sample_r(std::size_t n, double p, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("R(n,p) requires n >= 2");
  const std::size_t m = pattern_density_count(n, p);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  // Partial Fisher-Yates over pair indices with a sparse swap table.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto value_at = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::uint64_t> chosen(m);
  for (std::uint64_t t = 0; t < m; ++t) {
    const std::uint64_t j = t + rng.below(pairs - t);
    const std::uint64_t vj = value_at(j);
    swapped[j] = value_at(t);
    chosen[t] = vj;
  }

  // Row i of the strict upper triangle starts at pair index offset[i].
  std::vector<std::uint64_t> offset(n);
  for (std::size_t i = 0, acc = 0; i < n; ++i) {
    offset[i] = acc;
    acc += n - 1 - i;
  }
  BitMatrix b = BitMatrix::identity(n);
  for (std::uint64_t idx : chosen) {
    const auto it = std::upper_bound(offset.begin(), offset.end(), idx);
    const std::size_t i = static_cast<std::size_t>(it - offset.begin()) - 1;
    const std::size_t j = i + 1 + static_cast<std::size_t>(idx - offset[i]);
    rng.coin() ? b.set(i, j) : b.set(j, i);
  }
  return FoolingPattern(std::move(b));
}

std::vector<FoolingPattern> enumerate_patterns(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::uint8_t> state(pairs.size(), 0);
  std::vector<FoolingPattern> out;
  while (true) {
    BitMatrix b = BitMatrix::identity(n);
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      if (state[t] == 1) b.set(pairs[t].first, pairs[t].second);
      if (state[t] == 2) b.set(pairs[t].second, pairs[t].first);
    }
    out.emplace_back(std::move(b));
    std::size_t t = 0;
    while (t < state.size() && state[t] == 2) state[t++] = 0;
    if (t == state.size()) break;
    ++state[t];
  }
  return out;
}

PatternGraph::PatternGraph(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n * words_, 0) {}

void PatternGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v || u >= n_ || v >= n_) throw std::invalid_argument("bad edge");
  adj_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  adj_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t PatternGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (auto w : neighbours(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t PatternGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

PatternGraph pattern_graph(const FoolingPattern& p) {
  PatternGraph g(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    for (std::size_t l = 0; l < k; ++l)
      if (p.get(k, l)) g.add_edge(k, l);
  return g;
}

PatternGraph sample_gnq(std::size_t n, double q, RngStream& rng) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("edge probability q must lie in [0,1]");
  PatternGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.unit() < q) g.add_edge(i, j);
  return g;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::size_t v) { return (b[v / 64] >> (v % 64)) & 1u; }
void clear_bit(Bits& b, std::size_t v) { b[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
void set_bit(Bits& b, std::size_t v) { b[v / 64] |= std::uint64_t{1} << (v % 64); }

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool empty(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

template <class F>
void for_each_bit(const Bits& b, F&& f) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t x = b[w];
    while (x) {
      const int t = std::countr_zero(x);
      f(w * 64 + static_cast<std::size_t>(t));
      x &= x - 1;
    }
  }
}

std::vector<std::size_t> greedy_mis(const PatternGraph& g, Bits alive) {
  std::vector<std::size_t> out;
  while (!empty(alive)) {
    std::size_t best_v = 0, best_d = static_cast<std::size_t>(-1);
    for_each_bit(alive, [&](std::size_t v) {
      std::size_t d = 0;
      auto nb = g.neighbours(v);
      for (std::size_t w = 0; w < alive.size(); ++w) d += static_cast<std::size_t>(std::popcount(nb[w] & alive[w]));
      if (d < best_d) {
        best_d = d;
        best_v = v;
      }
    });
    out.push_back(best_v);
    auto nb = g.neighbours(best_v);
    for (std::size_t w = 0; w < alive.size(); ++w) alive[w] &= ~nb[w];
    clear_bit(alive, best_v);
  }
  return out;
}

class MisSolver {
 public:
  explicit MisSolver(const PatternGraph& g) : g_(g), words_(g.words()) {}

  std::vector<std::size_t> solve() {
    Bits alive(words_, 0);
    for (std::size_t v = 0; v < g_.size(); ++v) set_bit(alive, v);
    std::vector<std::size_t> out = solve_set(alive);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t degree_in(std::size_t v, const Bits& alive) const {
    auto nb = g_.neighbours(v);
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(nb[w] & alive[w]));
    return d;
  }

  void remove_closed_neighbourhood(std::size_t v, Bits& alive) const {
    auto nb = g_.neighbours(v);
    for (std::size_t w = 0; w < words_; ++w) alive[w] &= ~nb[w];
    clear_bit(alive, v);
  }

  // Greedy clique cover of the alive vertices: an upper bound on the MIS.
  std::size_t clique_cover_bound(const Bits& alive) const {
    Bits left = alive;
    std::size_t cliques = 0;
    while (!empty(left)) {
      ++cliques;
      Bits cand = left;
      while (!empty(cand)) {
        std::size_t v = 0;
        for (std::size_t w = 0; w < words_; ++w)
          if (cand[w]) {
            v = w * 64 + static_cast<std::size_t>(std::countr_zero(cand[w]));
            break;
          }
        clear_bit(left, v);
        auto nb = g_.neighbours(v);
        for (std::size_t w = 0; w < words_; ++w) cand[w] &= nb[w];
      }
    }
    return cliques;
  }

  Bits component_of(std::size_t start, const Bits& alive) const {
    Bits comp(words_, 0), frontier(words_, 0);
    set_bit(comp, start);
    set_bit(frontier, start);
    while (!empty(frontier)) {
      Bits next(words_, 0);
      for_each_bit(frontier, [&](std::size_t v) {
        auto nb = g_.neighbours(v);
        for (std::size_t w = 0; w < words_; ++w) next[w] |= nb[w] & alive[w] & ~comp[w];
      });
      for (std::size_t w = 0; w < words_; ++w) comp[w] |= next[w];
      frontier = std::move(next);
    }
    return comp;
  }

  // Maximum independent set of the subgraph induced by `alive`.
  std::vector<std::size_t> solve_set(Bits alive) {
    std::vector<std::size_t> forced;
    reduce(alive, forced);
    if (empty(alive)) return forced;

    std::size_t first = 0;
    for (std::size_t w = 0; w < words_; ++w)
      if (alive[w]) {
        first = w * 64 + static_cast<std::size_t>(std::countr_zero(alive[w]));
        break;
      }
    Bits comp = component_of(first, alive);
    if (popcount(comp) < popcount(alive)) {
      for_each_bit(comp, [&](std::size_t v) { clear_bit(alive, v); });
      auto a = solve_set(std::move(comp));
      auto b = solve_set(std::move(alive));
      forced.insert(forced.end(), a.begin(), a.end());
      forced.insert(forced.end(), b.begin(), b.end());
      return forced;
    }

    std::vector<std::size_t> best = greedy_mis(g_, alive);
    std::vector<std::size_t> current;
    branch(alive, current, best);
    forced.insert(forced.end(), best.begin(), best.end());
    return forced;
  }

  // Degree-0 and degree-1 vertices always belong to some maximum independent set.
  void reduce(Bits& alive, std::vector<std::size_t>& taken) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t x = alive[w];
        while (x) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
          x &= x - 1;
          if (!test_bit(alive, v)) continue;
          if (degree_in(v, alive) <= 1) {
            taken.push_back(v);
            remove_closed_neighbourhood(v, alive);
            changed = true;
          }
        }
      }
    }
  }

  void branch(Bits alive, std::vector<std::size_t>& current, std::vector<std::size_t>& best) {
    const std::size_t mark = current.size();
    reduce(alive, current);
    if (empty(alive)) {
      if (current.size() > best.size()) best = current;
      current.resize(mark);
      return;
    }
    if (current.size() + clique_cover_bound(alive) <= best.size()) {
      current.resize(mark);
      return;
    }
    std::size_t pivot = 0, pivot_deg = 0;
    for_each_bit(alive, [&](std::size_t v) {
      const std::size_t d = degree_in(v, alive);
      if (d > pivot_deg) {
        pivot_deg = d;
        pivot = v;
      }
    });
    {
      Bits with = alive;
      remove_closed_neighbourhood(pivot, with);
      current.push_back(pivot);
      branch(std::move(with), current, best);
      current.pop_back();
    }
    clear_bit(alive, pivot);
    branch(std::move(alive), current, best);
    current.resize(mark);
  }

  const PatternGraph& g_;
  std::size_t words_;
};

}  // namespace

std::vector<std::size_t> max_independent_set(const PatternGraph& g, MisMode mode) {
  if (mode == MisMode::exact) return MisSolver(g).solve();
  Bits alive(g.words(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) set_bit(alive, v);
  std::vector<std::size_t> out = greedy_mis(g, std::move(alive));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_independent(const PatternGraph& g, const std::vector<std::size_t>& set) {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (set[a] == set[b] || g.has_edge(set[a], set[b])) return false;
  return true;
}

TriangularBound triangular_bound(const FoolingPattern& p, MisMode mode) {
  TriangularBound tb;
  tb.indices = max_independent_set(pattern_graph(p), mode);
  tb.size = tb.indices.size();
  return tb;
}

}  // namespace foolrank
