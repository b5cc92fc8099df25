#include "foolrank/patterns.hpp"

#include "foolrank/matrix.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

using namespace foolrank;
using testutil::bits_of;
using testutil::pattern_of;

TEST_CASE("pattern validation") {
  CHECK_NOTHROW(FoolingPattern::identity(3));
  try {
    pattern_of({{1, 1}, {1, 1}});
    FAIL("expected PatternError");
  } catch (const PatternError& e) {
    CHECK(e.row() == 0);
    CHECK(e.col() == 1);
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(pattern_of({{1, 0}, {0, 0}}), PatternError);
  CHECK_THROWS_AS(FoolingPattern(BitMatrix(2, 3)), PatternError);
  const auto up = FoolingPattern::triangular(4, true);
  CHECK(up.off_diagonal_ones() == 6);
  CHECK(up.density() == doctest::Approx(1.0));
}

TEST_CASE("density count") {
  CHECK(pattern_density_count(5, 0.5) == 5);
  CHECK(pattern_density_count(9, 1.0) == 36);
  CHECK(pattern_density_count(4, 0.3) == 2);
  CHECK(pattern_density_count(5, 0.7) == 7);
  CHECK(pattern_density_count(5, 0.71) == 8);
  CHECK(pattern_density_count(1, 0.5) == 0);
  CHECK_THROWS(pattern_density_count(5, 0.0));
  CHECK_THROWS(pattern_density_count(5, 1.5));
}

TEST_CASE("RngStream is a pure function of (seed, stream)") {
  RngStream a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs |= x != c.next_u64();
  }
  CHECK(differs);
  RngStream r(1, 1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(7) < 7);
    const double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sample_q") {
  RngStream rng(1, 0);
  CHECK(sample_q(1, rng) == FoolingPattern::identity(1));
  std::set<FoolingPattern> seen;
  std::map<int, int> pair_state;  // state of pair (0,1)
  for (int i = 0; i < 100000; ++i) {
    RngStream s(99, static_cast<std::uint64_t>(i));
    const auto p = sample_q(3, s);
    seen.insert(p);
    pair_state[p.get(0, 1) ? 1 : p.get(1, 0) ? 2 : 0]++;
  }
  CHECK(seen.size() == 27);
  CHECK(enumerate_patterns(3).size() == 27);
  // Each state has mean 33333.3 and sigma 149.1.
  for (auto [state, count] : pair_state) CHECK(std::abs(count - 100000.0 / 3) < 3 * 149.1);
}

TEST_CASE("sample_r hits the density exactly") {
  std::uint64_t stream = 0;
  for (std::size_t n : {2, 3, 4, 5, 7, 10, 20})
    for (double p : {0.05, 0.25, 0.5, 0.7, 0.9, 1.0})
      for (int t = 0; t < 50; ++t) {
        RngStream rng(5, stream++);
        const auto pat = sample_r(n, p, rng);
        CHECK(pat.off_diagonal_ones() == pattern_density_count(n, p));
      }
  RngStream rng(5, 0);
  CHECK(sample_r(4, 1.0, rng).off_diagonal_ones() == 6);
  CHECK_THROWS(sample_r(1, 0.5, rng));
  CHECK_THROWS(sample_r(4, 0.0, rng));
}

TEST_CASE("sample_r(2, 1) picks each orientation about half the time") {
  int upper = 0;
  for (int i = 0; i < 10000; ++i) {
    RngStream rng(17, static_cast<std::uint64_t>(i));
    upper += sample_r(2, 1.0, rng).get(0, 1);
  }
  CHECK(std::abs(upper - 5000) < 3 * 50);
}

TEST_CASE("sample_r is uniform over patterns with the given density") {
  // n = 3, p = 0.5: 2 ones among 3 pairs, 3 * 4 = 12 patterns equally likely.
  std::map<FoolingPattern, int> freq;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    RngStream rng(23, static_cast<std::uint64_t>(i));
    freq[sample_r(3, 0.5, rng)]++;
  }
  CHECK(freq.size() == 12);
  double chi2 = 0.0;
  for (auto [p, c] : freq) chi2 += (c - draws / 12.0) * (c - draws / 12.0) / (draws / 12.0);
  CHECK(chi2 < 31.26);  // 0.999 quantile, 11 degrees of freedom
}

TEST_CASE("pattern graph") {
  CHECK(pattern_graph(FoolingPattern::identity(5)).edge_count() == 0);
  CHECK(pattern_graph(FoolingPattern::triangular(5, false)).edge_count() == 10);
  CHECK(pattern_graph(FoolingPattern::triangular(5, true)).edge_count() == 0);
  const auto g = pattern_graph(pattern_of({{1, 0, 0}, {1, 1, 1}, {0, 0, 1}}));
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK(g.edge_count() == 1);
}

TEST_CASE("maximum independent set examples") {
  PatternGraph empty(6);
  CHECK(max_independent_set(empty, MisMode::exact).size() == 6);
  PatternGraph k5(5);
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t v = u + 1; v < 5; ++v) k5.add_edge(u, v);
  CHECK(max_independent_set(k5, MisMode::exact) == std::vector<std::size_t>{0});
  PatternGraph c5(5);
  for (std::size_t u = 0; u < 5; ++u) c5.add_edge(u, (u + 1) % 5);
  CHECK(max_independent_set(c5, MisMode::exact).size() == 2);
  CHECK(max_independent_set(PatternGraph(0), MisMode::exact).empty());
}

TEST_CASE("exact MIS matches subset enumeration, greedy is maximal and not larger") {
  std::uint64_t stream = 0;
  for (std::size_t n : {1, 4, 8, 12, 16, 18})
    for (double q : {0.1, 0.3, 0.5, 0.8})
      for (int t = 0; t < 8; ++t) {
        RngStream rng(31, stream++);
        const auto g = sample_gnq(n, q, rng);
        std::vector<std::pair<int, int>> edges;
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = u + 1; v < n; ++v)
            if (g.has_edge(u, v)) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        const auto exact = max_independent_set(g, MisMode::exact);
        const auto greedy = max_independent_set(g, MisMode::greedy);
        CHECK(is_independent(g, exact));
        CHECK(is_independent(g, greedy));
        CHECK(exact.size() == static_cast<std::size_t>(oracle::mis_size(static_cast<int>(n), edges)));
        CHECK(greedy.size() <= exact.size());
        for (std::size_t v = 0; v < n; ++v) {
          bool blocked = std::find(greedy.begin(), greedy.end(), v) != greedy.end();
          for (auto u : greedy) blocked |= g.has_edge(u, v);
          CHECK(blocked);
        }
        CHECK(max_independent_set(g, MisMode::exact) == exact);
      }
}

TEST_CASE("exact MIS on larger sparse graphs is at least greedy and independent") {
  RngStream rng(37, 0);
  const auto g = sample_gnq(120, 0.05, rng);
  const auto exact = max_independent_set(g, MisMode::exact);
  CHECK(is_independent(g, exact));
  CHECK(exact.size() >= max_independent_set(g, MisMode::greedy).size());
}

TEST_CASE("triangular bound") {
  CHECK(triangular_bound(FoolingPattern::identity(6), MisMode::exact).size == 6);
  CHECK(triangular_bound(FoolingPattern::triangular(6, true), MisMode::exact).size == 6);
  CHECK(triangular_bound(FoolingPattern::triangular(6, false), MisMode::exact).size == 1);
  RngStream rng(41, 0);
  for (int t = 0; t < 30; ++t) {
    const auto p = sample_q(9, rng);
    const auto b = triangular_bound(p, MisMode::exact);
    CHECK(b.size >= 1);
    CHECK(b.size <= 9);
    // The principal submatrix on the indices is upper unitriangular.
    for (std::size_t a = 0; a < b.indices.size(); ++a)
      for (std::size_t c = 0; c < a; ++c) CHECK_FALSE(p.get(b.indices[a], b.indices[c]));
  }
}

TEST_CASE("triangular bound never exceeds the rank of a realization") {
  RngStream rng(43, 0);
  for (const char* d : {"gf2", "gf3", "gf5"}) {
    const Field f = testutil::gf(d);
    for (int t = 0; t < 100; ++t) {
      const auto p = sample_q(2 + rng.below(5), rng);
      const Matrix m = testutil::random_regular(p, f, rng);
      CHECK(triangular_bound(p, MisMode::exact).size <= mat_rank(m));
    }
  }
}

TEST_CASE("G(n, q) edge counts") {
  RngStream a(1, 0), b(1, 1), c(1, 2);
  CHECK(sample_gnq(30, 0.0, a).edge_count() == 0);
  CHECK(sample_gnq(30, 1.0, b).edge_count() == 435);
  const auto g = sample_gnq(100, 0.5, c);
  // mean 2475, sigma sqrt(4950 / 4) = 35.2
  CHECK(std::abs(static_cast<double>(g.edge_count()) - 2475.0) < 4 * 35.2);
}
