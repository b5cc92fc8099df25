#include "foolrank/gpattern.hpp"
#include "foolrank/tee.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace foolrank;
using testutil::gf;

namespace {

Matrix random_rank_s(const Field& f, std::size_t n, std::size_t s, RngStream& rng) {
  while (true) {
    Matrix m = mat_multiply(testutil::random_matrix(f, n, s, rng), testutil::random_matrix(f, s, n, rng));
    if (mat_rank(m) == s) return m;
  }
}

}  // namespace

TEST_CASE("tee shapes") {
  const TeeShape t(5, {3, 1, 3});
  CHECK(t.indices() == std::vector<std::size_t>{1, 3});
  CHECK(t.order() == 2);
  CHECK(t.contains(1, 4));
  CHECK(t.contains(0, 3));
  CHECK_FALSE(t.contains(0, 2));
  CHECK(t.cell_count() == 25 - 9);
  CHECK_THROWS_AS(TeeShape(5, {}), TeeError);
  CHECK_THROWS_AS(TeeShape(5, {5}), TeeError);
}

TEST_CASE("tee matrices enforce the fooling constraints on I") {
  const Field f = gf("gf3");
  const Matrix ones = Matrix::from_ints(f, 3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1});
  try {
    TeeMatrix(TeeShape(3, {0}), ones);
    FAIL("expected TeeError");
  } catch (const TeeError& e) {
    REQUIRE(e.cell());
    CHECK(*e.cell() == std::pair<std::size_t, std::size_t>{0, 1});
  }
  CHECK_NOTHROW(TeeMatrix(TeeShape(3, {0}), ones, FoolingCheck::skip));
  const TeeMatrix ok(TeeShape(3, {0}), Matrix::from_ints(f, 3, 3, {1, 2, 0, 0, 1, 1, 1, 2, 1}));
  CHECK(ok.satisfies_fooling_constraints());
  CHECK(ok.at(2, 0) == FieldElem(1u));
  CHECK_THROWS_AS(ok.at(1, 2), TeeError);
}

TEST_CASE("tee extraction examples") {
  const Field f = gf("gf3");
  CHECK_THROWS_AS(tee_extract(Matrix::identity(f, 4), 2), TeeError);  // rank 4 > r
  CHECK_THROWS_AS(tee_extract(Matrix::identity(f, 4), 3), TeeError);  // 2r > n
  const Matrix ones = Matrix::from_ints(f, 4, 4, std::vector<long long>(16, 1));
  const TeeMatrix t = tee_extract(ones, 1, FoolingCheck::skip);
  CHECK(t.order() == 2);
  CHECK(t.shape().indices() == std::vector<std::size_t>{0, 1});
  CHECK(t.rank() == 1);
  CHECK_THROWS_AS(tee_extract(ones, 1), TeeError);  // opposite nonzeros

  RngStream rng(3, 0);
  const Matrix m = random_rank_s(f, 6, 2, rng);
  const TeeMatrix t2 = tee_extract(m, 2, FoolingCheck::skip);
  CHECK(t2.order() == 4);
  CHECK(t2.rank() == 2);
  const RankInfo info = mat_rank_info(m);
  for (auto i : info.pivot_rows) CHECK(t2.shape().in_index_set(i));
  for (auto j : info.pivot_cols) CHECK(t2.shape().in_index_set(j));
}

TEST_CASE("rank-2 fooling data on I = {1, 2} reconstructs the full matrix") {
  const Field f = gf("gf2");
  const Matrix m = Matrix::from_ints(f, 4, 4, {1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0});
  const TeeMatrix t(TeeShape(4, {0, 1}), m);
  CHECK(t.satisfies_fooling_constraints());
  CHECK(t.rank() == 2);
  CHECK(tee_reconstruct(t, 2) == m);
  // Padding to 2r = 4 takes every index, and the last two have a zero diagonal.
  CHECK_THROWS_AS(tee_extract(m, 2), TeeError);
}

TEST_CASE("tee reconstruction examples") {
  const Field f = gf("gf2");
  Matrix data(f, 4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    data.set_code(0, k, 1);
    data.set_code(k, 0, 1);
  }
  const TeeMatrix t(TeeShape(4, {0}), data, FoolingCheck::skip);
  CHECK(tee_reconstruct(t, 1) == Matrix::from_ints(f, 4, 4, std::vector<long long>(16, 1)));
  CHECK_THROWS_AS(tee_reconstruct(t, 2), TeeError);

  const Field f3 = gf("gf3");
  const TeeMatrix full(TeeShape(3, {0, 1, 2}), Matrix::identity(f3, 3));
  CHECK_THROWS_AS(tee_reconstruct(full, 2), TeeError);
  CHECK(tee_reconstruct(full, 3) == Matrix::identity(f3, 3));
}

TEST_CASE("inconsistent tee data names the cell") {
  const Field f = gf("gf3");
  // Only row 0 and column 0 are data, so any such cross has a rank-1 completion.
  const Matrix cross = Matrix::from_ints(f, 3, 3, {1, 1, 1, 1, 0, 0, 2, 0, 0});
  CHECK(tee_reconstruct(TeeMatrix(TeeShape(3, {0}), cross, FoolingCheck::skip), 1) ==
        Matrix::from_ints(f, 3, 3, {1, 1, 1, 1, 1, 1, 2, 2, 2}));
  const Matrix bad = Matrix::from_ints(f, 3, 3, {1, 1, 1, 1, 1, 2, 1, 1, 0});
  const TeeMatrix tb(TeeShape(3, {0, 1}), bad, FoolingCheck::skip);
  try {
    tee_reconstruct(tb, 1);
    FAIL("expected TeeError");
  } catch (const TeeError& e) {
    REQUIRE(e.cell());
    CHECK(*e.cell() == std::pair<std::size_t, std::size_t>{1, 2});
  }
}

TEST_CASE("extract then reconstruct is the identity on random low-rank matrices") {
  RngStream rng(5, 0);
  for (const char* d : {"gf2", "gf3", "gf5"}) {
    const Field f = gf(d);
    for (int t = 0; t < 100; ++t) {
      const std::size_t s = 1 + rng.below(3);
      const std::size_t n = 2 * s + rng.below(11 - 2 * s);
      const Matrix m = random_rank_s(f, n, s, rng);
      const std::size_t r = s + rng.below(n / 2 - s + 1);
      const TeeMatrix tee = tee_extract(m, r, FoolingCheck::skip);
      CHECK(tee.order() == 2 * r);
      CHECK(tee.rank() == s);
      CHECK(tee_reconstruct(tee, s) == m);
    }
  }
}

TEST_CASE("tee support") {
  CHECK(tee_support(FoolingPattern::identity(5), {1, 3}) == 2);
  CHECK(tee_support(FoolingPattern::triangular(5, true), {0, 1, 2, 3, 4}) == 10 + 5);
  const auto p = testutil::pattern_of({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(tee_support(p, {2}) == 1);
}

TEST_CASE("G-pattern construction and symbols") {
  auto sym = [](const GPattern& g) {
    std::vector<std::vector<int>> out;
    for (const auto& row : g.symbols()) {
      out.emplace_back();
      for (auto s : row) out.back().push_back(static_cast<int>(s));
    }
    return out;
  };
  const GPattern a(2, 4, {0, 1});
  CHECK(symbols_to_string(a) == "10**\n01**\n");
  CHECK(a.stars() == 4);
  CHECK(GPattern(2, 4, {}).stars() == 0);
  CHECK(symbols_to_string(GPattern(2, 4, {})) == "0000\n0000\n");
  CHECK(symbols_to_string(GPattern(1, 3, {1})) == "01*\n");
  CHECK(GPattern(2, 4, {2, 3}).stars() == 0);
  CHECK_THROWS(GPattern(2, 4, {1, 0}));
  CHECK_THROWS(GPattern(1, 4, {0, 1}));
  CHECK_THROWS(GPattern(2, 4, {4}));

  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t r = 0; r <= n; ++r)
      for (const auto& g : gpattern_enumerate(r, n)) {
        std::vector<int> ones(g.one_columns().begin(), g.one_columns().end());
        CHECK(sym(g) == oracle::gpattern_symbols(static_cast<int>(r), static_cast<int>(n), ones));
        std::size_t stars = 0;
        const std::size_t s = ones.size();
        for (std::size_t i = 0; i < s; ++i) stars += n - 1 - g.one_columns()[i] - (s - 1 - i);
        CHECK(g.stars() == stars);
        CHECK(GPattern::parse(g.to_string()) == g);
      }
}

TEST_CASE("G-pattern text form") {
  CHECK(GPattern(2, 4, {0, 2}).to_string() == "2 4 : 1,3");
  CHECK(GPattern::parse("3 5 :") == GPattern(3, 5, {}));
  CHECK_THROWS(GPattern::parse("2 4 : 3,1"));
  CHECK_THROWS(GPattern::parse("2 4 1,3"));
}

TEST_CASE("G-pattern enumeration counts") {
  CHECK(gpattern_enumerate(1, 3).size() == 4);
  CHECK(gpattern_enumerate(0, 3).size() == 1);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(gpattern_enumerate(n, n).size() == (std::size_t{1} << n));
    for (std::size_t r = 0; r <= n; ++r) {
      std::uint64_t expected = 0;
      for (std::size_t j = 0; j <= r; ++j) expected += oracle::binom(n, j);
      CHECK(gpattern_count(r, n) == expected);
      CHECK(gpattern_enumerate(r, n).size() == expected);
    }
  }
  CHECK_THROWS(gpattern_enumerate(4, 3));
  // Order: by number of 1-columns, then lexicographic.
  const auto all = gpattern_enumerate(2, 3);
  std::vector<std::string> text;
  for (const auto& g : all) text.push_back(g.to_string());
  CHECK(text == std::vector<std::string>{"2 3 :", "2 3 : 1", "2 3 : 2", "2 3 : 3", "2 3 : 1,2", "2 3 : 1,3",
                                         "2 3 : 2,3"});
}

TEST_CASE("maximum star count is max over s <= r of s(n - s) and within r(n - r/2)") {
  for (std::size_t n = 1; n <= 10; ++n)
    for (std::size_t r = 0; r <= n; ++r) {
      std::size_t best = 0;
      for (const auto& g : gpattern_enumerate(r, n)) best = std::max(best, g.stars());
      std::size_t formula = 0;
      for (std::size_t s = 0; s <= r; ++s) formula = std::max(formula, s * (n - s));
      CHECK(best == formula);
      CHECK(gpattern_max_stars(r, n) == best);
      CHECK(2 * best <= r * (2 * n - r));
      if (2 * r <= n + 1) CHECK(best == r * (n - r));
    }
  // r above n/2: the all-pivot pattern is not the maximizer.
  CHECK(gpattern_max_stars(3, 4) == 4);
}

TEST_CASE("G-pattern counts stay within the geometric-series bound") {
  for (std::size_t n = 1; n <= 20; ++n)
    for (std::size_t r = 0; 100 * r <= 49 * n; ++r) {
      const double rho = static_cast<double>(r) / static_cast<double>(n);
      const double bound = static_cast<double>(oracle::binom(n, r)) / (1.0 - rho / (1.0 - rho));
      CHECK(static_cast<double>(gpattern_count(r, n)) <= bound * (1 + 1e-12));
      CHECK(static_cast<double>(gpattern_count(r, n)) <= 30.0 * static_cast<double>(oracle::binom(n, r)));
    }
}
