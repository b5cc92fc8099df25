#include "foolrank/minrank.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <map>

using namespace foolrank;
using testutil::gf;
using testutil::pattern_of;

namespace {

constexpr std::uint64_t kBig = 1'000'000'000;

void check_witness(const MinrankResult& r) {
  REQUIRE(r.exact);
  REQUIRE(r.witness);
  CHECK(mat_sigma(*r.witness) == r.pattern.bits());
  CHECK(mat_rank(*r.witness) == *r.exact);
  for (std::size_t k = 0; k < r.pattern.size(); ++k) CHECK(r.witness->at(k, k) == r.witness->field().one());
}

std::map<std::size_t, int> histogram(std::size_t n, const Field& f, MinrankResult (*solve)(const FoolingPattern&,
                                                                                             const Field&,
                                                                                             std::uint64_t)) {
  std::map<std::size_t, int> h;
  for (const auto& p : enumerate_patterns(n)) {
    const auto r = solve(p, f, kBig);
    REQUIRE(r.exact);
    h[*r.exact]++;
  }
  return h;
}

}  // namespace

TEST_CASE("sqrt bound") {
  CHECK(sqrt_bound(0) == 0);
  CHECK(sqrt_bound(1) == 1);
  CHECK(sqrt_bound(8) == 3);
  CHECK(sqrt_bound(9) == 3);
  CHECK(sqrt_bound(10) == 4);
  CHECK(sqrt_bound(1'000'001) == 1001);
}

TEST_CASE("lower bound examples") {
  RngStream rng(1, 0);
  for (int t = 0; t < 20; ++t) CHECK(minrank_lower(sample_q(9, rng)) >= 3);
  CHECK(minrank_lower(FoolingPattern::identity(7)) == 7);
  CHECK(minrank_lower(FoolingPattern::triangular(4, true)) == 4);
  CHECK(minrank_lower(FoolingPattern::triangular(9, false)) == 3);
}

TEST_CASE("upper bound is the rank of the 0/1 realization") {
  CHECK(minrank_upper(FoolingPattern::identity(5), gf("gf2")) == 5);
  const auto p = pattern_of({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  CHECK(minrank_upper(p, gf("gf2")) == 2);
  CHECK(minrank_upper(p, gf("gf3")) == 3);
}

TEST_CASE("brute-force examples") {
  for (const char* d : {"gf2", "gf3", "gf5"}) {
    const auto r = minrank_exact_brute(FoolingPattern::identity(5), gf(d), kBig);
    CHECK(*r.exact == 5);
    check_witness(r);
  }
  const auto two = minrank_exact_brute(pattern_of({{1, 1}, {0, 1}}), gf("gf2"), kBig);
  CHECK(*two.exact == 2);
  CHECK(two.method == "brute");
  CHECK(*minrank_exact_brute(FoolingPattern::triangular(4, true), gf("gf2"), kBig).exact == 4);
  // Density 1 at n = 4: only the orientations without a directed 3-cycle have full rank.
  std::map<std::size_t, int> h;
  for (const auto& p : enumerate_patterns(4))
    if (p.off_diagonal_ones() == 6) h[*minrank_exact_brute(p, gf("gf2"), kBig).exact]++;
  CHECK(h == std::map<std::size_t, int>{{3, 40}, {4, 24}});
}

TEST_CASE("over budget brute force degrades to bounds") {
  const auto p = FoolingPattern::triangular(6, true);
  CHECK(brute_search_size(p, gf("gf3")) == (1u << 15));
  CHECK(brute_search_size(p, gf("gf2")) == 1);
  const auto r = minrank_exact_brute(p, gf("gf3"), 1000);
  CHECK_FALSE(r.exact);
  CHECK_FALSE(r.witness);
  CHECK(r.lower == 6);
  CHECK(r.upper >= r.lower);
  const auto big = FoolingPattern::triangular(40, true);
  CHECK(brute_search_size(big, gf("gf5")) == UINT64_MAX);
}

TEST_CASE("G-pattern decisions") {
  const Field f2 = gf("gf2");
  CHECK_FALSE(minrank_decide_gpattern(FoolingPattern::identity(4), f2, 3, kBig).satisfiable);
  const auto yes = minrank_decide_gpattern(FoolingPattern::identity(4), f2, 4, kBig);
  CHECK(yes.satisfiable);
  REQUIRE(yes.witness);
  CHECK(*yes.witness == Matrix::identity(f2, 4));

  const Field f3 = gf("gf3");
  CHECK_FALSE(minrank_decide_gpattern(FoolingPattern::triangular(4, true), f3, 3, kBig).satisfiable);
  int rank3 = 0;
  for (const auto& p : enumerate_patterns(4))
    if (p.off_diagonal_ones() == 6) rank3 += minrank_decide_gpattern(p, f3, 3, kBig).satisfiable;
  CHECK(rank3 == 40);

  // The rows of this 3-cycle sum to zero over GF(2).
  const auto cyc = pattern_of({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  const auto d = minrank_decide_gpattern(cyc, f2, 2, kBig);
  CHECK(d.satisfiable);
  REQUIRE(d.witness);
  CHECK(mat_sigma(*d.witness) == cyc.bits());
  CHECK(mat_rank(*d.witness) <= 2);
  CHECK_FALSE(minrank_decide_gpattern(cyc, f2, 1, kBig).satisfiable);

  CHECK_THROWS_AS(minrank_decide_gpattern(FoolingPattern::identity(12), gf("gf5"), 8, 10), BudgetExceeded);
  CHECK(gpattern_search_size(FoolingPattern::identity(6), f2, 3, true) <=
        gpattern_search_size(FoolingPattern::identity(6), f2, 3, false));
}

TEST_CASE("minimum-rank histograms over all patterns of sizes 3 and 4") {
  // Frozen from the exhaustive oracle in oracles.hpp.
  using H = std::map<std::size_t, int>;
  const Field f2 = gf("gf2"), f3 = gf("gf3");
  CHECK(histogram(3, f2, minrank_exact_brute) == H{{2, 2}, {3, 25}});
  CHECK(histogram(3, f2, minrank_exact_gpattern) == H{{2, 2}, {3, 25}});
  CHECK(histogram(3, f3, minrank_exact_brute) == H{{2, 2}, {3, 25}});
  CHECK(histogram(3, f3, minrank_exact_gpattern) == H{{2, 2}, {3, 25}});
  CHECK(histogram(4, f2, minrank_exact_brute) == H{{3, 150}, {4, 579}});
  CHECK(histogram(4, f2, minrank_exact_gpattern) == H{{3, 150}, {4, 579}});
  CHECK(histogram(4, f3, minrank_exact_brute) == H{{3, 186}, {4, 543}});
  CHECK(histogram(4, f3, minrank_exact_gpattern) == H{{3, 186}, {4, 543}});
}

TEST_CASE("both searches match the oracle pattern by pattern for n <= 3") {
  for (int q : {2, 3, 5})
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& p : enumerate_patterns(n)) {
        const Field f(FieldSpec::prime(static_cast<std::uint32_t>(q)));
        const auto r = minrank(p, f, MinrankMethod::both, kBig);
        CHECK(*r.exact == static_cast<std::size_t>(oracle::min_rank(testutil::to_oracle(p.bits()), {q})));
        check_witness(r);
      }
}

TEST_CASE("sampled patterns up to n = 6: searches agree and respect the bounds") {
  std::uint64_t stream = 0;
  for (const char* d : {"gf2", "gf3"}) {
    const Field f = gf(d);
    for (int t = 0; t < 60; ++t) {
      RngStream rng(7, stream++);
      const std::size_t n = 2 + rng.below(5);
      const auto p = sample_q(n, rng);
      const auto b = minrank_exact_brute(p, f, kBig);
      const auto g = minrank_exact_gpattern(p, f, kBig);
      REQUIRE(b.exact);
      REQUIRE(g.exact);
      CHECK(*b.exact == *g.exact);
      CHECK(sqrt_bound(n) <= *b.exact);
      CHECK(b.lower <= *b.exact);
      CHECK(*b.exact <= b.upper);
      CHECK(*b.exact <= n);
      check_witness(b);
      check_witness(g);
    }
  }
}

TEST_CASE("method parsing and bounds-only runs") {
  CHECK(parse_minrank_method("both") == MinrankMethod::both);
  CHECK(to_string(MinrankMethod::gpattern) == "gpattern");
  CHECK_THROWS_AS(parse_minrank_method("fast"), std::invalid_argument);
  const auto r = minrank(FoolingPattern::identity(3), gf("gf2"), MinrankMethod::bounds, kBig);
  CHECK_FALSE(r.exact);
  CHECK(r.lower == 3);
  CHECK(r.method == "bounds");
}

TEST_CASE("fooling certificate examples") {
  const Field f2 = gf("gf2");
  const auto c = fooling_bound_check(Matrix::identity(f2, 2), {{0, 0}, {1, 1}});
  CHECK(c.size == 2);
  CHECK(c.rank_of_a == 2);
  CHECK(c.rank_of_kronecker == 4);
  CHECK(c.holds());
  const Matrix ones = Matrix::from_ints(f2, 3, 3, std::vector<long long>(9, 1));
  const auto c1 = fooling_bound_check(ones, {{0, 0}});
  CHECK(c1.size == 1);
  CHECK(c1.rank_of_a == 1);
  CHECK(c1.holds());
  try {
    fooling_bound_check(ones, {{0, 0}, {1, 1}});
    FAIL("expected FoolingSetError");
  } catch (const FoolingSetError& e) {
    CHECK(e.i() == 0);
    CHECK(e.j() == 1);
  }
  CHECK_THROWS_AS(fooling_bound_check(Matrix::identity(f2, 2), {{0, 1}}), FoolingSetError);
  CHECK_THROWS_AS(fooling_bound_check(Matrix::identity(f2, 2), {{0, 2}}), FoolingSetError);
}

TEST_CASE("rectangular fooling certificate") {
  const Field f3 = gf("gf3");
  const Matrix a = Matrix::from_ints(f3, 2, 3, {1, 0, 2, 0, 1, 1});
  const auto c = fooling_bound_check(a, {{0, 0}, {1, 1}});
  CHECK(c.permutation_submatrix);
  CHECK(c.holds());
}

TEST_CASE("certificate holds on sampled regular fooling-set matrices") {
  RngStream rng(11, 0);
  for (const char* d : {"gf2", "gf3", "gf5"}) {
    const Field f = gf(d);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + rng.below(6);
      const Matrix a = testutil::random_regular(sample_q(n, rng), f, rng);
      std::vector<FoolingPair> diag;
      for (std::size_t k = 0; k < n; ++k) diag.emplace_back(k, k);
      const auto c = fooling_bound_check(a, diag);
      CHECK(c.holds());
      CHECK(c.rank_of_kronecker == c.rank_of_a * c.rank_of_a);
      const auto best = max_fooling_set(a);
      CHECK(best.size() >= n);
      CHECK(best.size() <= c.rank_of_a * c.rank_of_a);
      CHECK(fooling_bound_check(a, best).holds());
    }
  }
}

TEST_CASE("maximum fooling sets") {
  const Field f2 = gf("gf2");
  CHECK(max_fooling_set(Matrix::identity(f2, 5)).size() == 5);
  CHECK(max_fooling_set(Matrix::from_ints(f2, 3, 3, std::vector<long long>(9, 1))).size() == 1);
  CHECK(max_fooling_set(Matrix::from_ints(f2, 2, 2, {1, 1, 0, 1})) == std::vector<FoolingPair>{{0, 0}, {1, 1}});
  CHECK(max_fooling_set(Matrix(f2, 2, 2)).empty());
  RngStream rng(13, 0);
  for (int t = 0; t < 40; ++t) {
    const Matrix m = testutil::random_matrix(gf("gf3"), 1 + rng.below(4), 1 + rng.below(4), rng);
    CHECK(max_fooling_set(m).size() == static_cast<std::size_t>(oracle::max_fooling(testutil::to_oracle(mat_sigma(m)))));
  }
}
