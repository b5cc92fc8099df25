#include "foolrank/matrix.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace foolrank;
using testutil::gf;

TEST_CASE("rank examples") {
  const Field f = gf("gf2");
  CHECK(mat_rank(Matrix::identity(f, 3)) == 3);
  CHECK(mat_rank(Matrix::from_ints(f, 3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1})) == 1);
  CHECK(mat_rank(Matrix::from_ints(f, 3, 3, {1, 1, 0, 0, 1, 1, 1, 0, 1})) == 2);
  // Same matrix over GF(3) has full rank: det = 2.
  CHECK(mat_rank(Matrix::from_ints(gf("gf3"), 3, 3, {1, 1, 0, 0, 1, 1, 1, 0, 1})) == 3);
  CHECK(mat_rank(Matrix(f, 0, 4)) == 0);
}

TEST_CASE("rank over the rationals") {
  const Field q = gf("q");
  const Matrix m = Matrix::from_ints(q, 3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(mat_rank(m) == 2);
  Matrix h(q, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h.set(i, j, FieldElem(Rational(1, static_cast<int>(i + j + 1))));
  CHECK(mat_rank(h) == 3);
}

TEST_CASE("pivot sets are lexicographically first and give a nonsingular block") {
  const Field f = gf("gf3");
  const Matrix m = Matrix::from_ints(f, 3, 4, {0, 0, 0, 0, 0, 1, 2, 0, 0, 2, 1, 0});
  const RankInfo info = mat_rank_info(m);
  CHECK(info.rank == 1);
  CHECK(info.pivot_rows == std::vector<std::size_t>{1});
  CHECK(info.pivot_cols == std::vector<std::size_t>{1});

  RngStream rng(7, 0);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = testutil::random_matrix(f, 1 + rng.below(6), 1 + rng.below(6), rng);
    const RankInfo ri = mat_rank_info(a);
    CHECK(ri.rank == static_cast<std::size_t>(oracle::rank(testutil::to_oracle(a), {3})));
    CHECK(mat_rank(a.submatrix(ri.pivot_rows, ri.pivot_cols)) == ri.rank);
    // The first pivot column is the first nonzero column.
    if (ri.rank > 0) {
      std::size_t first = 0;
      while (first < a.cols()) {
        bool nz = false;
        for (std::size_t i = 0; i < a.rows(); ++i) nz |= !a.is_zero(i, first);
        if (nz) break;
        ++first;
      }
      CHECK(ri.pivot_cols.front() == first);
    }
  }
}

TEST_CASE("rank agrees with the row-space oracle and with the transpose") {
  RngStream rng(11, 0);
  for (const char* d : {"gf2", "gf3", "gf4", "gf5"}) {
    const Field f = gf(d);
    const int q = static_cast<int>(f.order());
    for (int t = 0; t < 100; ++t) {
      const Matrix a = testutil::random_matrix(f, 1 + rng.below(5), 1 + rng.below(5), rng);
      const std::size_t r = mat_rank(a);
      CHECK(r == static_cast<std::size_t>(oracle::rank(testutil::to_oracle(a), {q})));
      CHECK(r == mat_rank(a.transpose()));
    }
  }
}

TEST_CASE("GF(2) word-packed rank on wide matrices") {
  RngStream rng(3, 1);
  const Field f = gf("gf2");
  for (int t = 0; t < 20; ++t) {
    const std::size_t rows = 60 + rng.below(80), cols = 60 + rng.below(80);
    Matrix a = testutil::random_matrix(f, rows, cols, rng);
    // Force a rank deficit: copy row 0 into row 1 and add rows 2, 3 into row 4.
    for (std::size_t j = 0; j < cols; ++j) {
      a.set_code(1, j, a.code(0, j));
      a.set_code(4, j, a.code(2, j) ^ a.code(3, j));
    }
    CHECK(mat_rank(a) == mat_rank(a.transpose()));
    CHECK(mat_rank(a) == mat_sigma(a).rank_gf2());
  }
}

TEST_CASE("Kronecker product") {
  const Field f = gf("gf2");
  CHECK(mat_kronecker(Matrix::identity(f, 2), Matrix::identity(f, 2)) == Matrix::identity(f, 4));
  const Matrix a = Matrix::from_ints(f, 2, 2, {1, 1, 0, 1});
  CHECK(mat_rank(mat_kronecker(a, a.transpose())) == 4);
  CHECK(mat_kronecker(a, Matrix::identity(f, 1)) == a);
  const Matrix b = Matrix::from_ints(gf("gf3"), 1, 2, {1, 2});
  CHECK_THROWS_AS(mat_kronecker(a, b), DimensionError);
}

TEST_CASE("rank of Kronecker products is multiplicative, GF(2) exhaustive up to 2x2 x 3x3 samples") {
  const Field f = gf("gf2");
  // All 2x2 matrices against all 2x3 matrices.
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 64; ++y) {
      Matrix a(f, 2, 2), b(f, 2, 3);
      for (int k = 0; k < 4; ++k) a.set_code(k / 2, k % 2, (x >> k) & 1);
      for (int k = 0; k < 6; ++k) b.set_code(k / 3, k % 3, (y >> k) & 1);
      CHECK(mat_rank(mat_kronecker(a, b)) == mat_rank(a) * mat_rank(b));
    }
  RngStream rng(5, 5);
  for (int t = 0; t < 300; ++t) {
    const Matrix a = testutil::random_matrix(f, 1 + rng.below(3), 1 + rng.below(3), rng);
    const Matrix b = testutil::random_matrix(f, 1 + rng.below(3), 1 + rng.below(3), rng);
    CHECK(mat_rank(mat_kronecker(a, b)) == mat_rank(a) * mat_rank(b));
  }
}

TEST_CASE("sigma") {
  const Field f5 = gf("gf5");
  CHECK(mat_sigma(Matrix(f5, 2, 3)) == BitMatrix(2, 3));
  CHECK(mat_sigma(Matrix::identity(f5, 3)) == BitMatrix::identity(3));
  CHECK(mat_sigma(Matrix::from_ints(f5, 2, 2, {2, 0, 1, 3})) == testutil::bits_of({{1, 0}, {1, 1}}));
}

TEST_CASE("row reduction to a G-pattern") {
  const Field f3 = gf("gf3");
  SUBCASE("zero matrix") {
    const auto rr = mat_rowreduce_to_gpattern(Matrix(f3, 2, 3));
    CHECK(rr.reduced == Matrix(f3, 2, 3));
    CHECK(rr.pattern.one_columns().empty());
  }
  SUBCASE("one elimination step") {
    const auto rr = mat_rowreduce_to_gpattern(Matrix::from_ints(f3, 2, 2, {0, 2, 0, 1}));
    CHECK(rr.reduced == Matrix::from_ints(f3, 2, 2, {0, 1, 0, 0}));
    CHECK(rr.pattern == GPattern(2, 2, {1}));
  }
  SUBCASE("reduced echelon input is a fixed point") {
    const Matrix y = Matrix::from_ints(f3, 2, 4, {1, 2, 0, 1, 0, 0, 1, 2});
    const auto rr = mat_rowreduce_to_gpattern(y);
    CHECK(rr.reduced == y);
    CHECK(mat_rowreduce_to_gpattern(rr.reduced).reduced == rr.reduced);
  }
  SUBCASE("random matrices") {
    RngStream rng(13, 0);
    for (const char* d : {"gf2", "gf3", "gf5", "q"}) {
      const Field f = gf(d);
      for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng.below(4), n = 1 + rng.below(6);
        Matrix y(f, r, n);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < n; ++j) y.set(i, j, f.from_int(static_cast<std::int64_t>(rng.below(5)) - 2));
        const auto rr = mat_rowreduce_to_gpattern(y);
        CHECK(gpattern_match(rr.reduced, rr.pattern));
        CHECK(mat_multiply(rr.transform, y) == rr.reduced);
        CHECK(mat_rank(rr.transform) == r);
        CHECK(mat_rank(mat_vstack(y, rr.reduced)) == mat_rank(y));
        CHECK(rr.pattern.pivots() == mat_rank(y));
        // sigma of the reduced matrix is exact on 0- and 1-cells.
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const GSymbol s = rr.pattern.symbol(i, j);
            if (s == GSymbol::zero) CHECK(rr.reduced.is_zero(i, j));
            if (s == GSymbol::one) CHECK(rr.reduced.at(i, j) == f.one());
          }
      }
    }
  }
}

TEST_CASE("G-pattern matching") {
  const Field f = gf("gf2");
  CHECK(gpattern_match(Matrix(f, 2, 3), GPattern(2, 3, {})));
  CHECK_FALSE(gpattern_match(Matrix::from_ints(f, 2, 2, {0, 1, 1, 0}), GPattern(2, 2, {0})));
  CHECK_THROWS_AS(gpattern_match(Matrix(f, 2, 3), GPattern(2, 2, {})), DimensionError);
}

TEST_CASE("entry validation") {
  Matrix m(gf("gf3"), 1, 1);
  CHECK_THROWS_AS(m.set(0, 0, FieldElem(3u)), FieldError);
  CHECK_THROWS_AS(mat_multiply(Matrix(gf("gf3"), 2, 3), Matrix(gf("gf3"), 2, 3)), DimensionError);
}
