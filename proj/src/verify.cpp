#include "foolrank/verify.hpp"

#include "foolrank/bounds.hpp"
#include "foolrank/gpattern.hpp"
#include "foolrank/matrix.hpp"
#include "foolrank/minrank.hpp"
#include "foolrank/patterns.hpp"
#include "foolrank/rng.hpp"
#include "foolrank/tee.hpp"
#include "foolrank/zeropatterns.hpp"

#include <cmath>
#include <set>

namespace foolrank {

VerifyLevel parse_verify_level(std::string_view text) {
  if (text == "fast") return VerifyLevel::fast;
  if (text == "full") return VerifyLevel::full;
  throw std::invalid_argument("unknown verify level '" + std::string(text) + "' (expected fast or full)");
}

std::string VerifyReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    bool ok = true;
    for (const auto& f : failures)
      if (f.invariant == c) ok = false;
    out += (ok ? "PASS " : "FAIL ") + c + "\n";
  }
  for (const auto& f : failures) out += "  " + f.invariant + ": " + f.detail + "\n";
  return out;
}

namespace {

class Suite {
 public:
  Suite(VerifyLevel level, const VerifyOptions& opt) : level_(level), opt_(opt) {}

  VerifyReport run() {
    check("field_axioms", [&] { field_axioms(); });
    check("rank_row_space", [&] { rank_row_space(); });
    check("kronecker_rank", [&] { kronecker_rank(); });
    check("sampler_density", [&] { sampler_density(); });
    check("gpattern_count", [&] { gpattern_count(); });
    check("minrank_oracle_equivalence", [&] { minrank_equivalence(); });
    check("fooling_certificate", [&] { fooling_certificate(); });
    check("tee_reconstruction", [&] { tee_reconstruction(); });
    check("rbg_bound", [&] { rbg(); });
    check("entropy_binomial", [&] { entropy_binomial(); });
    return std::move(report_);
  }

 private:
  template <class F>
  void check(const std::string& name, F body) {
    report_.checks.push_back(name);
    current_ = name;
    try {
      body();
    } catch (const std::exception& e) {
      fail("exception: " + std::string(e.what()));
    }
  }

  void fail(const std::string& detail) {
    // One failure per invariant keeps the report short.
    for (const auto& f : report_.failures)
      if (f.invariant == current_) return;
    report_.failures.push_back({current_, detail});
  }

  Field field(const char* desc) { return opt_.make_field(parse_field_descriptor(desc)); }
  std::vector<Field> small_fields() { return {field("gf2"), field("gf3"), field("gf4"), field("gf5")}; }
  bool full() const { return level_ == VerifyLevel::full; }

  void field_axioms() {
    for (const Field& f : small_fields()) {
      const FiniteOps& o = f.finite();
      const std::uint32_t q = o.order();
      for (std::uint32_t a = 0; a < q; ++a) {
        if (a != 0 && o.mul(a, o.inv(a)) != 1) return fail(f.descriptor() + ": a * a^-1 != 1 for a = " + std::to_string(a));
        for (std::uint32_t b = 0; b < q; ++b) {
          if (o.mul(a, b) != o.mul(b, a)) return fail(f.descriptor() + ": mul not commutative at " + std::to_string(a) + "," + std::to_string(b));
          for (std::uint32_t c = 0; c < q; ++c) {
            if (o.mul(o.mul(a, b), c) != o.mul(a, o.mul(b, c)))
              return fail(f.descriptor() + ": mul not associative at " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
            if (o.mul(a, o.add(b, c)) != o.add(o.mul(a, b), o.mul(a, c)))
              return fail(f.descriptor() + ": not distributive at " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
          }
        }
      }
    }
  }

  Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, RngStream& rng) {
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.set_code(i, j, static_cast<std::uint32_t>(rng.below(f.finite().order())));
    return m;
  }

  // Rank as log_q of the size of the row space, by enumerating all combinations.
  std::size_t rank_by_row_space(const Matrix& m) {
    const FiniteOps& o = m.field().finite();
    const std::uint32_t q = o.order();
    std::set<std::vector<std::uint32_t>> space;
    std::vector<std::uint32_t> coeff(m.rows(), 0);
    while (true) {
      std::vector<std::uint32_t> v(m.cols(), 0);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v[j] = o.add(v[j], o.mul(coeff[i], m.code(i, j)));
      space.insert(v);
      std::size_t t = 0;
      while (t < coeff.size() && coeff[t] == q - 1) coeff[t++] = 0;
      if (t == coeff.size()) break;
      ++coeff[t];
    }
    std::size_t r = 0;
    for (std::size_t s = space.size(); s > 1; s /= q) ++r;
    return r;
  }

  void rank_row_space() {
    RngStream rng(opt_.seed, 1);
    for (const Field& f : small_fields()) {
      const int reps = full() ? 60 : 15;
      for (int rep = 0; rep < reps; ++rep) {
        const std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(5);
        const Matrix m = random_matrix(f, rows, cols, rng);
        const std::size_t a = mat_rank(m), b = rank_by_row_space(m), c = mat_rank(m.transpose());
        if (a != b || a != c)
          return fail(f.descriptor() + ": rank " + std::to_string(a) + ", row space " + std::to_string(b) +
                      ", transpose " + std::to_string(c) + " for a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
      }
    }
  }

  void kronecker_rank() {
    RngStream rng(opt_.seed, 2);
    for (const Field& f : small_fields())
      for (int rep = 0; rep < (full() ? 40 : 10); ++rep) {
        const Matrix a = random_matrix(f, 1 + rng.below(4), 1 + rng.below(4), rng);
        const Matrix b = random_matrix(f, 1 + rng.below(4), 1 + rng.below(4), rng);
        if (mat_rank(mat_kronecker(a, b)) != mat_rank(a) * mat_rank(b))
          return fail(f.descriptor() + ": rank(A (x) B) != rank(A) rank(B), trial " + std::to_string(rep));
      }
  }

  void sampler_density() {
    const std::size_t ns[] = {2, 3, 5, 8, 13};
    const double ps[] = {0.1, 0.3, 0.5, 0.7, 1.0};
    std::uint64_t stream = 0;
    for (auto n : ns)
      for (double p : ps)
        for (int rep = 0; rep < (full() ? 50 : 10); ++rep) {
          RngStream rng(opt_.seed, stream++);
          const auto pat = sample_r(n, p, rng);
          if (pat.off_diagonal_ones() != pattern_density_count(n, p))
            return fail("sample_r(n=" + std::to_string(n) + ", p=" + std::to_string(p) + ") stream " +
                        std::to_string(stream - 1) + " has " + std::to_string(pat.off_diagonal_ones()) + " ones");
        }
  }

  void gpattern_count() {
    for (std::size_t n = 1; n <= (full() ? 10u : 7u); ++n)
      for (std::size_t r = 1; r <= n; ++r) {
        std::uint64_t expected = 0, c = 1;
        for (std::size_t j = 0; j <= r; ++j) {
          expected += c;
          c = c * (n - j) / (j + 1);
        }
        const auto all = gpattern_enumerate(r, n);
        std::size_t max_stars = 0;
        for (const auto& g : all) max_stars = std::max(max_stars, g.stars());
        if (all.size() != expected || foolrank::gpattern_count(r, n) != expected)
          return fail("count for r=" + std::to_string(r) + ", n=" + std::to_string(n));
        if (max_stars != gpattern_max_stars(r, n) || 2 * max_stars > r * (2 * n - r))
          return fail("star maximum for r=" + std::to_string(r) + ", n=" + std::to_string(n));
      }
  }

  void minrank_pair(const FoolingPattern& p, const Field& f, const std::string& label) {
    const auto a = minrank_exact_brute(p, f, std::uint64_t{1} << 40);
    const auto b = minrank_exact_gpattern(p, f, std::uint64_t{1} << 40);
    const std::size_t n = p.size();
    if (!a.exact || !b.exact || *a.exact != *b.exact)
      return fail(label + ": brute " + (a.exact ? std::to_string(*a.exact) : "-") + " vs gpattern " +
                  (b.exact ? std::to_string(*b.exact) : "-"));
    if (*a.exact < sqrt_bound(n) || *a.exact < a.lower || *a.exact > n || *a.exact > a.upper)
      return fail(label + ": minimum rank " + std::to_string(*a.exact) + " outside its bounds");
    for (const auto* w : {&a.witness, &b.witness})
      if (!*w || !(mat_sigma(**w) == p.bits()) || mat_rank(**w) != *a.exact)
        return fail(label + ": witness does not realize the pattern at the minimum rank");
  }

  void minrank_equivalence() {
    const std::size_t max_n = full() ? 4 : 3;
    for (std::size_t n = 1; n <= max_n; ++n)
      for (const auto& p : enumerate_patterns(n)) {
        minrank_pair(p, field("gf2"), "n=" + std::to_string(n) + " gf2 pattern\n" + p.bits().to_string());
        if (n <= 3) minrank_pair(p, field("gf3"), "n=" + std::to_string(n) + " gf3 pattern\n" + p.bits().to_string());
      }
    if (full()) {
      for (std::uint64_t t = 0; t < 200; ++t) {
        RngStream rng(opt_.seed, 1000 + t);
        const std::size_t n = 2 + rng.below(5);
        const double p = 0.2 + 0.6 * rng.unit();
        const Field f = t % 2 ? field("gf3") : field("gf2");
        minrank_pair(sample_r(n, p, rng), f, "sampled trial " + std::to_string(t));
      }
    }
  }

  Matrix random_regular(const FoolingPattern& p, const Field& f, RngStream& rng) {
    const std::uint32_t q = f.finite().order();
    Matrix m(f, p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (i == j)
          m.set_code(i, j, 1);
        else if (p.get(i, j))
          m.set_code(i, j, 1 + static_cast<std::uint32_t>(rng.below(q - 1)));
    return m;
  }

  void fooling_certificate() {
    std::uint64_t stream = 0;
    for (const Field& f : {field("gf2"), field("gf3"), field("gf5")})
      for (int rep = 0; rep < (full() ? 100 : 20); ++rep) {
        RngStream rng(opt_.seed + 3, stream++);
        const std::size_t n = 2 + rng.below(5);
        const auto p = sample_q(n, rng);
        const Matrix a = random_regular(p, f, rng);
        std::vector<FoolingPair> diag;
        for (std::size_t i = 0; i < n; ++i) diag.emplace_back(i, i);
        const auto cert = fooling_bound_check(a, diag);
        const auto best = max_fooling_set(a);
        if (!cert.holds() || best.size() > cert.rank_of_a * cert.rank_of_a || best.size() < n)
          return fail(f.descriptor() + ": certificate fails for stream " + std::to_string(stream - 1));
      }
  }

  void tee_reconstruction() {
    std::uint64_t stream = 0;
    for (const Field& f : {field("gf2"), field("gf3"), field("gf5")})
      for (int rep = 0; rep < (full() ? 100 : 20); ++rep) {
        RngStream rng(opt_.seed + 4, stream++);
        const std::size_t s = 1 + rng.below(3);
        const std::size_t n = 2 * s + rng.below(11 - 2 * s);
        Matrix m(f, n, n);
        do {
          m = mat_multiply(random_matrix(f, n, s, rng), random_matrix(f, s, n, rng));
        } while (mat_rank(m) == 0);
        const std::size_t rank = mat_rank(m);
        const TeeMatrix t = tee_extract(m, rank, FoolingCheck::skip);
        if (!(tee_reconstruct(t, rank) == m))
          return fail(f.descriptor() + ": reconstruction differs, stream " + std::to_string(stream - 1));
      }
  }

  void rbg() {
    std::uint64_t stream = 0;
    for (const Field& f : {field("gf2"), field("gf3")})
      for (int rep = 0; rep < (full() ? 25 : 6); ++rep) {
        RngStream rng(opt_.seed + 5, stream++);
        const std::size_t nv = 1 + rng.below(3);
        const std::size_t h = nv + rng.below(7 - nv);
        const std::size_t d = 1 + rng.below(3);
        std::vector<Polynomial> polys(h);
        for (auto& poly : polys)
          for (std::size_t t = 1 + rng.below(3); t-- > 0;) {
            Monomial mono{static_cast<std::uint32_t>(1 + rng.below(f.finite().order() - 1)), std::vector<std::uint32_t>(nv, 0)};
            for (std::size_t e = rng.below(d + 1); e-- > 0;) ++mono.exponents[rng.below(nv)];
            poly.terms.push_back(mono);
          }
        const PolyTuple tuple(f, nv, polys);
        for (std::size_t m = 0; m <= h; ++m) {
          const auto rep_m = rbg_check(tuple, m);
          if (!rep_m.passed())
            return fail(f.descriptor() + ": pattern count above bound, stream " + std::to_string(stream - 1) + ", m=" + std::to_string(m));
          if (!rbg_certificate(tuple, m).holds())
            return fail(f.descriptor() + ": certificate rank differs, stream " + std::to_string(stream - 1) + ", m=" + std::to_string(m));
        }
      }
  }

  void entropy_binomial() {
    for (std::uint64_t a = 1; a <= 64; ++a) {
      double c = 1.0;  // C(a, k), exact in a double for a <= 64 up to rounding far below the slack
      std::vector<double> row(a + 1);
      for (std::uint64_t k = 0; k <= a; ++k) {
        row[k] = c;
        c = c * static_cast<double>(a - k) / static_cast<double>(k + 1);
      }
      for (int i = 0; i <= 32; ++i) {
        const double t = i / 64.0;
        const auto k = static_cast<std::uint64_t>(std::floor(t * static_cast<double>(a)));
        if (binom_entropy_bound(a, t) < row[k] * (1 - 1e-12))
          return fail("a=" + std::to_string(a) + ", t=" + std::to_string(i) + "/64");
      }
    }
  }

  VerifyLevel level_;
  const VerifyOptions& opt_;
  VerifyReport report_;
  std::string current_;
};

}  // namespace

VerifyReport verify_suite(VerifyLevel level, const VerifyOptions& options) { return Suite(level, options).run(); }

}  // namespace foolrank
