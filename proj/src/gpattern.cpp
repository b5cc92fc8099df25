#include "foolrank/gpattern.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace foolrank {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t parse_size(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer '" + std::string(s) + "' in G-pattern");
  return v;
}

}  // namespace

GPattern::GPattern(std::size_t r, std::size_t n, std::vector<std::size_t> one_columns)
    : r_(r), n_(n), one_columns_(std::move(one_columns)), col_to_row_(n, npos) {
  if (one_columns_.size() > r_) throw std::invalid_argument("G-pattern has more 1-columns than rows");
  for (std::size_t i = 0; i < one_columns_.size(); ++i) {
    if (one_columns_[i] >= n_) throw std::invalid_argument("G-pattern 1-column out of range");
    if (i > 0 && one_columns_[i] <= one_columns_[i - 1])
      throw std::invalid_argument("G-pattern 1-columns must be strictly increasing");
    col_to_row_[one_columns_[i]] = i;
  }
}

GSymbol GPattern::symbol(std::size_t i, std::size_t j) const {
  if (i >= one_columns_.size()) return GSymbol::zero;
  const std::size_t c = one_columns_[i];
  if (j < c) return GSymbol::zero;
  if (j == c) return GSymbol::one;
  return col_to_row_[j] == npos ? GSymbol::star : GSymbol::zero;
}

std::vector<std::vector<GSymbol>> GPattern::symbols() const {
  std::vector<std::vector<GSymbol>> out(r_, std::vector<GSymbol>(n_));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = symbol(i, j);
  return out;
}

std::size_t GPattern::stars() const {
  const std::size_t s = one_columns_.size();
  std::size_t total = 0;
  for (std::size_t i = 0; i < s; ++i) total += n_ - 1 - one_columns_[i] - (s - 1 - i);
  return total;
}

std::string GPattern::to_string() const {
  std::string out = std::to_string(r_) + " " + std::to_string(n_) + " :";
  for (std::size_t i = 0; i < one_columns_.size(); ++i) {
    out += i == 0 ? " " : ",";
    out += std::to_string(one_columns_[i] + 1);
  }
  return out;
}

GPattern GPattern::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("G-pattern text needs 'r n : cols'");
  std::istringstream head{std::string(text.substr(0, colon))};
  std::size_t r = 0, n = 0;
  std::string extra;
  if (!(head >> r >> n) || (head >> extra)) throw std::invalid_argument("G-pattern header must be 'r n'");
  std::vector<std::size_t> cols;
  std::string_view tail = text.substr(colon + 1);
  while (!tail.empty() && (tail.front() == ' ' || tail.front() == '\t')) tail.remove_prefix(1);
  while (!tail.empty() && (tail.back() == ' ' || tail.back() == '\n' || tail.back() == '\r')) tail.remove_suffix(1);
  while (!tail.empty()) {
    const auto comma = tail.find(',');
    const std::size_t c = parse_size(tail.substr(0, comma));
    if (c == 0) throw std::invalid_argument("G-pattern columns are 1-based");
    cols.push_back(c - 1);
    if (comma == std::string_view::npos) break;
    tail.remove_prefix(comma + 1);
  }
  return GPattern(r, n, std::move(cols));
}

void for_each_gpattern(std::size_t r, std::size_t n, const std::function<bool(const GPattern&)>& visit) {
  const std::size_t top = std::min(r, n);
  for (std::size_t s = 0; s <= top; ++s) {
    std::vector<std::size_t> cols(s);
    for (std::size_t i = 0; i < s; ++i) cols[i] = i;
    while (true) {
      if (!visit(GPattern(r, n, cols))) return;
      // Next s-subset of {0..n-1} in lexicographic order.
      std::size_t i = s;
      while (i > 0 && cols[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++cols[i - 1];
      for (std::size_t j = i; j < s; ++j) cols[j] = cols[j - 1] + 1;
    }
  }
}

std::vector<GPattern> gpattern_enumerate(std::size_t r, std::size_t n) {
  if (r > n) throw std::invalid_argument("G-pattern enumeration requires r <= n");
  std::vector<GPattern> out;
  for_each_gpattern(r, n, [&](const GPattern& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::uint64_t gpattern_count(std::size_t r, std::size_t n) {
  std::uint64_t total = 0, binom = 1;  // C(n, j)
  for (std::size_t j = 0; j <= std::min(r, n); ++j) {
    total += binom;
    binom = binom * (n - j) / (j + 1);
  }
  return total;
}

std::size_t gpattern_max_stars(std::size_t r, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t s = 0; s <= std::min(r, n); ++s) best = std::max(best, s * (n - s));
  return best;
}

std::string symbols_to_string(const GPattern& g) {
  std::string out;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      switch (g.symbol(i, j)) {
        case GSymbol::zero: out += '0'; break;
        case GSymbol::one: out += '1'; break;
        case GSymbol::star: out += '*'; break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace foolrank
