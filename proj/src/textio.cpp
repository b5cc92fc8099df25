#include "foolrank/textio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace foolrank {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

// Non-blank lines that do not start with '#'.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos || raw[b] == '#') continue;
    const auto e = raw.find_last_not_of(" \t\r");
    out.push_back({n, raw.substr(b, e - b + 1)});
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t parse_count(const std::string& s, std::size_t line, const char* what) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
  return static_cast<std::size_t>(std::stoul(s));
}

Field field_at(const std::string& desc, std::size_t line) {
  try {
    return Field(parse_field_descriptor(desc));
  } catch (const FieldError& e) {
    throw ParseError(e.what(), line);
  }
}

FieldElem elem_at(const Field& f, const std::string& s, std::size_t line) {
  try {
    return f.parse(s);
  } catch (const FieldError& e) {
    throw ParseError(e.what(), line);
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + m.field().descriptor() + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m.field().format(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix parse_matrix(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty matrix text", 1);
  const auto head = words(lines[0].text);
  if (head.size() != 3) throw ParseError("header must be 'rows cols field'", lines[0].number);
  const std::size_t rows = parse_count(head[0], lines[0].number, "row count");
  const std::size_t cols = parse_count(head[1], lines[0].number, "column count");
  const Field f = field_at(head[2], lines[0].number);
  if (lines.size() != rows + 1)
    throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - 1),
                     lines.back().number);
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& ln = lines[i + 1];
    const auto cells = words(ln.text);
    if (cells.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " entries, found " + std::to_string(cells.size()), ln.number);
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, elem_at(f, cells[j], ln.number));
  }
  return m;
}

std::string format_pattern(const FoolingPattern& p) {
  std::string out = std::to_string(p.size()) + "\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out += ' ';
      out += p.get(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

FoolingPattern parse_pattern(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty pattern text", 1);
  const std::size_t n = parse_count(lines[0].text, lines[0].number, "size");
  if (n == 0) throw ParseError("pattern size must be positive", lines[0].number);
  if (lines.size() != n + 1)
    throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1),
                     lines.back().number);
  BitMatrix bits(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ln = lines[i + 1];
    std::size_t j = 0;
    for (char c : ln.text) {
      if (c == ' ' || c == '\t' || c == ',') continue;
      if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "'", ln.number);
      if (j == n) throw ParseError("row longer than " + std::to_string(n), ln.number);
      if (c == '1') bits.set(i, j, true);
      ++j;
    }
    if (j != n) throw ParseError("row has " + std::to_string(j) + " entries, expected " + std::to_string(n), ln.number);
  }
  return FoolingPattern(bits);
}

std::string format_tee(const TeeMatrix& t) {
  const auto& shape = t.shape();
  std::string out = std::to_string(shape.n()) + " " + t.field().descriptor() + " :";
  for (std::size_t a = 0; a < shape.indices().size(); ++a)
    out += (a ? "," : " ") + std::to_string(shape.indices()[a] + 1);
  out += '\n';
  for (std::size_t i = 0; i < shape.n(); ++i)
    for (std::size_t j = 0; j < shape.n(); ++j)
      if (shape.contains(i, j))
        out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + t.field().format(t.at(i, j)) + "\n";
  return out;
}

TeeMatrix parse_tee(std::string_view text, FoolingCheck check) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty tee text", 1);
  const auto& head = lines[0];
  const auto colon = head.text.find(':');
  if (colon == std::string::npos) throw ParseError("header must be 'n field : i1,i2,...'", head.number);
  const auto left = words(head.text.substr(0, colon));
  if (left.size() != 2) throw ParseError("header must be 'n field : i1,i2,...'", head.number);
  const std::size_t n = parse_count(left[0], head.number, "size");
  const Field f = field_at(left[1], head.number);
  std::vector<std::size_t> index_set;
  std::istringstream list(head.text.substr(colon + 1));
  for (std::string item; std::getline(list, item, ',');) {
    const auto w = words(item);
    if (w.size() != 1) throw ParseError("bad index list", head.number);
    const std::size_t k = parse_count(w[0], head.number, "index");
    if (k == 0 || k > n) throw ParseError("index " + w[0] + " outside 1.." + std::to_string(n), head.number);
    index_set.push_back(k - 1);
  }
  TeeShape shape = [&] {
    try {
      return TeeShape(n, index_set);
    } catch (const TeeError& e) {
      throw ParseError(e.what(), head.number);
    }
  }();
  Matrix values(f, n, n);
  std::vector<bool> seen(n * n, false);
  for (std::size_t a = 1; a < lines.size(); ++a) {
    const auto& ln = lines[a];
    const auto w = words(ln.text);
    if (w.size() != 3) throw ParseError("expected 'row col value'", ln.number);
    const std::size_t i = parse_count(w[0], ln.number, "row");
    const std::size_t j = parse_count(w[1], ln.number, "column");
    if (i == 0 || j == 0 || i > n || j > n) throw ParseError("cell outside the matrix", ln.number);
    if (!shape.contains(i - 1, j - 1)) throw ParseError("cell is not in the tee shape", ln.number);
    if (seen[(i - 1) * n + (j - 1)]) throw ParseError("cell given twice", ln.number);
    seen[(i - 1) * n + (j - 1)] = true;
    values.set(i - 1, j - 1, elem_at(f, w[2], ln.number));
  }
  return TeeMatrix(std::move(shape), values, check);
}

std::string minrank_csv_header() { return "n,field,method,lower,upper,exact,elapsed_ms"; }

std::string minrank_csv_row(const MinrankResult& r) {
  return std::to_string(r.pattern.size()) + "," + field_descriptor(r.field) + "," + r.method + "," +
         std::to_string(r.lower) + "," + std::to_string(r.upper) + "," +
         (r.exact ? std::to_string(*r.exact) : std::string()) + "," + fmt_double(r.elapsed_ms);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace foolrank
