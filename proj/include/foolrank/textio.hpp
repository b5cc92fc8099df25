#pragma once

// Plain-text forms of matrices, patterns, tee matrices and solver results.
// Indices in text are 1-based.
//
//   matrix:   "rows cols field" then one line of element codes per row
//   pattern:  "n" then n lines of n digits 0/1 (whitespace between digits optional)
//   tee:      "n field : i1,i2,..." then "row col value" for every cell of the shape

#include "foolrank/matrix.hpp"
#include "foolrank/minrank.hpp"
#include "foolrank/patterns.hpp"
#include "foolrank/tee.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace foolrank {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_matrix(const Matrix& m);
Matrix parse_matrix(std::string_view text);

std::string format_pattern(const FoolingPattern& p);
// Throws ParseError on malformed text and PatternError on invalid patterns.
FoolingPattern parse_pattern(std::string_view text);

std::string format_tee(const TeeMatrix& t);
TeeMatrix parse_tee(std::string_view text, FoolingCheck check = FoolingCheck::enforce);

std::string minrank_csv_header();
std::string minrank_csv_row(const MinrankResult& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace foolrank
