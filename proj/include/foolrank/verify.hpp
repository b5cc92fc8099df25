#pragma once

// Cross-module invariant suite behind `foolrank verify`.

#include "foolrank/ffield.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace foolrank {

enum class VerifyLevel { fast, full };
VerifyLevel parse_verify_level(std::string_view text);

struct VerifyFailure {
  std::string invariant;
  std::string detail;  // inputs needed to replay
};

struct VerifyReport {
  std::vector<std::string> checks;  // names of the invariants exercised
  std::vector<VerifyFailure> failures;
  bool passed() const { return failures.empty(); }
  std::string to_string() const;
};

struct VerifyOptions {
  // Builds every field the suite uses; tests swap in corrupted tables.
  std::function<Field(const FieldSpec&)> make_field = [](const FieldSpec& s) { return Field(s); };
  std::uint64_t seed = 20240601;
};

VerifyReport verify_suite(VerifyLevel level, const VerifyOptions& options = {});

}  // namespace foolrank
