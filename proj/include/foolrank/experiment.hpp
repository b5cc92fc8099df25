#pragma once

// Batch experiments: sample patterns over a grid of (n, p, field), compute
// bounds and exact minimum ranks, and emit one CSV record per trial.

#include "foolrank/ffield.hpp"
#include "foolrank/minrank.hpp"
#include "foolrank/patterns.hpp"
#include "foolrank/rng.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace foolrank {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two exact searches returned different minimum ranks.
class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SampleModel { q, r, gnq };
std::string to_string(SampleModel m);
SampleModel parse_sample_model(std::string_view text);

// Density recorded for Q(n), where each pair is 1-above, 1-below or empty
// with probability 1/3.
inline constexpr double kQModelDensity = 2.0 / 3.0;

struct ExperimentConfig {
  SampleModel model = SampleModel::r;
  std::vector<std::size_t> n_list;
  std::vector<double> p_list;  // ignored by model q (one implicit entry)
  std::vector<std::string> field_list{"gf2"};
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::vector<MinrankMethod> methods{MinrankMethod::bounds};
  std::uint64_t budget = 1'000'000;
  std::string out_path;  // empty: standard output
  unsigned threads = 1;

  // Throws ConfigError.
  void validate() const;
  std::vector<double> effective_p_list() const;
};

// Flat "key = value" lines, lists comma-separated, '#' comments. Unknown
// keys, duplicates and malformed values throw ConfigError.
ExperimentConfig parse_experiment_config(std::string_view text);

struct ExperimentRecord {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;  // global trial index, also the RNG stream
  std::string model;
  std::size_t n = 0;
  double p = 0.0;
  std::string field;
  std::size_t density_count = 0;
  std::size_t sqrt_bound = 0;
  std::size_t tri_bound = 0;
  std::optional<std::size_t> exact_minrank;
  std::optional<double> thm1b_pred;
  std::optional<double> lemma3_pred;
  std::optional<double> tee_threshold;
  double elapsed_ms = 0.0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

std::string experiment_csv_header();
std::string to_csv(const ExperimentRecord& r);
// Throws std::invalid_argument on malformed rows.
ExperimentRecord parse_csv_record(std::string_view line);
std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> records_from_csv(std::string_view text);

// The pattern a trial works on. For gnq the graph becomes the lower triangle
// of the pattern.
FoolingPattern sample_trial_pattern(SampleModel model, std::size_t n, double p, RngStream& rng);

// Records ordered by (n, p, field, trial). Throws InvariantFailure if two
// exact searches disagree.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

}  // namespace foolrank
