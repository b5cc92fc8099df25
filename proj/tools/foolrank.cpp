// foolrank: samplers, minimum-rank solvers, zero-pattern counts, bounds and
// batch experiments from the command line.
//
// Exit codes: 0 success, 1 invariant failure, 2 bad input or configuration.

#include "foolrank/bounds.hpp"
#include "foolrank/experiment.hpp"
#include "foolrank/minrank.hpp"
#include "foolrank/patterns.hpp"
#include "foolrank/textio.hpp"
#include "foolrank/verify.hpp"
#include "foolrank/zeropatterns.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace foolrank;

namespace {

constexpr int kInvariantFailure = 1;
constexpr int kConfigError = 2;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

// Patterns for streams stream, stream+1, ...; into DIR/pattern_<stream>.txt
// when out_dir is set, otherwise concatenated on stdout.
int cmd_sample(const std::string& model, std::size_t n, double p, std::uint64_t seed, std::uint64_t stream,
               std::uint64_t count, const std::string& out_dir) {
  const SampleModel m = parse_sample_model(model);
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (std::uint64_t k = stream; k < stream + count; ++k) {
    RngStream rng(seed, k);
    const std::string text = format_pattern(sample_trial_pattern(m, n, p, rng));
    if (out_dir.empty())
      std::cout << "# seed " << seed << " stream " << k << "\n" << text;
    else
      write_file((std::filesystem::path(out_dir) / ("pattern_" + std::to_string(k) + ".txt")).string(), text);
  }
  return 0;
}

int cmd_minrank(const std::string& in, const std::string& field, const std::string& method, std::uint64_t budget) {
  const FoolingPattern p = parse_pattern(read_file(in));
  const Field f(parse_field_descriptor(field));
  const MinrankMethod m = parse_minrank_method(method);
  std::optional<MinrankResult> found;
  try {
    found = minrank(p, f, m, budget);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::logic_error& e) {
    // The two exact searches disagreed.
    throw InvariantFailure(e.what());
  }
  const MinrankResult& r = *found;
  std::cout << minrank_csv_header() << "\n" << minrank_csv_row(r) << "\n";
  if (r.exact && (*r.exact < r.lower || *r.exact > r.upper)) {
    std::cerr << "invariant failure: exact minimum rank outside [lower, upper]\n";
    return kInvariantFailure;
  }
  return 0;
}

int cmd_rbg(const std::string& polys, const std::string& field, std::size_t m, bool certificate, std::uint64_t budget) {
  const Field f(parse_field_descriptor(field));
  const PolyTuple tuple = parse_polys(f, read_file(polys));
  const RbgReport r = rbg_check(tuple, m, budget);
  std::cout << "n_vars=" << r.n_vars << " h=" << r.h << " d=" << r.d << " m=" << r.m << " patterns=" << r.pattern_count
            << " bound=" << r.bound << " hypothesis=" << (r.hypothesis ? "h>=n" : "h<n (bound not claimed)")
            << " within_bound=" << (r.within_bound() ? "yes" : "no") << "\n";
  int status = r.hypothesis && !r.within_bound() ? kInvariantFailure : 0;
  if (certificate) {
    const RbgCertificate c = rbg_certificate(tuple, m, budget);
    std::cout << "certificate size=" << c.patterns.size() << " rank=" << c.rank
              << " upper_triangular=" << (c.upper_triangular ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < c.patterns.size(); ++i) {
      std::cout << "  " << to_string(c.patterns[i]) << " u=(";
      for (std::size_t v = 0; v < c.witnesses[i].size(); ++v) std::cout << (v ? "," : "") << c.witnesses[i][v];
      std::cout << ")\n";
    }
    if (!c.holds()) status = kInvariantFailure;
  }
  return status;
}

int cmd_bound(const std::string& name, const std::string& args) {
  std::cout << evaluate_bound(name, parse_bound_args(args)).to_string() << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out, unsigned threads) {
  ExperimentConfig c = parse_experiment_config(read_file(config_path));
  if (!out.empty()) c.out_path = out;
  if (threads > 0) c.threads = threads;
  const auto records = run_experiment(c);
  emit(c.out_path, records_to_csv(records));
  return 0;
}

int cmd_verify(const std::string& level) {
  const VerifyReport r = verify_suite(parse_verify_level(level));
  std::cout << r.to_string();
  return r.passed() ? 0 : kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum ranks of fooling-set patterns over finite fields"};
  app.require_subcommand(1);

  std::string model = "r", out;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 1, stream = 0, count = 1;
  auto* sample = app.add_subcommand("sample", "Draw a pattern from Q(n), R(n,p) or G(n,q)");
  sample->add_option("--model", model, "q, r or gnq")->check(CLI::IsMember({"q", "r", "gnq"}));
  sample->add_option("--n", n, "Pattern size")->required();
  sample->add_option("--p", p, "Density (r) or edge probability (gnq)");
  sample->add_option("--seed", seed);
  sample->add_option("--stream", stream, "First stream index within the seed");
  sample->add_option("--count", count, "Number of patterns");
  sample->add_option("--out", out, "Output directory (default stdout)");

  std::string in, field = "gf2", method = "both";
  std::uint64_t budget = 1'000'000;
  auto* mr = app.add_subcommand("minrank", "Bounds and exact minimum rank of a pattern");
  mr->add_option("--in", in, "Pattern file")->required();
  mr->add_option("--field", field, "Field descriptor, e.g. gf2, gf9, gf(2^2;1,1,1)");
  mr->add_option("--method", method, "brute, gpattern, both or bounds")
      ->check(CLI::IsMember({"brute", "gpattern", "both", "bounds"}));
  mr->add_option("--budget", budget, "Largest search space to enumerate");

  std::string polys;
  std::size_t m = 0;
  bool certificate = false;
  std::uint64_t points = kDefaultPointBudget;
  auto* rbg = app.add_subcommand("rbg", "Count zero-nonzero patterns of a polynomial tuple");
  rbg->add_option("--polys", polys, "Polynomial file")->required();
  rbg->add_option("--field", field);
  rbg->add_option("--m", m, "Hamming weight bound")->required();
  rbg->add_flag("--certificate", certificate, "Also build the triangular certificate");
  rbg->add_option("--budget", points, "Largest number of points to evaluate");

  std::string name, args;
  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound");
  bound->add_option("--name", name, "entropy, binom, thm1b, frieze, lemma3, tee-threshold or hyper-tail")->required();
  bound->add_option("--args", args, "k=v,k=v");

  std::string config;
  unsigned threads = 0;
  auto* exp = app.add_subcommand("experiment", "Run a batch experiment and write CSV");
  exp->add_option("--config", config, "key=value config file")->required();
  exp->add_option("--out", out, "Overrides out_path");
  exp->add_option("--threads", threads, "Overrides threads");

  std::string level = "fast";
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sample) return cmd_sample(model, n, p, seed, stream, count, out);
    if (*mr) return cmd_minrank(in, field, method, budget);
    if (*rbg) return cmd_rbg(polys, field, m, certificate, points);
    if (*bound) return cmd_bound(name, args);
    if (*exp) return cmd_experiment(config, out, threads);
    if (*verify) return cmd_verify(level);
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const CertificateError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
