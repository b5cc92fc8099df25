#pragma once

// Closed-form quantities used as predictions and thresholds by experiments.
// Asymptotic bounds are evaluated with implied constant 1.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace foolrank {

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  // Second entry of a two-valued bound (frieze: k_plus).
  double value2 = 0.0;
  bool has_value2 = false;
  std::string validity_note;
  std::string to_string() const;
};

// -t ln t - (1-t) ln(1-t), with H(0) = H(1) = 0.
double entropy(double t);

// exp(H(t) a); at least C(a, floor(t a)) for t <= 1/2.
double binom_entropy_bound(std::uint64_t a, double t);

// (ln(1/p) / (ln(1/p) + ln F)) n. Requires 0 < p < 1, F >= 2.
BoundReport thm1b_bound(std::uint64_t n, double p, std::uint64_t field_order);
double thm1b_value(std::uint64_t n, double p, std::uint64_t field_order);

struct FriezeWindow {
  long long k_minus = 0;
  long long k_plus = 0;
  std::string validity_note;
};

// floor((2/q)(ln(nq) - ln ln(nq) + 1 - ln 2 -+ eps)). Requires nq > e, eps > 0.
FriezeWindow frieze_window(std::uint64_t n, double q, double eps);
// The window centre (2/q)(ln(nq) - ln ln(nq) + 1 - ln 2).
double frieze_midpoint(std::uint64_t n, double q);

// (ln d / d) n. Requires d > 1.
double lemma3_bound(std::uint64_t n, double d);

// 15 p r (n - r). Requires r < n.
double tee_density_threshold(std::uint64_t n, std::uint64_t r, double p);

struct HyperTail {
  bool applicable = false;
  double bound = 1.0;  // e^-x when applicable
};
HyperTail hyper_tail_applicable(double lambda, double x);

// Evaluates a bound by name (entropy, binom, thm1b, frieze, lemma3,
// tee-threshold, hyper-tail) from labeled arguments. Throws
// std::invalid_argument on unknown names, missing or extra arguments.
BoundReport evaluate_bound(const std::string& name, const std::map<std::string, double>& args);

// Parses "k=v,k=v".
std::map<std::string, double> parse_bound_args(const std::string& text);

}  // namespace foolrank
