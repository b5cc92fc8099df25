#include "foolrank/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace foolrank {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string BoundReport::to_string() const {
  std::string s = name;
  for (const auto& [k, v] : inputs) s += " " + k + "=" + fmt(v);
  if (has_value2)
    s += " value=(" + fmt(value) + "," + fmt(value2) + ")";
  else
    s += " value=" + fmt(value);
  s += " note=\"" + validity_note + "\"";
  return s;
}

double entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("entropy needs t in [0,1]");
  double h = 0.0;
  if (t > 0.0) h -= t * std::log(t);
  if (t < 1.0) h -= (1.0 - t) * std::log1p(-t);
  return h;
}

double binom_entropy_bound(std::uint64_t a, double t) {
  if (!(t >= 0.0 && t <= 0.5)) throw std::invalid_argument("binomial entropy bound needs 0 <= t <= 1/2");
  return std::exp(entropy(t) * static_cast<double>(a));
}

double thm1b_value(std::uint64_t n, double p, std::uint64_t field_order) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("thm1b needs p in ]0,1[");
  if (field_order < 2) throw std::invalid_argument("thm1b needs F >= 2");
  const double a = -std::log(p);
  return a / (a + std::log(static_cast<double>(field_order))) * static_cast<double>(n);
}

BoundReport thm1b_bound(std::uint64_t n, double p, std::uint64_t field_order) {
  BoundReport r;
  r.name = "thm1b";
  r.inputs = {{"n", static_cast<double>(n)}, {"p", p}, {"F", static_cast<double>(field_order)}};
  r.value = thm1b_value(n, p, field_order);
  const double lnlnf = std::log(std::log(static_cast<double>(field_order)));
  const double pmin = 100.0 * std::max(1.0, lnlnf) / static_cast<double>(n);
  r.validity_note = (pmin <= p ? "in range: " : "out of range: ") + std::string("needs p >= 100 max(1, ln ln F)/n = ") +
                    fmt(pmin) + "; order of magnitude only, constant 1";
  return r;
}

double frieze_midpoint(std::uint64_t n, double q) {
  const double nq = static_cast<double>(n) * q;
  if (!(nq > std::numbers::e)) throw std::invalid_argument("frieze window needs nq > e");
  return 2.0 / q * (std::log(nq) - std::log(std::log(nq)) + 1.0 - std::numbers::ln2);
}

FriezeWindow frieze_window(std::uint64_t n, double q, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("frieze window needs eps > 0");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("frieze window needs q in ]0,1]");
  const double nq = static_cast<double>(n) * q;
  if (!(nq > std::numbers::e)) throw std::invalid_argument("frieze window needs nq > e");
  const double base = std::log(nq) - std::log(std::log(nq)) + 1.0 - std::numbers::ln2;
  FriezeWindow w;
  w.k_minus = static_cast<long long>(std::floor(2.0 / q * (base - eps)));
  w.k_plus = static_cast<long long>(std::floor(2.0 / q * (base + eps)));
  const double upper = std::pow(std::log(static_cast<double>(n)), -2.0);
  w.validity_note = "needs C_eps/n <= q <= ln^-2 n = " + fmt(upper) + "; C_eps unknown; upper side " +
                    (q <= upper ? "holds" : "fails");
  return w;
}

double lemma3_bound(std::uint64_t n, double d) {
  if (!(d > 1.0)) throw std::invalid_argument("lemma3 bound needs d > 1");
  return std::log(d) / d * static_cast<double>(n);
}

double tee_density_threshold(std::uint64_t n, std::uint64_t r, double p) {
  if (r >= n) throw std::invalid_argument("tee density threshold needs r < n");
  return 15.0 * p * static_cast<double>(r) * static_cast<double>(n - r);
}

HyperTail hyper_tail_applicable(double lambda, double x) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("hypergeometric tail needs lambda >= 0");
  HyperTail t;
  t.applicable = x >= 7.0 * lambda;
  if (t.applicable) t.bound = std::exp(-x);
  return t;
}

namespace {

double need(const std::map<std::string, double>& args, const std::string& key) {
  auto it = args.find(key);
  if (it == args.end()) throw std::invalid_argument("missing argument '" + key + "'");
  return it->second;
}

std::uint64_t need_count(const std::map<std::string, double>& args, const std::string& key) {
  const double v = need(args, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15)
    throw std::invalid_argument("argument '" + key + "' must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

void only(const std::map<std::string, double>& args, std::set<std::string> allowed) {
  for (const auto& [k, v] : args)
    if (!allowed.count(k)) throw std::invalid_argument("unexpected argument '" + k + "'");
}

}  // namespace

BoundReport evaluate_bound(const std::string& name, const std::map<std::string, double>& args) {
  BoundReport r;
  r.name = name;
  for (const auto& kv : args) r.inputs.push_back(kv);
  if (name == "entropy") {
    only(args, {"t"});
    r.value = entropy(need(args, "t"));
    r.validity_note = "exact";
  } else if (name == "binom") {
    only(args, {"a", "t"});
    r.value = binom_entropy_bound(need_count(args, "a"), need(args, "t"));
    r.validity_note = "upper bound on C(a, floor(t a)) for t <= 1/2";
  } else if (name == "thm1b") {
    only(args, {"n", "p", "F"});
    return thm1b_bound(need_count(args, "n"), need(args, "p"), need_count(args, "F"));
  } else if (name == "frieze") {
    only(args, {"n", "q", "eps"});
    const auto w = frieze_window(need_count(args, "n"), need(args, "q"), need(args, "eps"));
    r.value = static_cast<double>(w.k_minus);
    r.value2 = static_cast<double>(w.k_plus);
    r.has_value2 = true;
    r.validity_note = w.validity_note;
  } else if (name == "lemma3") {
    only(args, {"n", "d"});
    r.value = lemma3_bound(need_count(args, "n"), need(args, "d"));
    r.validity_note = "order of magnitude only, constant 1";
  } else if (name == "tee-threshold") {
    only(args, {"n", "r", "p"});
    r.value = tee_density_threshold(need_count(args, "n"), need_count(args, "r"), need(args, "p"));
    r.validity_note = "threshold on nonzeros in an order-2r tee shape";
  } else if (name == "hyper-tail") {
    only(args, {"lambda", "x"});
    const auto t = hyper_tail_applicable(need(args, "lambda"), need(args, "x"));
    r.value = t.bound;
    r.validity_note = t.applicable ? "applicable: x >= 7 lambda" : "not applicable: x < 7 lambda";
  } else {
    throw std::invalid_argument("unknown bound '" + name + "'");
  }
  return r;
}

std::map<std::string, double> parse_bound_args(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size()) throw std::invalid_argument("bad number '" + val + "' for '" + key + "'");
    if (!out.emplace(key, v).second) throw std::invalid_argument("duplicate argument '" + key + "'");
  }
  return out;
}

}  // namespace foolrank
