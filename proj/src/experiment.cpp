#include "foolrank/experiment.hpp"

#include "foolrank/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace foolrank {

std::string to_string(SampleModel m) {
  switch (m) {
    case SampleModel::q: return "q";
    case SampleModel::r: return "r";
    case SampleModel::gnq: return "gnq";
  }
  return {};
}

SampleModel parse_sample_model(std::string_view text) {
  if (text == "q") return SampleModel::q;
  if (text == "r") return SampleModel::r;
  if (text == "gnq") return SampleModel::gnq;
  throw ConfigError("unknown model '" + std::string(text) + "' (expected q, r or gnq)");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size() && std::isfinite(out);
}

std::uint64_t config_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  if (!parse_number(v, x)) throw ConfigError(key + ": '" + v + "' is not a nonnegative integer");
  return x;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV row");
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::vector<double> ExperimentConfig::effective_p_list() const {
  if (model == SampleModel::q) return {kQModelDensity};
  return p_list;
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (auto n : n_list) {
    if (n == 0) throw ConfigError("n_list entries must be positive");
    if (model == SampleModel::r && n < 2) throw ConfigError("model r needs n >= 2");
  }
  if (model == SampleModel::q) {
    if (!p_list.empty()) throw ConfigError("p_list does not apply to model q");
  } else {
    if (p_list.empty()) throw ConfigError("p_list must not be empty for model " + to_string(model));
    for (double p : p_list)
      if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p_list entries must lie in ]0,1]");
  }
  if (field_list.empty()) throw ConfigError("field_list must not be empty");
  for (const auto& f : field_list) {
    try {
      parse_field_descriptor(f);
    } catch (const FieldError& e) {
      throw ConfigError(std::string("field_list: ") + e.what());
    }
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (budget < 1) throw ConfigError("budget must be positive");
  if (methods.empty()) throw ConfigError("methods must not be empty");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key=value");
    const std::string key = trim(body.substr(0, eq));
    const std::string val = trim(body.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    if (key == "model") {
      c.model = parse_sample_model(val);
    } else if (key == "n_list") {
      c.n_list.clear();
      for (const auto& s : split_list(val)) {
        std::size_t n = 0;
        if (!parse_number(s, n)) throw ConfigError("n_list: '" + s + "' is not a count");
        c.n_list.push_back(n);
      }
    } else if (key == "p_list") {
      c.p_list.clear();
      for (const auto& s : split_list(val)) {
        double p = 0.0;
        if (!parse_real(s, p)) throw ConfigError("p_list: '" + s + "' is not a number");
        c.p_list.push_back(p);
      }
    } else if (key == "field_list") {
      c.field_list = split_list(val);
    } else if (key == "trials") {
      c.trials = config_u64(key, val);
    } else if (key == "seed") {
      c.seed = config_u64(key, val);
    } else if (key == "methods") {
      c.methods.clear();
      for (const auto& s : split_list(val)) {
        try {
          c.methods.push_back(parse_minrank_method(s));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("methods: ") + e.what());
        }
      }
    } else if (key == "budget") {
      c.budget = config_u64(key, val);
    } else if (key == "out_path") {
      c.out_path = val;
    } else if (key == "threads") {
      const auto t = config_u64(key, val);
      if (t > 256) throw ConfigError("threads: at most 256");
      c.threads = static_cast<unsigned>(t);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

std::string experiment_csv_header() {
  return "seed,trial,model,n,p,field,density_count,sqrt_bound,tri_bound,exact_minrank,thm1b_pred,lemma3_pred,"
         "tee_threshold,elapsed_ms";
}

std::string to_csv(const ExperimentRecord& r) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); };
  return std::to_string(r.seed) + "," + std::to_string(r.trial) + "," + r.model + "," + std::to_string(r.n) + "," +
         fmt_double(r.p) + "," + csv_quote(r.field) + "," + std::to_string(r.density_count) + "," +
         std::to_string(r.sqrt_bound) + "," + std::to_string(r.tri_bound) + "," +
         (r.exact_minrank ? std::to_string(*r.exact_minrank) : std::string()) + "," + opt(r.thm1b_pred) + "," +
         opt(r.lemma3_pred) + "," + opt(r.tee_threshold) + "," + fmt_double(r.elapsed_ms);
}

ExperimentRecord parse_csv_record(std::string_view line) {
  const auto f = csv_split(line);
  if (f.size() != 14) throw std::invalid_argument("expected 14 CSV fields, found " + std::to_string(f.size()));
  auto count = [&](std::size_t i) {
    std::uint64_t v = 0;
    if (!parse_number(f[i], v)) throw std::invalid_argument("field " + std::to_string(i + 1) + ": bad count '" + f[i] + "'");
    return v;
  };
  auto real = [&](std::size_t i) {
    double v = 0.0;
    if (!parse_real(f[i], v)) throw std::invalid_argument("field " + std::to_string(i + 1) + ": bad number '" + f[i] + "'");
    return v;
  };
  auto opt_real = [&](std::size_t i) -> std::optional<double> {
    if (f[i].empty()) return std::nullopt;
    return real(i);
  };
  ExperimentRecord r;
  r.seed = count(0);
  r.trial = count(1);
  r.model = f[2];
  r.n = count(3);
  r.p = real(4);
  r.field = f[5];
  r.density_count = count(6);
  r.sqrt_bound = count(7);
  r.tri_bound = count(8);
  if (!f[9].empty()) r.exact_minrank = count(9);
  r.thm1b_pred = opt_real(10);
  r.lemma3_pred = opt_real(11);
  r.tee_threshold = opt_real(12);
  r.elapsed_ms = real(13);
  return r;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out = experiment_csv_header() + "\n";
  for (const auto& r : records) out += to_csv(r) + "\n";
  return out;
}

std::vector<ExperimentRecord> records_from_csv(std::string_view text) {
  std::vector<ExperimentRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != experiment_csv_header()) throw std::invalid_argument("unexpected CSV header");
      header = false;
      continue;
    }
    out.push_back(parse_csv_record(line));
  }
  return out;
}

FoolingPattern sample_trial_pattern(SampleModel model, std::size_t n, double p, RngStream& rng) {
  switch (model) {
    case SampleModel::q: return sample_q(n, rng);
    case SampleModel::r: return sample_r(n, p, rng);
    case SampleModel::gnq: {
      const PatternGraph g = sample_gnq(n, p, rng);
      BitMatrix bits = BitMatrix::identity(n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < k; ++l)
          if (g.has_edge(k, l)) bits.set(k, l, true);
      return FoolingPattern(bits);
    }
  }
  throw std::invalid_argument("unknown model");
}

namespace {

struct Task {
  std::size_t n;
  double p;
  std::size_t field_index;
  std::uint64_t global;
};

ExperimentRecord run_trial(const ExperimentConfig& c, const Task& t, const Field& field) {
  const auto t0 = std::chrono::steady_clock::now();
  RngStream rng(c.seed, t.global);
  const FoolingPattern pat = sample_trial_pattern(c.model, t.n, t.p, rng);

  ExperimentRecord r;
  r.seed = c.seed;
  r.trial = t.global;
  r.model = to_string(c.model);
  r.n = t.n;
  r.p = t.p;
  r.field = c.field_list[t.field_index];
  r.density_count = pat.off_diagonal_ones();
  r.sqrt_bound = sqrt_bound(t.n);
  r.tri_bound = triangular_bound(pat, t.n <= kExactMisLimit ? MisMode::exact : MisMode::greedy).size;

  bool brute = false, gpat = false;
  for (auto m : c.methods) {
    brute |= m == MinrankMethod::brute || m == MinrankMethod::both;
    gpat |= m == MinrankMethod::gpattern || m == MinrankMethod::both;
  }
  if ((brute || gpat) && field.is_finite()) {
    std::optional<std::size_t> a, b;
    if (brute) a = minrank_exact_brute(pat, field, c.budget).exact;
    if (gpat) b = minrank_exact_gpattern(pat, field, c.budget).exact;
    if (a && b && *a != *b)
      throw InvariantFailure("exact searches disagree on trial " + std::to_string(t.global) + ": brute " +
                             std::to_string(*a) + ", gpattern " + std::to_string(*b));
    r.exact_minrank = a ? a : b;
  }

  const std::uint64_t order = field.is_finite() ? field.order() : 0;
  if (t.p > 0.0 && t.p < 1.0 && order >= 2) r.thm1b_pred = thm1b_value(t.n, t.p, order);
  // Expected degree of the lower-triangle graph.
  const double d = c.model == SampleModel::gnq ? t.p * static_cast<double>(t.n - 1) : t.p * static_cast<double>(t.n - 1) / 2.0;
  if (d > 1.0) r.lemma3_pred = lemma3_bound(t.n, d);
  if (r.sqrt_bound < t.n) r.tee_threshold = tee_density_threshold(t.n, r.sqrt_bound, t.p);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<Field> fields;
  for (const auto& f : config.field_list) fields.emplace_back(parse_field_descriptor(f));

  std::vector<Task> tasks;
  std::uint64_t global = 0;
  for (auto n : config.n_list)
    for (double p : config.effective_p_list())
      for (std::size_t fi = 0; fi < fields.size(); ++fi)
        for (std::uint64_t t = 0; t < config.trials; ++t) tasks.push_back({n, p, fi, global++});

  std::vector<ExperimentRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        records[i] = run_trial(config, tasks[i], fields[tasks[i].field_index]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(config.threads, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tie(a.n, a.p, a.field, a.trial) < std::tie(b.n, b.p, b.field, b.trial);
  });
  return records;
}

}  // namespace foolrank
