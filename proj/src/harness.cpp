#include "approxsym/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "approxsym/afp.hpp"
#include "approxsym/error.hpp"
#include "approxsym/generators.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/qsa.hpp"
#include "approxsym/rng.hpp"
#include "approxsym/stats.hpp"
#include "approxsym/text_io.hpp"

namespace approxsym {

namespace {

std::string fmt_g10(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Rounds to the CSV precision so records survive a CSV round trip unchanged.
double to_csv_precision(double v) {
  return std::isfinite(v) ? std::strtod(fmt_g10(v).c_str(), nullptr) : v;
}

const std::map<std::string, std::vector<std::string>>& model_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"grid", {"dims"}},
      {"er", {"n", "p"}},
      {"ba", {"n", "m"}},
      {"sbm", {"sizes", "probs"}},
      {"lrm", {"n", "p", "q"}},
      {"lrm-rewired", {"n", "p", "q", "k"}},
      {"lrm-distorted", {"n", "p", "q", "r", "t"}},
  };
  return keys;
}

bool is_lrm_family(const std::string& model) { return model.rfind("lrm", 0) == 0; }

int as_int(const ordered_json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d) || d != std::floor(d) || std::abs(d) > 2e9) {
    throw ConfigError(what + " must be an integer");
  }
  return static_cast<int>(d);
}

double as_double(const ordered_json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

std::vector<int> as_int_list(const ordered_json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be a list");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(as_int(e, what));
  return out;
}

std::vector<std::vector<double>> as_matrix(const ordered_json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be a list of lists");
  std::vector<std::vector<double>> out;
  for (const auto& row : v) {
    if (!row.is_array()) throw ConfigError(what + " must be a list of lists");
    std::vector<double> r;
    for (const auto& e : row) r.push_back(as_double(e, what));
    out.push_back(std::move(r));
  }
  return out;
}

void flatten_value(const ordered_json& v, std::string& out) {
  if (v.is_array()) {
    const bool nested = !v.empty() && v.front().is_array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += nested ? '/' : '|';
      flatten_value(v[i], out);
    }
  } else if (v.is_number_integer()) {
    out += std::to_string(v.get<std::int64_t>());
  } else if (v.is_number()) {
    out += fmt_g10(v.get<double>());
  } else if (v.is_string()) {
    out += v.get<std::string>();
  } else if (v.is_boolean()) {
    out += v.get<bool>() ? "true" : "false";
  }
}

void check_keys(const ordered_json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

ExperimentRecord error_record(const std::string& model, const std::string& params,
                              const std::string& method, std::uint64_t seed, int rep,
                              const std::string& msg) {
  ExperimentRecord r;
  r.model = model;
  r.params = params;
  r.method = method;
  r.seed = seed;
  r.run_index = rep;
  r.S = std::numeric_limits<double>::quiet_NaN();
  r.error = msg;
  return r;
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"grid", "er", "ba", "sbm", "lrm", "lrm-rewired",
                                                 "lrm-distorted"};
  return names;
}

void validate_model_params(const std::string& model, const ordered_json& params) {
  const auto it = model_keys().find(model);
  if (it == model_keys().end()) throw ConfigError("unknown model '" + model + "'");
  if (!params.is_object()) throw ConfigError("model parameters must be an object");
  const std::set<std::string> want(it->second.begin(), it->second.end());
  for (const auto& [k, _] : params.items()) {
    if (!want.count(k)) throw ConfigError("parameter '" + k + "' does not apply to model " + model);
  }
  for (const auto& k : it->second) {
    if (!params.contains(k)) throw ConfigError("model " + model + " needs parameter '" + k + "'");
    const auto& v = params.at(k);
    if (k == "dims" || k == "sizes") {
      as_int_list(v, k);
    } else if (k == "probs") {
      as_matrix(v, k);
    } else if (k == "p" || k == "q") {
      as_double(v, k);
    } else {
      as_int(v, k);
    }
  }
}

GeneratedInstance generate_model(const std::string& model, const ordered_json& params,
                                 std::uint64_t seed) {
  validate_model_params(model, params);
  auto i = [&](const char* k) { return as_int(params.at(k), k); };
  auto d = [&](const char* k) { return as_double(params.at(k), k); };
  if (model == "grid") return {gen_grid(as_int_list(params.at("dims"), "dims")), {}, {}};
  if (model == "er") return {gen_er(i("n"), d("p"), seed), {}, {}};
  if (model == "ba") return {gen_ba(i("n"), i("m"), seed), {}, {}};
  if (model == "sbm") {
    return {gen_sbm(as_int_list(params.at("sizes"), "sizes"), as_matrix(params.at("probs"), "probs"), seed),
            {}, {}};
  }
  if (model == "lrm") {
    LrmInstance inst = gen_lrm(i("n"), d("p"), d("q"), seed);
    return {std::move(inst.graph), std::move(inst.lr), {}};
  }
  if (model == "lrm-rewired") {
    LrmInstance inst = gen_lrm(i("n"), d("p"), d("q"), derive_seed(seed, "lrm"));
    return {rewire_k(inst.graph, i("k"), derive_seed(seed, "rewire")), std::move(inst.lr), {}};
  }
  LrmInstance base = gen_lrm(i("n"), d("p"), d("q"), derive_seed(seed, "lrm"));
  DistortedLrmInstance inst = distort_lrm(base, i("r"), i("t"), derive_seed(seed, "distort"));
  Permutation aut = distorted_lrm_automorphism(inst);
  return {std::move(inst.graph), std::move(inst.lr), std::move(aut)};
}

std::string flatten_params(const ordered_json& params) {
  std::string out;
  bool first = true;
  for (const auto& [k, v] : params.items()) {
    if (!first) out += ';';
    first = false;
    out += k;
    out += '=';
    flatten_value(v, out);
  }
  return out;
}

std::vector<ordered_json> ExperimentConfig::cells() const {
  std::vector<ordered_json> out{params};
  for (const auto& [key, values] : sweep.items()) {
    std::vector<ordered_json> next;
    for (const auto& cell : out) {
      for (const auto& v : values) {
        ordered_json c = cell;
        c[key] = v;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"model", "params", "sweep", "methods", "repetitions", "base_seed", "init", "reference",
                 "workers", "timing"},
             "config");
  ExperimentConfig cfg;
  if (!j.contains("model") || !j["model"].is_string()) throw ConfigError("config needs a string 'model'");
  cfg.model = j["model"].get<std::string>();
  if (!model_keys().count(cfg.model)) throw ConfigError("unknown model '" + cfg.model + "'");
  if (j.contains("params")) {
    check_keys(j["params"], {"n", "p", "q", "m", "k", "r", "t", "dims", "sizes", "probs"}, "params");
    cfg.params = j["params"];
  }
  if (j.contains("sweep")) {
    if (!j["sweep"].is_object()) throw ConfigError("sweep must be an object");
    for (const auto& [k, v] : j["sweep"].items()) {
      if (!v.is_array() || v.empty()) throw ConfigError("sweep '" + k + "' must be a non-empty list");
      if (cfg.params.contains(k)) throw ConfigError("'" + k + "' is both fixed and swept");
    }
    cfg.sweep = j["sweep"];
  }

  if (!j.contains("methods")) throw ConfigError("config needs 'methods'");
  const auto& methods = j["methods"];
  check_keys(methods, {"afp", "qsa"}, "methods");
  if (methods.empty()) throw ConfigError("methods must name at least one solver");
  if (methods.contains("afp")) {
    const auto& a = methods["afp"];
    check_keys(a, {"max_fp", "budget", "sched_c", "sched_d"}, "methods.afp");
    AfpMethodConfig m;
    if (a.contains("max_fp")) m.max_fp = as_int(a["max_fp"], "max_fp");
    if (a.contains("budget")) {
      const double b = as_double(a["budget"], "budget");
      if (b < 0 || b != std::floor(b)) throw ConfigError("budget must be a nonnegative integer");
      m.budget = static_cast<std::int64_t>(b);
    }
    if (a.contains("sched_c")) m.sched_c = as_double(a["sched_c"], "sched_c");
    if (a.contains("sched_d")) m.sched_d = as_double(a["sched_d"], "sched_d");
    cfg.afp = m;
  }
  if (methods.contains("qsa")) {
    const auto& q = methods["qsa"];
    check_keys(q, {"max_iters", "rel_tol", "blend", "penalty"}, "methods.qsa");
    QsaMethodConfig m;
    if (q.contains("max_iters")) m.max_iters = as_int(q["max_iters"], "max_iters");
    if (q.contains("rel_tol")) m.rel_tol = as_double(q["rel_tol"], "rel_tol");
    if (q.contains("blend")) {
      m.blend = as_double(q["blend"], "blend");
      if (*m.blend < 0.0 || *m.blend > 1.0) throw ConfigError("blend must lie in [0, 1]");
    }
    if (q.contains("penalty")) m.penalty = as_double(q["penalty"], "penalty");
    cfg.qsa = m;
  }

  if (j.contains("repetitions")) {
    cfg.repetitions = as_int(j["repetitions"], "repetitions");
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  }
  if (j.contains("base_seed")) {
    if (!j["base_seed"].is_number_unsigned()) throw ConfigError("base_seed must be a nonnegative integer");
    cfg.base_seed = j["base_seed"].get<std::uint64_t>();
  }
  if (j.contains("init")) {
    if (!j["init"].is_string()) throw ConfigError("init must be a string");
    cfg.init = j["init"].get<std::string>();
  }
  InitExpr init;
  try {
    init = parse_init_expr(cfg.init);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("bad init: ") + e.what());
  }
  if (j.contains("reference")) {
    const auto& r = j["reference"];
    if (r.is_null()) {
      cfg.reference = Reference::kNone;
    } else if (r == "none") {
      cfg.reference = Reference::kNone;
    } else if (r == "lr") {
      cfg.reference = Reference::kLr;
    } else if (r == "automorphism") {
      cfg.reference = Reference::kAutomorphism;
    } else {
      throw ConfigError("reference must be none, lr or automorphism");
    }
  }
  if (cfg.reference == Reference::kLr && !is_lrm_family(cfg.model)) {
    throw ConfigError("reference 'lr' needs an lrm model");
  }
  if (cfg.reference == Reference::kAutomorphism && cfg.model != "lrm-distorted") {
    throw ConfigError("reference 'automorphism' needs model lrm-distorted");
  }
  std::function<bool(const InitExpr&)> uses_lr = [&](const InitExpr& e) {
    return e.kind == InitExpr::Kind::kLr || (e.kind == InitExpr::Kind::kReshuffle && uses_lr(*e.inner));
  };
  if (uses_lr(init) && !is_lrm_family(cfg.model)) throw ConfigError("init 'lr' needs an lrm model");
  if (j.contains("workers")) {
    cfg.workers = as_int(j["workers"], "workers");
    if (cfg.workers < 0) throw ConfigError("workers must be nonnegative");
  }
  if (j.contains("timing")) {
    if (!j["timing"].is_boolean()) throw ConfigError("timing must be true or false");
    cfg.timing = j["timing"].get<bool>();
  }
  for (const auto& cell : cfg.cells()) validate_model_params(cfg.model, cell);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_text_file(path));
}

bool ExperimentRecord::operator==(const ExperimentRecord& o) const {
  return model == o.model && params == o.params && method == o.method && seed == o.seed &&
         run_index == o.run_index && same_double(S, o.S) && epsilon == o.epsilon &&
         fixed_points == o.fixed_points && hd_to_reference == o.hd_to_reference &&
         is_identity == o.is_identity && iterations == o.iterations && wall_ms == o.wall_ms;
}

std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& model, const std::string& params,
                        int repetition) {
  return derive_seed(derive_seed(derive_seed(base_seed, model), params),
                     static_cast<std::uint64_t>(repetition));
}

std::vector<ExperimentRecord> run_experiment(
    const ExperimentConfig& cfg, const std::function<void(std::size_t, std::size_t)>& progress) {
  const std::vector<ordered_json> cells = cfg.cells();
  std::vector<std::string> labels;
  for (const auto& c : cells) labels.push_back(flatten_params(c));
  const InitExpr init = parse_init_expr(cfg.init);
  std::vector<std::string> methods;
  if (cfg.afp) methods.push_back("afp");
  if (cfg.qsa) methods.push_back("qsa");

  const std::size_t tasks = cells.size() * static_cast<std::size_t>(cfg.repetitions);
  std::vector<std::vector<ExperimentRecord>> out(tasks);

  auto run_task = [&](std::size_t task) {
    const std::size_t ci = task / static_cast<std::size_t>(cfg.repetitions);
    const int rep = static_cast<int>(task % static_cast<std::size_t>(cfg.repetitions));
    const std::string& label = labels[ci];
    const std::uint64_t seed = cell_seed(cfg.base_seed, cfg.model, label, rep);
    auto& rows = out[task];

    GeneratedInstance inst;
    Permutation start;
    std::optional<Permutation> reference;
    try {
      inst = generate_model(cfg.model, cells[ci], seed);
      const int n = inst.graph.n();
      if (n < 2) throw InvalidInput("graph needs at least 2 nodes");
      const int k = cfg.afp && cfg.afp->max_fp ? *cfg.afp->max_fp : n / 2;
      InitContext ctx{n, std::clamp(k, 0, n - 2), derive_seed(seed, "init"), inst.lr};
      start = resolve_init_permutation(reseed_init_expr(init, seed), ctx);
      if (cfg.reference == Reference::kLr) reference = inst.lr;
      if (cfg.reference == Reference::kAutomorphism) reference = inst.automorphism;
    } catch (const std::exception& e) {
      for (const auto& m : methods) rows.push_back(error_record(cfg.model, label, m, seed, rep, e.what()));
      return;
    }

    for (const auto& m : methods) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        SolverReport rep_out;
        if (m == "afp") {
          AfpOptions o;
          o.max_fixed_points = cfg.afp->max_fp;
          o.budget = cfg.afp->budget;
          o.sched_c = cfg.afp->sched_c;
          o.sched_d = cfg.afp->sched_d;
          o.seed = derive_seed(seed, "afp");
          o.init = InitSpec::from(start);
          rep_out = afp_solve(inst.graph, o);
        } else {
          QsaOptions o;
          o.max_iters = cfg.qsa->max_iters;
          o.rel_tol = cfg.qsa->rel_tol;
          const double blend = cfg.qsa->blend.value_or(init.is_random_based() ? kRandomInitBlend
                                                                               : kGivenInitBlend);
          o.init = InitSpec::from(start, blend);
          if (cfg.qsa->penalty) o.penalty = PenaltyVector::uniform(inst.graph.n(), *cfg.qsa->penalty);
          rep_out = qsa_solve(inst.graph, o, derive_seed(seed, "qsa"));
        }
        const auto t1 = std::chrono::steady_clock::now();
        ExperimentRecord r;
        r.model = cfg.model;
        r.params = label;
        r.method = m;
        r.seed = seed;
        r.run_index = rep;
        r.S = to_csv_precision(rep_out.S);
        r.epsilon = rep_out.epsilon;
        r.fixed_points = rep_out.fixed_point_count;
        r.hd_to_reference = reference ? hamming(rep_out.final, *reference) : -1;
        r.is_identity = rep_out.is_identity;
        r.iterations = rep_out.iters;
        r.wall_ms = cfg.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() : 0;
        rows.push_back(std::move(r));
      } catch (const std::exception& e) {
        rows.push_back(error_record(cfg.model, label, m, seed, rep, e.what()));
      }
    }
  };

  unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(tasks, 1)));
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  std::size_t done = 0;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      run_task(t);
      if (progress) {
        std::lock_guard lock(progress_mu);
        progress(++done, tasks);
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<ExperimentRecord> records;
  records.reserve(tasks * methods.size());
  for (auto& rows : out) {
    for (auto& r : rows) records.push_back(std::move(r));
  }
  return records;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::string s = kCsvHeader;
  s += '\n';
  for (const auto& r : records) {
    s += r.model + ',' + r.params + ',' + r.method + ',' + std::to_string(r.seed) + ',' +
         std::to_string(r.run_index) + ',' + fmt_g10(r.S) + ',' + std::to_string(r.epsilon) + ',' +
         std::to_string(r.fixed_points) + ',' + std::to_string(r.hd_to_reference) + ',' +
         (r.is_identity ? "1" : "0") + ',' + std::to_string(r.iterations) + ',' +
         std::to_string(r.wall_ms) + '\n';
  }
  return s;
}

namespace {

template <typename T>
T parse_num(std::string_view tok, int line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("bad value '" + std::string(tok) + "' on CSV line " + std::to_string(line));
  }
  return v;
}

}  // namespace

std::vector<ExperimentRecord> records_from_csv(const std::string& text) {
  std::vector<ExperimentRecord> out;
  std::size_t pos = 0;
  int line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("CSV header does not match the record schema");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::size_t s = 0;
    while (true) {
      const std::size_t c = line.find(',', s);
      f.push_back(line.substr(s, c == std::string_view::npos ? std::string_view::npos : c - s));
      if (c == std::string_view::npos) break;
      s = c + 1;
    }
    if (f.size() != 12) {
      throw ParseError("CSV line " + std::to_string(line_no) + " has " + std::to_string(f.size()) +
                       " fields, expected 12");
    }
    ExperimentRecord r;
    r.model = std::string(f[0]);
    r.params = std::string(f[1]);
    r.method = std::string(f[2]);
    r.seed = parse_num<std::uint64_t>(f[3], line_no);
    r.run_index = parse_num<int>(f[4], line_no);
    r.S = parse_num<double>(f[5], line_no);
    r.epsilon = parse_num<std::int64_t>(f[6], line_no);
    r.fixed_points = parse_num<int>(f[7], line_no);
    r.hd_to_reference = parse_num<int>(f[8], line_no);
    if (f[9] != "0" && f[9] != "1") throw ParseError("is_identity must be 0 or 1 on CSV line " + std::to_string(line_no));
    r.is_identity = f[9] == "1";
    r.iterations = parse_num<std::int64_t>(f[10], line_no);
    r.wall_ms = parse_num<std::int64_t>(f[11], line_no);
    out.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("CSV is empty");
  return out;
}

std::vector<ExperimentRecord> best_of(const std::vector<ExperimentRecord>& records,
                                      const std::vector<GroupKey>& keys) {
  if (records.empty()) throw InvalidInput("best_of needs at least one record");
  auto key_of = [&](const ExperimentRecord& r) {
    std::string k;
    for (GroupKey g : keys) {
      switch (g) {
        case GroupKey::kModel: k += r.model; break;
        case GroupKey::kParams: k += r.params; break;
        case GroupKey::kMethod: k += r.method; break;
        case GroupKey::kSeed: k += std::to_string(r.seed); break;
        case GroupKey::kRunIndex: k += std::to_string(r.run_index); break;
      }
      k += '\x1f';
    }
    return k;
  };
  auto better = [](const ExperimentRecord& a, const ExperimentRecord& b) {
    if (std::isnan(b.S)) return !std::isnan(a.S) || a.seed < b.seed;
    if (std::isnan(a.S)) return false;
    if (a.S != b.S) return a.S < b.S;
    return a.seed < b.seed;
  };
  std::map<std::string, std::size_t> slot;
  std::vector<ExperimentRecord> out;
  for (const auto& r : records) {
    const auto [it, fresh] = slot.try_emplace(key_of(r), out.size());
    if (fresh) {
      out.push_back(r);
    } else if (better(r, out[it->second])) {
      out[it->second] = r;
    }
  }
  return out;
}

std::vector<CellComparison> compare_methods(const std::vector<ExperimentRecord>& records,
                                            const std::string& x_method, const std::string& y_method,
                                            double alpha) {
  using RunKey = std::pair<std::uint64_t, int>;
  struct Cell {
    std::string model, params;
    std::map<RunKey, const ExperimentRecord*> x, y;
  };
  std::vector<Cell> cells;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& r : records) {
    if (r.method != x_method && r.method != y_method) continue;
    const auto [it, fresh] = index.try_emplace({r.model, r.params}, cells.size());
    if (fresh) cells.push_back({r.model, r.params, {}, {}});
    Cell& c = cells[it->second];
    auto& side = r.method == x_method ? c.x : c.y;
    if (!side.emplace(RunKey{r.seed, r.run_index}, &r).second) {
      throw InvalidInput("duplicate " + r.method + " run (seed " + std::to_string(r.seed) + ") in cell " +
                         r.model + " " + r.params);
    }
  }
  if (cells.empty()) throw InvalidInput("no records for methods " + x_method + " and " + y_method);

  const double threshold = bonferroni(alpha, static_cast<int>(cells.size()));
  std::vector<CellComparison> out;
  for (const Cell& c : cells) {
    const std::string where = c.model + " " + c.params;
    if (c.x.size() != c.y.size()) {
      throw InvalidInput("cell " + where + " is unpaired: " + std::to_string(c.x.size()) + " " + x_method +
                         " runs vs " + std::to_string(c.y.size()) + " " + y_method + " runs");
    }
    std::vector<double> xs, ys;
    for (const auto& [key, rx] : c.x) {
      const auto it = c.y.find(key);
      if (it == c.y.end()) {
        throw InvalidInput("cell " + where + ": " + x_method + " run with seed " + std::to_string(key.first) +
                           " has no " + y_method + " partner");
      }
      if (std::isnan(rx->S) || std::isnan(it->second->S)) {
        throw InvalidInput("cell " + where + " contains an error row (seed " + std::to_string(key.first) + ")");
      }
      xs.push_back(rx->S);
      ys.push_back(it->second->S);
    }
    if (xs.size() < 2) throw InvalidInput("cell " + where + " has fewer than two pairs");
    const TTestResult t = paired_t_test(xs, ys);
    CellComparison row;
    row.model = c.model;
    row.params = c.params;
    row.x_method = x_method;
    row.y_method = y_method;
    row.pairs = static_cast<int>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
    }
    row.mean_x = sx / static_cast<double>(xs.size());
    row.mean_y = sy / static_cast<double>(ys.size());
    row.t = t.t;
    row.p = t.p;
    row.df = t.df;
    row.degenerate = t.degenerate;
    row.cohens_d = cohens_d_paired(xs, ys);
    row.alpha_corrected = threshold;
    row.significant = t.p < threshold;
    out.push_back(std::move(row));
  }
  return out;
}

std::string comparisons_to_csv(const std::vector<CellComparison>& rows) {
  std::string s =
      "model,params,x_method,y_method,pairs,mean_x,mean_y,t,p,df,degenerate,cohens_d,alpha_corrected,"
      "significant\n";
  for (const auto& r : rows) {
    s += r.model + ',' + r.params + ',' + r.x_method + ',' + r.y_method + ',' + std::to_string(r.pairs) + ',' +
         fmt_g10(r.mean_x) + ',' + fmt_g10(r.mean_y) + ',' + fmt_g10(r.t) + ',' + fmt_g10(r.p) + ',' +
         std::to_string(r.df) + ',' + (r.degenerate ? "1" : "0") + ',' + fmt_g10(r.cohens_d) + ',' +
         fmt_g10(r.alpha_corrected) + ',' + (r.significant ? "1" : "0") + '\n';
  }
  return s;
}

}  // namespace approxsym
