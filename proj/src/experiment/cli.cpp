#include "flm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "flm/closed_forms.hpp"
#include "flm/experiment.hpp"
#include "flm/json_out.hpp"
#include "flm/level_chain.hpp"
#include "flm/long_path.hpp"
#include "flm/report.hpp"
#include "flm/theory.hpp"

namespace flm {

namespace {

const std::vector<std::string> kCommands = {"bounds", "oracle", "simulate", "compare", "path-check"};

struct Options {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out_path;
  std::size_t threads = 1;
  std::string config_path;

  std::string benchmark = "onemax";
  std::size_t n = 0;
  std::size_t k = 0;
  std::string rate = "1/n";
  std::uint64_t replicates = 100;
  std::string init;
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::optional<std::size_t> from;
  std::optional<std::size_t> to;
  std::string method = "auto";
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("FLM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.starts_with(flag + "=");
  });
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return num(v.get<double>());
  return v.dump();
}

// Appends flags from a JSON config object for every key not given on the
// command line. "command" names the subcommand.
void expand_config(std::vector<std::string>& args) {
  auto it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "--config" || a.starts_with("--config=");
  });
  if (it == args.end()) return;
  std::string path;
  if (*it == "--config") {
    if (std::next(it) == args.end()) return;  // CLI11 reports the missing value
    path = *std::next(it);
  } else {
    path = it->substr(9);
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");

  const bool has_command = std::any_of(args.begin(), args.end(), [](const std::string& a) {
    return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
  });
  for (auto e = cfg.begin(); e != cfg.end(); ++e) {
    std::string key = e.key();
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "command") {
      if (!has_command) args.insert(args.begin(), scalar_text(e.value()));
      continue;
    }
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (e.value().is_boolean()) {
      if (e.value().get<bool>()) args.push_back(flag);
      continue;
    }
    if (!e.value().is_primitive() || e.value().is_null()) {
      throw std::invalid_argument("config key '" + e.key() + "' must be a scalar");
    }
    args.push_back(flag);
    args.push_back(scalar_text(e.value()));
  }
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig c;
  c.benchmark = parse_benchmark_kind(o.benchmark);
  c.n = o.n;
  c.k = o.k;
  c.rate = MutationRate::parse(o.rate);
  c.replicates = o.replicates;
  c.master_seed = o.seed;
  if (!o.init.empty()) c.init = InitMode::parse(o.init);
  c.max_iterations = o.max_iterations;
  c.threads = o.threads;
  c.validate();
  return c;
}

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["benchmark"] = std::string(to_string(c.benchmark));
  j["n"] = c.n;
  j["k"] = c.k;
  j["rate"] = c.rate.to_string();
  j["p"] = c.mutation_rate();
  j["init"] = c.effective_init().to_string();
  return j;
}

Json bound_json(const bounds::BoundResult& b) {
  Json j;
  j["theorem"] = b.theorem;
  j["kind"] = std::string(bounds::to_string(b.kind));
  j["value"] = b.value;
  j["proven"] = b.proven;
  j["violated_preconditions"] = b.violated_preconditions;
  return j;
}

// Output sink: --out FILE or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

  void write(const std::string& text) { write_to(path_, text); }

  void write_to(const std::string& path, const std::string& text) {
    if (path.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot write '" + path + "'");
    f << text;
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ostream& fallback_;
};

// ---------------------------------------------------------------- bounds

int cmd_bounds(const Options& o, Sink& sink) {
  const ExperimentConfig c = make_config(o);
  const double p = c.mutation_rate();
  const bool one_over_n = c.rate.per_n && c.rate.value == 1.0;
  Json j = config_json(c);
  std::vector<std::pair<std::string, double>> scalars;

  switch (c.benchmark) {
    case BenchmarkKind::onemax: {
      const std::size_t from = o.from.value_or(0);
      const std::size_t to = o.to.value_or(c.n);
      if (!(from < to && to <= c.n)) throw std::invalid_argument("need 0 <= from < to <= n");
      j["from"] = from;
      j["to"] = to;
      if (one_over_n && c.n >= 2) {
        const auto b = bounds::onemax_bounds(c.n, from, to);
        scalars = {{"tilde_T", b.tilde_T},
                   {"tilde_T_plus", b.tilde_T_plus},
                   {"tilde_T_minus", b.tilde_T_minus},
                   {"thm_lower", b.thm_lower},
                   {"e_n", b.e_n}};
        j["thm_lower_clamped"] = b.thm_lower_clamped;
      }
      if (c.n <= 1000) {
        const auto ch = chain::onemax_level_matrix(c.n, p, chain::StartMode::fixed(from));
        scalars.emplace_back("exact_T", chain::expected_time_to_reach(ch, to)[from]);
      }
      break;
    }
    case BenchmarkKind::leadingones:
      scalars.emplace_back("leadingones_exact", bounds::leadingones_exact(c.n, p));
      if (one_over_n) {
        const double nd = static_cast<double>(c.n);
        scalars.emplace_back("asymptotic", nd * nd * (std::numbers::e - 1.0) / 2.0);
      }
      break;
    case BenchmarkKind::jump: {
      if (!one_over_n) throw std::invalid_argument("jump closed forms are stated for p = 1/n");
      const auto b = bounds::jump_bounds(c.n, c.k);
      scalars = {{"p_k", b.p_k},
                 {"skip_bound_arbitrary", b.skip_bound_arbitrary},
                 {"skip_bound_random", b.skip_bound_random},
                 {"lower_bound_arbitrary", b.lower_bound_arbitrary},
                 {"lower_bound_random", b.lower_bound_random}};
      break;
    }
    case BenchmarkKind::longpath: {
      const auto main = bounds::longpath_lower_bound(c.n, c.k, p);
      const auto ref = bounds::sudholt_reference_bound(c.n, c.k, p);
      const auto len = long_path_length(c.n, c.k);
      if (len) j["points"] = *len;
      scalars = {{"longpath_lower", main.value},
                 {"longpath_reference_unproven", ref.value},
                 {"leave_prob", bounds::longpath_leave_prob(c.n, c.k, p)},
                 {"leave_prob_upper", bounds::longpath_leave_prob_upper(c.n, p)},
                 {"visit_lower", bounds::longpath_visit_lower(p)}};
      j["longpath_lower_clamped"] = main.clamped;
      j["reference_proven"] = false;
      break;
    }
  }
  for (const auto& [k, v] : scalars) j[k] = v;

  const Theory th = theory_for(c);
  if (th.exact) {
    j["exact"] = *th.exact;
    j["exact_source"] = th.exact_source;
  }
  Json list = Json::array();
  for (const auto& b : th.runtime_bounds) list.push_back(bound_json(b));
  j["bounds"] = list;

  if (o.format == "json") {
    sink.write(dump_json(j));
  } else {
    std::ostringstream s;
    s << "name,kind,value,proven,valid\n";
    for (const auto& [k, v] : scalars) s << k << ",value," << num(v) << ",,\n";
    if (th.exact) s << "exact," << th.exact_source << "," << num(*th.exact) << ",,\n";
    for (const auto& b : th.runtime_bounds) {
      s << b.theorem << "," << bounds::to_string(b.kind) << "," << num(b.value) << ","
        << (b.proven ? "true" : "false") << "," << (b.valid() ? "true" : "false") << "\n";
    }
    sink.write(s.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const Options& o, Sink& sink) {
  const ExperimentConfig c = make_config(o);
  const OracleResult r = compute_oracle(c, parse_oracle_method(o.method));
  if (o.format == "json") {
    Json j = config_json(c);
    j.erase("p");  // "p" holds the leaving probabilities here
    j["mutation_rate"] = c.mutation_rate();
    j["method"] = std::string(to_string(r.method));
    j["level_kind"] = r.level_kind;
    j["levels"] = r.levels;
    j["p"] = r.leave;
    j["v"] = r.visit;
    j["expected_T"] = r.expected_time;
    sink.write(dump_json(j));
  } else {
    std::ostringstream s;
    s << "level,leave_prob,visit_prob\n";
    for (std::size_t i = 0; i < r.levels; ++i) {
      s << i << "," << (i < r.leave.size() ? num(r.leave[i]) : "") << ","
        << (i < r.visit.size() ? num(r.visit[i]) : "") << "\n";
    }
    s << "\nexpected_T\n" << num(r.expected_time) << "\n";
    sink.write(s.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

std::string runs_csv(const RunStatistics& st) {
  std::ostringstream s;
  s << "replicate,runtime,hit_optimum\n";
  for (const auto& r : st.runs) s << r.replicate << "," << r.runtime << "," << (r.hit_optimum ? 1 : 0) << "\n";
  return s.str();
}

std::string levels_csv(const RunStatistics& st) {
  std::ostringstream s;
  s << "level,visit_freq,leave_rate,mean_sojourn\n";
  for (const auto& l : st.levels) {
    s << l.level << "," << num(l.visit_freq) << "," << num(l.leave_rate) << "," << num(l.mean_sojourn) << "\n";
  }
  return s.str();
}

Json summary_json(const RunStatistics& st) {
  Json j;
  j["replicates"] = st.replicates;
  j["timeouts"] = st.timeouts;
  j["mean"] = st.mean;
  j["variance"] = st.variance;
  j["se"] = st.se;
  j["ci99"] = Json::array({st.ci_low, st.ci_high});
  return j;
}

Json stats_json(const ExperimentConfig& c, const RunStatistics& st) {
  Json j;
  j["config"] = config_json(c);
  j["config"]["replicates"] = c.replicates;
  j["config"]["seed"] = c.master_seed;
  j["config"]["max_iterations"] = c.max_iterations;
  j["summary"] = summary_json(st);
  Json levels = Json::array();
  for (const auto& l : st.levels) {
    Json e;
    e["level"] = l.level;
    e["visits"] = l.visits;
    e["visit_freq"] = l.visit_freq;
    e["leave_rate"] = l.leave_rate;
    e["mean_sojourn"] = l.mean_sojourn;
    levels.push_back(e);
  }
  j["levels"] = levels;
  Json runs = Json::array();
  for (const auto& r : st.runs) {
    runs.push_back({{"replicate", r.replicate}, {"runtime", r.runtime}, {"hit_optimum", r.hit_optimum}});
  }
  j["runs"] = runs;
  return j;
}

int cmd_simulate(const Options& o, Sink& sink) {
  const ExperimentConfig c = make_config(o);
  const RunStatistics st = run_experiment(c);
  if (o.format == "json") {
    sink.write(dump_json(stats_json(c, st)));
  } else if (sink.path().empty()) {
    sink.write(runs_csv(st) + "\n" + levels_csv(st));
  } else {
    sink.write(runs_csv(st));
    sink.write_to(sink.path() + ".levels.csv", levels_csv(st));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const Options& o, Sink& sink) {
  const ExperimentConfig c = make_config(o);
  const Theory th = theory_for(c);
  const RunStatistics st = run_experiment(c);
  const Report rep = compare_report(st, th.runtime_bounds, th.exact, th.visit_lower,
                                    th.exact_source.empty() ? "oracle" : th.exact_source);
  if (o.format == "json") {
    Json j;
    j["config"] = config_json(c);
    j["config"]["replicates"] = c.replicates;
    j["config"]["seed"] = c.master_seed;
    j["summary"] = summary_json(st);
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
      Json e;
      e["quantity"] = r.quantity;
      e["source"] = r.source;
      e["empirical"] = r.empirical;
      e["se"] = r.se;
      e["theoretical"] = r.theoretical;
      e["verdict"] = std::string(to_string(r.verdict));
      e["note"] = r.note;
      rows.push_back(e);
    }
    j["rows"] = rows;
    j["verdict"] = rep.failed() ? "FAIL" : "PASS";
    sink.write(dump_json(j));
  } else {
    std::ostringstream s;
    s << "quantity,source,empirical,se,theoretical,verdict,note\n";
    for (const auto& r : rep.rows) {
      s << r.quantity << "," << r.source << "," << num(r.empirical) << "," << num(r.se) << ","
        << num(r.theoretical) << "," << to_string(r.verdict) << "," << r.note << "\n";
    }
    sink.write(s.str());
  }
  return rep.failed() ? kExitFailVerdict : kExitOk;
}

// ---------------------------------------------------------------- path-check

int cmd_path_check(const Options& o, Sink& sink) {
  if (o.k < 2) throw std::invalid_argument("path-check needs --k >= 2");
  const LongKPath path(o.n, o.k);
  const PathCheck chk = verify_long_path(path);
  const auto expected = long_path_length(o.n, o.k);
  if (o.format == "json") {
    Json j;
    j["n"] = o.n;
    j["k"] = o.k;
    j["points"] = path.points().size();
    j["expected_points"] = expected ? Json(*expected) : Json();
    j["starts_at_zero"] = chk.starts_at_zero;
    j["length_matches"] = chk.length_matches;
    j["near_distances_exact"] = chk.near_distances_exact;
    j["far_distances_at_least_k"] = chk.far_distances_at_least_k;
    j["exhaustive"] = chk.exhaustive;
    j["pairs_checked"] = chk.pairs_checked;
    j["ok"] = chk.ok();
    Json pts = Json::array();
    for (const auto& x : path.points()) pts.push_back(x.to_string());
    j["path"] = pts;
    sink.write(dump_json(j));
  } else {
    std::ostringstream s;
    s << "points=" << path.points().size() << "\n";
    s << "verified=" << (chk.ok() ? "true" : "false") << "\n";
    s << "exhaustive=" << (chk.exhaustive ? "true" : "false") << "\n";
    for (const auto& x : path.points()) s << x.to_string() << "\n";
    sink.write(s.str());
  }
  return chk.ok() ? kExitOk : kExitValidation;
}

void add_benchmark_options(CLI::App* sub, Options& o, bool needs_n = true) {
  sub->add_option("--benchmark", o.benchmark, "onemax | leadingones | jump | longpath")
      ->capture_default_str();
  auto* n = sub->add_option("--n", o.n, "problem size");
  if (needs_n) n->required();
  sub->add_option("--k", o.k, "jump size or path block length");
  sub->add_option("--p", o.rate, "mutation rate: literal, a/b, or c/n")->capture_default_str();
  sub->add_option("--init", o.init, "random | zero | ones:K | bits:S (default: zero for longpath, else random)");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    expand_config(args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  Options o;
  o.threads = default_threads();
  CLI::App app{"Fitness-level bounds and (1+1) EA experiments", "flmlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "master seed")->capture_default_str();
  app.add_option("--out", o.out_path, "output file (default: standard output)");
  app.add_option("--threads", o.threads, "worker threads (default: FLM_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", o.config_path, "JSON file with default flag values");

  auto* bounds_cmd = app.add_subcommand("bounds", "theoretical bounds for a configuration");
  add_benchmark_options(bounds_cmd, o);
  bounds_cmd->add_option("--from", o.from, "onemax: start fitness k");
  bounds_cmd->add_option("--to", o.to, "onemax: target fitness l");

  auto* oracle_cmd = app.add_subcommand("oracle", "exact expected runtime and level statistics");
  add_benchmark_options(oracle_cmd, o);
  oracle_cmd->add_option("--method", o.method, "auto | level-chain | full-state | closed-form")
      ->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo runs of the (1+1) EA");
  auto* cmp_cmd = app.add_subcommand("compare", "simulate and check against bounds and oracle");
  for (auto* sub : {sim_cmd, cmp_cmd}) {
    add_benchmark_options(sub, o);
    sub->add_option("--replicates", o.replicates, "independent runs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-iterations", o.max_iterations, "per-run iteration cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  auto* path_cmd = app.add_subcommand("path-check", "build and verify a long k-path");
  path_cmd->add_option("--n", o.n, "dimension")->required();
  path_cmd->add_option("--k", o.k, "block length")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    Sink sink(o.out_path, out);
    if (app.got_subcommand(bounds_cmd)) return cmd_bounds(o, sink);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(o, sink);
    if (app.got_subcommand(sim_cmd)) return cmd_simulate(o, sink);
    if (app.got_subcommand(cmp_cmd)) return cmd_compare(o, sink);
    if (app.got_subcommand(path_cmd)) return cmd_path_check(o, sink);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace flm
