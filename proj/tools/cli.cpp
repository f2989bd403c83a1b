#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "acbls/bench.hpp"
#include "acbls/layered_graph.hpp"
#include "acbls/model.hpp"
#include "acbls/schedule_io.hpp"
#include "acbls/tabu_search.hpp"
#include "json.hpp"

namespace acbls::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// "3", "1-4", "1,3,5-6"
std::vector<int> parse_scales(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ',');) {
    const auto dash = part.find('-');
    try {
      const int lo = std::stoi(part.substr(0, dash));
      const int hi = dash == std::string::npos ? lo : std::stoi(part.substr(dash + 1));
      if (lo < 1 || hi < lo) throw UsageError("bad scale range '" + part + "'");
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    } catch (const std::logic_error&) {
      throw UsageError("bad scale range '" + part + "'");
    }
  }
  return out;
}

Witness parse_witness(const std::string& s) {
  if (s == "sampled") return Witness::sampled;
  if (s == "smallest") return Witness::smallest;
  throw UsageError("unknown witness policy '" + s + "'");
}

struct SolveOptions {
  std::string instance;
  int rotating = 0;
  std::string mode;
  std::string init = "random";
  std::string witness = "sampled";
  std::uint64_t seed = 1;
  std::int64_t max_iters = 1'000'000;
  std::int64_t time_limit_ms = 0;
  int tabu_floor = 6;
  int restart_factor = 2;
  bool quiet = false;
  std::string output;
};

Instance instance_from(const std::string& path, int rotating) {
  if (!path.empty() && rotating > 0) throw UsageError("give either --instance or --rotating, not both");
  if (rotating > 0) return build_rotating_instance(rotating);
  if (path.empty()) throw UsageError("an instance is required (--instance or --rotating)");
  return load_instance(path);
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  Instance inst = instance_from(o.instance, o.rotating);
  std::optional<ViolationMode> mode;
  if (!o.mode.empty()) mode = parse_violation_mode(o.mode);
  const Model model(std::move(inst), mode, parse_witness(o.witness));

  SearchParams p;
  p.seed = o.seed;
  p.init = parse_init_mode(o.init);
  p.max_iterations = o.max_iters;
  p.time_limit_ms = o.time_limit_ms;
  p.tabu_floor = o.tabu_floor;
  p.restart_factor = o.restart_factor;
  const RunStats stats = solve(model, p);

  std::string modes;
  for (const auto& c : model.constraints()) {
    const std::string m(to_string(c.mode));
    if (modes.find(m) == std::string::npos) modes += (modes.empty() ? "" : ",") + m;
  }
  out << "seed " << o.seed << '\n';
  out << "instance " << model.instance().name << " (" << model.num_vars() << " variables, "
      << model.constraints().size() << " constraints, mode " << modes << ", init " << o.init << ")\n";
  if (!o.quiet) write_schedule_table(out, model.alphabet(), stats.best);
  out << (stats.solved ? "solved" : "not solved") << " iterations " << stats.iterations << " time_ms " << std::fixed
      << std::setprecision(3) << stats.time_ms << " restarts " << stats.restarts << " best_violation "
      << stats.best_violation << '\n';

  nlohmann::json extra = {{"instance", model.instance().name}, {"seed", o.seed},
                          {"solved", stats.solved},           {"iterations", stats.iterations},
                          {"restarts", stats.restarts},       {"best_violation", stats.best_violation}};
  const std::string js = schedule_to_json(model.alphabet(), stats.best, extra.dump());
  if (!o.quiet) out << js << '\n';
  if (!o.output.empty()) write_file(o.output, js + "\n");
  return stats.solved ? kOk : kLimit;
}

int cmd_check(const std::string& instance_path, int rotating, const std::string& assignment_path, std::ostream& out) {
  const Model model(instance_from(instance_path, rotating));
  std::vector<Symbol> values;
  try {
    values = parse_schedule(read_file(assignment_path), model.alphabet());
  } catch (const InstanceError& e) {
    throw UsageError(e.what());
  }
  if (static_cast<int>(values.size()) != model.num_vars()) {
    throw UsageError("schedule has " + std::to_string(values.size() / kDaysPerWeek) + " rows, instance has " +
                     std::to_string(model.instance().teams));
  }
  const auto problems = validate_solution(model, values);
  if (problems.empty()) {
    out << "valid\n";
    return kOk;
  }
  const auto& p = problems.front();
  out << "invalid: " << p.predicate << " (" << p.constraint << "): " << p.message << '\n';
  if (problems.size() > 1) out << problems.size() - 1 << " further problem(s)\n";
  return kFailed;
}

int cmd_unroll(const std::string& path, int length, bool count_only, const std::string& format, std::ostream& out,
               std::ostream& err) {
  Automaton a = [&] {
    try {
      return parse_automaton(read_file(path));
    } catch (const ParseError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }();
  try {
    const LayeredGraph g(a, length);
    if (count_only) {
      out << g.count() << '\n';
    } else if (format == "dot") {
      write_layered_dot(out, g);
    } else {
      write_layered_text(out, g);
    }
  } catch (const EmptyLanguageError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}

struct BenchOptions {
  std::vector<std::string> instances;
  std::string rotating;
  std::vector<std::string> modes{"segment"};
  std::vector<std::string> inits{"random"};
  std::string witness = "sampled";
  int runs = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  std::int64_t max_iters = 1'000'000;
  std::int64_t time_limit_ms = 0;
  int tabu_floor = 6;
  int restart_factor = 2;
  std::string csv;
  std::string summary;
  bool no_time = false;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  std::vector<BenchInstance> instances;
  if (!o.rotating.empty()) {
    for (int i : parse_scales(o.rotating)) instances.push_back({"rotating-" + std::to_string(i), build_rotating_instance(i)});
  }
  for (const auto& path : o.instances) {
    Instance inst = load_instance(path);
    instances.push_back({inst.name, std::move(inst)});
  }
  if (instances.empty()) throw UsageError("bench needs --rotating or at least one --instance");

  BenchConfig cfg;
  cfg.modes.clear();
  for (const auto& m : o.modes) cfg.modes.push_back(parse_violation_mode(m));
  cfg.inits.clear();
  for (const auto& i : o.inits) cfg.inits.push_back(parse_init_mode(i));
  cfg.runs = o.runs;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.max_iterations = o.max_iters;
  cfg.time_limit_ms = o.time_limit_ms;
  cfg.tabu_floor = o.tabu_floor;
  cfg.restart_factor = o.restart_factor;
  cfg.witness = parse_witness(o.witness);
  if (cfg.runs < 1) throw UsageError("--runs must be at least 1");

  const BenchReport report = run_bench(instances, cfg);
  out << "seed " << o.seed << " runs " << o.runs << '\n';
  write_summary(out, report);
  if (!o.csv.empty()) {
    std::ostringstream ss;
    write_runs_csv(ss, report, !o.no_time);
    write_file(o.csv, ss.str());
  }
  if (!o.summary.empty()) {
    std::ostringstream ss;
    write_summary(ss, report);
    write_file(o.summary, ss.str());
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automaton-constraint local search for rotating schedules"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "acbls 0.1.0");

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance with tabu search");
  solve_cmd->add_option("--instance,-i", so.instance, "Instance JSON file");
  solve_cmd->add_option("--rotating", so.rotating, "Use the built-in rotating instance of this scale");
  solve_cmd->add_option("--mode,--violation-mode", so.mode, "Override violation mode")
      ->check(CLI::IsMember({"segment", "hamming"}));
  solve_cmd->add_option("--init", so.init, "Initial assignment")->check(CLI::IsMember({"random", "tiled"}));
  solve_cmd->add_option("--witness", so.witness, "Hamming witness path policy")
      ->check(CLI::IsMember({"sampled", "smallest"}));
  solve_cmd->add_option("--seed", so.seed, "Random seed");
  solve_cmd->add_option("--max-iters", so.max_iters, "Iteration limit")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--time-limit-ms", so.time_limit_ms, "Time limit, 0 for none")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--tabu-floor", so.tabu_floor, "Minimum tabu tenure")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--restart-factor", so.restart_factor, "Restart every factor*|X| iterations")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--quiet,-q", so.quiet, "Print statistics only");
  solve_cmd->add_option("--output,-o", so.output, "Write the schedule JSON here");

  std::string check_instance, check_assignment;
  int check_rotating = 0;
  auto* check_cmd = app.add_subcommand("check", "Validate a schedule against an instance");
  check_cmd->add_option("--instance,-i", check_instance, "Instance JSON file");
  check_cmd->add_option("--rotating", check_rotating, "Use the built-in rotating instance of this scale");
  check_cmd->add_option("--assignment,-a", check_assignment, "Schedule (JSON or text table)")->required();

  std::string automaton_path, format = "text";
  int length = 0;
  bool count_only = false;
  auto* unroll_cmd = app.add_subcommand("unroll", "Unroll an automaton into a layered graph");
  unroll_cmd->add_option("--automaton,-a", automaton_path, "Automaton text file")->required();
  unroll_cmd->add_option("--length,-n", length, "Number of positions")->required()->check(CLI::PositiveNumber);
  unroll_cmd->add_flag("--count-only", count_only, "Print only the number of accepted words");
  unroll_cmd->add_option("--format", format, "Graph output format")->check(CLI::IsMember({"text", "dot"}));

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Repeated runs with statistics");
  bench_cmd->add_option("--instance,-i", bo.instances, "Instance JSON file (repeatable)");
  bench_cmd->add_option("--rotating", bo.rotating, "Rotating scales, e.g. 1-4 or 1,3");
  bench_cmd->add_option("--modes", bo.modes, "Violation modes")->delimiter(',')->check(CLI::IsMember({"segment", "hamming"}));
  bench_cmd->add_option("--inits", bo.inits, "Initial assignments")->delimiter(',')->check(CLI::IsMember({"random", "tiled"}));
  bench_cmd->add_option("--witness", bo.witness, "Hamming witness path policy")
      ->check(CLI::IsMember({"sampled", "smallest"}));
  bench_cmd->add_option("--runs", bo.runs, "Runs per configuration")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bo.seed, "Base seed; run r uses seed+r");
  bench_cmd->add_option("--threads", bo.threads, "Worker threads (default: ACBLS_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--max-iters", bo.max_iters, "Iteration limit per run")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--time-limit-ms", bo.time_limit_ms, "Time limit per run")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--tabu-floor", bo.tabu_floor, "Minimum tabu tenure")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--restart-factor", bo.restart_factor, "Restart period factor")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", bo.csv, "Per-run CSV output");
  bench_cmd->add_option("--summary", bo.summary, "Summary table output");
  bench_cmd->add_flag("--no-time", bo.no_time, "Write '-' for time_ms in the CSV");

  int gen_scale = 0;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("generate", "Write a rotating instance as JSON");
  gen_cmd->add_option("--rotating", gen_scale, "Scale")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--output,-o", gen_output, "Output file (default stdout)");

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(so, out);
    if (*check_cmd) return cmd_check(check_instance, check_rotating, check_assignment, out);
    if (*unroll_cmd) return cmd_unroll(automaton_path, length, count_only, format, out, err);
    if (*bench_cmd) return cmd_bench(bo, out);
    if (*gen_cmd) {
      const std::string js = instance_to_json(build_rotating_instance(gen_scale));
      if (gen_output.empty()) {
        out << js << '\n';
      } else {
        write_file(gen_output, js + "\n");
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    // every remaining failure is bad input: unreadable files, malformed JSON, inconsistent instances
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace acbls::cli
