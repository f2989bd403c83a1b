#include "acbls/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <thread>

#include "acbls/model.hpp"

namespace acbls {

Stat summarize(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0;
  for (double x : xs) sum += x;
  s.avg = sum / static_cast<double>(xs.size());
  double sq = 0;
  for (double x : xs) sq += (x - s.avg) * (x - s.avg);
  s.sd = std::sqrt(sq / static_cast<double>(xs.size()));
  return s;
}

int default_thread_count() {
  if (const char* env = std::getenv("ACBLS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

BenchReport run_bench(const std::vector<BenchInstance>& instances, const BenchConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("bench: runs must be at least 1");

  struct Group {
    std::size_t instance;
    ViolationMode mode;
    InitMode init;
    std::shared_ptr<const Model> model;
    std::string error;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (ViolationMode mode : cfg.modes) {
      std::shared_ptr<const Model> model;
      std::string error;
      try {
        model = std::make_shared<const Model>(instances[i].instance, mode, cfg.witness);
      } catch (const std::exception& e) {
        error = e.what();
      }
      for (InitMode init : cfg.inits) groups.push_back({i, mode, init, model, error});
    }
  }

  BenchReport report;
  report.records.resize(groups.size() * static_cast<std::size_t>(cfg.runs));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task; (task = next++) < report.records.size();) {
      const Group& g = groups[task / static_cast<std::size_t>(cfg.runs)];
      RunRecord& rec = report.records[task];
      rec.instance = instances[g.instance].name;
      rec.mode = g.mode;
      rec.init = g.init;
      rec.run = static_cast<int>(task % static_cast<std::size_t>(cfg.runs));
      rec.seed = cfg.seed + static_cast<std::uint64_t>(rec.run);
      if (!g.model) {
        rec.error = g.error;
        continue;
      }
      try {
        SearchParams p;
        p.seed = rec.seed;
        p.init = g.init;
        p.max_iterations = cfg.max_iterations;
        p.time_limit_ms = cfg.time_limit_ms;
        p.tabu_floor = cfg.tabu_floor;
        p.restart_factor = cfg.restart_factor;
        RunStats stats = solve(*g.model, p);
        rec.solved = stats.solved;
        rec.iterations = stats.iterations;
        rec.time_ms = stats.time_ms;
        rec.restarts = stats.restarts;
        rec.best_violation = stats.best_violation;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
  };
  const int threads = std::max(1, cfg.threads > 0 ? cfg.threads : default_thread_count());
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    SummaryRow row;
    row.instance = instances[groups[gi].instance].name;
    row.mode = groups[gi].mode;
    row.init = groups[gi].init;
    row.runs = cfg.runs;
    std::vector<double> times, iters;
    for (int r = 0; r < cfg.runs; ++r) {
      const RunRecord& rec = report.records[gi * static_cast<std::size_t>(cfg.runs) + static_cast<std::size_t>(r)];
      if (!rec.error.empty()) {
        ++row.failed;
      } else if (rec.solved) {
        ++row.solved;
        times.push_back(rec.time_ms);
        iters.push_back(static_cast<double>(rec.iterations));
      }
    }
    row.time_ms = summarize(times);
    row.iterations = summarize(iters);
    report.summary.push_back(row);
  }
  return report;
}

void write_runs_csv(std::ostream& out, const BenchReport& report, bool include_time) {
  out << "instance,mode,init,run,seed,solved,iterations,time_ms,restarts,best_violation\n";
  const auto flags = out.flags();
  for (const auto& r : report.records) {
    out << r.instance << ',' << to_string(r.mode) << ',' << to_string(r.init) << ',' << r.run << ',' << r.seed << ','
        << (r.error.empty() ? (r.solved ? "1" : "0") : "error") << ',' << r.iterations << ',';
    if (include_time) {
      out << std::fixed << std::setprecision(3) << r.time_ms;
      out.flags(flags);
    } else {
      out << '-';
    }
    out << ',' << r.restarts << ',' << r.best_violation << '\n';
  }
}

void write_summary(std::ostream& out, const BenchReport& report) {
  const auto flags = out.flags();
  out << std::left << std::setw(18) << "instance" << std::setw(9) << "mode" << std::setw(8) << "init" << std::right
      << std::setw(8) << "solved" << " | " << std::setw(10) << "t_min" << std::setw(10) << "t_max" << std::setw(10)
      << "t_avg" << std::setw(10) << "t_sd" << " | " << std::setw(9) << "it_min" << std::setw(9) << "it_max"
      << std::setw(10) << "it_avg" << std::setw(10) << "it_sd" << '\n';
  out << std::fixed << std::setprecision(1);
  for (const auto& row : report.summary) {
    out << std::left << std::setw(18) << row.instance << std::setw(9) << to_string(row.mode) << std::setw(8)
        << to_string(row.init) << std::right << std::setw(8)
        << (std::to_string(row.solved) + "/" + std::to_string(row.runs)) << " | " << std::setw(10) << row.time_ms.min
        << std::setw(10) << row.time_ms.max << std::setw(10) << row.time_ms.avg << std::setw(10) << row.time_ms.sd
        << " | " << std::setw(9) << row.iterations.min << std::setw(9) << row.iterations.max << std::setw(10)
        << row.iterations.avg << std::setw(10) << row.iterations.sd;
    if (row.failed) out << "  (" << row.failed << " failed)";
    out << '\n';
  }
  out.flags(flags);
}

}  // namespace acbls
