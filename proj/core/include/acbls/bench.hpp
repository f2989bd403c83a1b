#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "acbls/instance.hpp"
#include "acbls/tabu_search.hpp"

namespace acbls {

struct BenchInstance {
  std::string name;
  Instance instance;
};

struct BenchConfig {
  std::vector<ViolationMode> modes{ViolationMode::segment};
  std::vector<InitMode> inits{InitMode::random};
  int runs = 100;
  std::uint64_t seed = 1;
  std::int64_t max_iterations = 1'000'000;
  std::int64_t time_limit_ms = 0;
  int tabu_floor = 6;
  int restart_factor = 2;
  Witness witness = Witness::sampled;
  /// Worker threads; 0 reads ACBLS_THREADS, falling back to hardware concurrency.
  int threads = 0;
};

/// One row of the per-run CSV.
struct RunRecord {
  std::string instance;
  ViolationMode mode = ViolationMode::segment;
  InitMode init = InitMode::random;
  int run = 0;
  std::uint64_t seed = 0;
  bool solved = false;
  std::int64_t iterations = 0;
  double time_ms = 0.0;
  int restarts = 0;
  int best_violation = 0;
  std::string error;  // non-empty when the run failed
};

struct Stat {
  double min = 0, max = 0, avg = 0, sd = 0;  // sd: population standard deviation
};

/// Statistics over the solved runs of one (instance, mode, init) group.
struct SummaryRow {
  std::string instance;
  ViolationMode mode = ViolationMode::segment;
  InitMode init = InitMode::random;
  int runs = 0;
  int solved = 0;
  int failed = 0;
  Stat time_ms;
  Stat iterations;
};

struct BenchReport {
  std::vector<RunRecord> records;   // grouped, in instance order, then run index
  std::vector<SummaryRow> summary;  // one per group, in instance order
};

Stat summarize(const std::vector<double>& xs);

/// Runs cfg.runs searches per (instance, mode, init); run r uses seed cfg.seed + r.
BenchReport run_bench(const std::vector<BenchInstance>& instances, const BenchConfig& cfg);

int default_thread_count();

/// CSV columns: instance,mode,init,run,seed,solved,iterations,time_ms,restarts,best_violation
void write_runs_csv(std::ostream& out, const BenchReport& report, bool include_time = true);
void write_summary(std::ostream& out, const BenchReport& report);

}  // namespace acbls
