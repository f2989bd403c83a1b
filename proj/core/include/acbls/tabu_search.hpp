#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "acbls/model.hpp"
#include "acbls/rng.hpp"

namespace acbls {

struct SearchParams {
  int tabu_floor = 6;
  int restart_factor = 2;
  std::int64_t max_iterations = 1'000'000;
  std::int64_t time_limit_ms = 0;  // 0: no limit
  std::uint64_t seed = 1;
  InitMode init = InitMode::random;
};

struct RunStats {
  bool solved = false;
  std::int64_t iterations = 0;  // to the first solution when solved
  double time_ms = 0.0;
  int best_violation = 0;
  int restarts = 0;
  std::int64_t null_steps = 0;
  std::vector<Symbol> best;
};

struct MoveChoice {
  int y = 0;
  int delta = 0;
  SwapProbe probe;
};

/*
 * Tabu search with aspiration and periodic restarts.
 *
 * Each iteration picks a violated variable x uniformly, then the swap with a
 * differently valued y of the same column minimising the violation delta,
 * among pairs that are not tabu or that would beat the best violation seen.
 * The pair is then tabu for max(violation, tabu_floor) iterations. Every
 * restart_factor * |X| iterations the assignment is rebuilt per the init mode
 * and the tabu list cleared; the best solution is kept.
 */
class TabuSearch {
 public:
  TabuSearch(ModelState& state, SearchParams params);

  RunStats run();

  /// Uniformly random violated variable, or nullopt when none.
  std::optional<int> select_violated();
  /// Best admissible swap partner of x, ties broken uniformly; nullopt when
  /// every candidate is tabu and none aspirates.
  std::optional<MoveChoice> select_move(int x);
  /// One iteration; returns false on a null step.
  bool step();

  std::int64_t iteration() const { return it_; }
  int best_violation() const { return best_; }
  int restarts() const { return restarts_; }
  const std::vector<Symbol>& best_solution() const { return best_solution_; }
  std::int64_t tabu_until(int x, int y) const { return tabu_[slot(x, y)]; }
  void set_tabu(int x, int y, std::int64_t until);

 private:
  std::size_t slot(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(teams_) +
           static_cast<std::size_t>(y / kDaysPerWeek);
  }
  void restart();

  ModelState& state_;
  SearchParams params_;
  int teams_;
  int num_vars_;
  SplitMix64 rng_;
  std::vector<std::int64_t> tabu_;  // tabu_[x][row of y]
  std::int64_t it_ = 0;
  int best_;
  std::vector<Symbol> best_solution_;
  int restarts_ = 0;
  std::int64_t null_steps_ = 0;
};

/// Builds the initial assignment per params.init and runs the search.
RunStats solve(const Model& model, const SearchParams& params);

}  // namespace acbls
