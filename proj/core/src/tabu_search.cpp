#include "acbls/tabu_search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace acbls {

TabuSearch::TabuSearch(ModelState& state, SearchParams params)
    : state_(state),
      params_(params),
      teams_(state.model().instance().teams),
      num_vars_(state.model().num_vars()),
      rng_(derive_seed(params.seed, 2)),
      tabu_(static_cast<std::size_t>(num_vars_) * static_cast<std::size_t>(teams_), 0),
      best_(state.total_violation()),
      best_solution_(state.values().begin(), state.values().end()) {
  if (params_.tabu_floor < 0) throw std::invalid_argument("tabu floor must be nonnegative");
  if (params_.restart_factor < 1) throw std::invalid_argument("restart factor must be at least 1");
}

void TabuSearch::set_tabu(int x, int y, std::int64_t until) {
  tabu_[slot(x, y)] = until;
  tabu_[slot(y, x)] = until;
}

std::optional<int> TabuSearch::select_violated() {
  int chosen = -1;
  std::uint64_t seen = 0;
  for (int v = 0; v < num_vars_; ++v) {
    if (state_.violation_of(v) <= 0) continue;
    ++seen;
    if (rng_() % seen == 0) chosen = v;
  }
  if (chosen < 0) return std::nullopt;
  return chosen;
}

std::optional<MoveChoice> TabuSearch::select_move(int x) {
  const auto values = state_.values();
  const int violations = state_.total_violation();
  std::optional<MoveChoice> best;
  std::uint64_t ties = 0;
  for (int y = x % kDaysPerWeek; y < num_vars_; y += kDaysPerWeek) {
    if (y == x || values[static_cast<std::size_t>(y)] == values[static_cast<std::size_t>(x)]) continue;
    SwapProbe probe = state_.probe_swap(x, y);
    const int nv = probe.delta;
    if (!(tabu_[slot(x, y)] <= it_ || violations + nv < best_)) continue;
    if (!best || nv < best->delta) {
      best = MoveChoice{y, nv, std::move(probe)};
      ties = 1;
    } else if (nv == best->delta && rng_() % ++ties == 0) {
      best = MoveChoice{y, nv, std::move(probe)};
    }
  }
  return best;
}

bool TabuSearch::step() {
  bool moved = false;
  if (auto x = select_violated()) {
    if (auto move = select_move(*x)) {
      state_.commit(move->probe);
      const int violations = state_.total_violation();
      set_tabu(*x, move->y, it_ + std::max(violations, params_.tabu_floor));
      if (violations < best_) {
        best_ = violations;
        best_solution_.assign(state_.values().begin(), state_.values().end());
      }
      moved = true;
    }
  }
  if (!moved) ++null_steps_;
  ++it_;
  return moved;
}

void TabuSearch::restart() {
  const std::uint64_t seed = rng_();
  state_.reset(initial_assignment(state_.model().instance(), params_.init, derive_seed(seed, 0)),
               derive_seed(seed, 1));
  std::fill(tabu_.begin(), tabu_.end(), 0);
  ++restarts_;
  if (state_.total_violation() < best_) {
    best_ = state_.total_violation();
    best_solution_.assign(state_.values().begin(), state_.values().end());
  }
}

RunStats TabuSearch::run() {
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(clock::now() - started).count(); };
  const std::int64_t period = static_cast<std::int64_t>(params_.restart_factor) * num_vars_;

  RunStats stats;
  while (state_.total_violation() > 0) {
    if (it_ >= params_.max_iterations) break;
    if (params_.time_limit_ms > 0 && elapsed_ms() >= static_cast<double>(params_.time_limit_ms)) break;
    step();
    if (state_.total_violation() == 0) break;
    if (it_ % period == 0) restart();
  }
  stats.solved = state_.total_violation() == 0;
  stats.iterations = it_;
  stats.time_ms = elapsed_ms();
  stats.best_violation = best_;
  stats.restarts = restarts_;
  stats.null_steps = null_steps_;
  stats.best = best_solution_;
  return stats;
}

RunStats solve(const Model& model, const SearchParams& params) {
  ModelState state(model, initial_assignment(model.instance(), params.init, derive_seed(params.seed, 0)),
                   derive_seed(params.seed, 1));
  TabuSearch search(state, params);
  return search.run();
}

}  // namespace acbls
