#include "acbls/soft_regular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "acbls/rng.hpp"

namespace acbls {

SoftRegularState::SoftRegularState(LayeredGraphPtr graph, std::vector<Symbol> values, Witness witness,
                                   std::uint64_t seed)
    : graph_(std::move(graph)), values_(std::move(values)), witness_(witness), rng_(seed) {
  if (!graph_) throw std::invalid_argument("SoftRegularState: null graph");
  if (static_cast<int>(values_.size()) != graph_->length()) {
    throw std::invalid_argument("SoftRegularState: assignment length differs from graph length");
  }
  const std::size_t nodes = (values_.size() + 1) * static_cast<std::size_t>(graph_->num_states());
  fwd_.assign(nodes, kInfinity);
  scratch_.assign(nodes, kInfinity);
  path_.assign(values_.size() + 1, graph_->start());
  violations_.assign(values_.size(), 0);
  fwd_[index(0, graph_->start())] = 0;
  update(0);
}

void SoftRegularState::relax_from(int s, std::vector<int>& cost) {
  const LayeredGraph& g = *graph_;
  const int m = g.num_states();
  for (int i = s; i < length(); ++i) {
    std::fill_n(cost.begin() + static_cast<std::ptrdiff_t>(index(i + 1, 0)), m, kInfinity);
    const Symbol value = values_[static_cast<std::size_t>(i)];
    for (StateId f = 0; f < m; ++f) {
      const int base = cost[index(i, f)];
      if (base >= kInfinity) continue;
      auto arcs = g.arcs(i, f);
      relaxed_ += arcs.size();
      for (const auto& arc : arcs) {
        int& target = cost[index(i + 1, arc.to)];
        target = std::min(target, base + (arc.symbol == value ? 0 : 1));
      }
    }
  }
}

int SoftRegularState::best_final(const std::vector<int>& cost) const {
  int best = kInfinity;
  for (StateId t = 0; t < graph_->num_states(); ++t) {
    if (graph_->alive(length(), t)) best = std::min(best, cost[index(length(), t)]);
  }
  return best;
}

void SoftRegularState::extract_path() {
  const LayeredGraph& g = *graph_;
  const int n = length();
  StateId t = -1;
  for (StateId s = 0; s < g.num_states(); ++s) {
    if (g.alive(n, s) && fwd_[index(n, s)] == violation_) {
      t = s;
      break;
    }
  }
  path_[static_cast<std::size_t>(n)] = t;
  for (int i = n - 1; i >= 0; --i) {
    const int target = fwd_[index(i + 1, t)];
    const Symbol value = values_[static_cast<std::size_t>(i)];
    // in_arcs are sorted by predecessor, so the first optimal one is the smallest.
    StateId pred = -1;
    std::uint8_t mismatch = 0;
    for (const auto& in : g.in_arcs(i + 1, t)) {
      const int c = fwd_[index(i, in.from)];
      if (c >= kInfinity) continue;
      const int cost = in.symbol == value ? 0 : 1;
      if (c + cost != target) continue;
      if (pred == -1) {
        pred = in.from;
        mismatch = static_cast<std::uint8_t>(cost);
      } else if (in.from == pred && cost == 0) {
        mismatch = 0;
      } else if (in.from != pred) {
        break;
      }
    }
    path_[static_cast<std::size_t>(i)] = pred;
    violations_[static_cast<std::size_t>(i)] = mismatch;
    t = pred;
  }
}

void SoftRegularState::sample_path(int s) {
  const LayeredGraph& g = *graph_;
  const int n = length();
  const int m = g.num_states();
  if (counts_.empty()) {
    counts_.assign(fwd_.size(), 0.0);
    counts_[index(0, g.start())] = 1.0;
  }
  for (int i = s; i < n; ++i) {
    std::fill_n(counts_.begin() + static_cast<std::ptrdiff_t>(index(i + 1, 0)), m, 0.0);
    const Symbol value = values_[static_cast<std::size_t>(i)];
    double top = 0;
    for (StateId f = 0; f < m; ++f) {
      const double w = counts_[index(i, f)];
      if (w == 0) continue;
      const int c = fwd_[index(i, f)];
      for (const auto& arc : g.arcs(i, f)) {
        if (c + (arc.symbol == value ? 0 : 1) != fwd_[index(i + 1, arc.to)]) continue;
        double& t = counts_[index(i + 1, arc.to)];
        t += w;
        top = std::max(top, t);
      }
    }
    // only ratios within a layer matter
    for (StateId t = 0; t < m; ++t) counts_[index(i + 1, t)] /= top;
  }

  SplitMix64& rng = rng_;
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  StateId t = -1;
  {
    double total = 0;
    for (StateId s = 0; s < m; ++s) {
      if (g.alive(n, s) && fwd_[index(n, s)] == violation_) total += counts_[index(n, s)];
    }
    double r = uniform() * total;
    for (StateId s = 0; s < m; ++s) {
      if (!g.alive(n, s) || fwd_[index(n, s)] != violation_) continue;
      t = s;
      if ((r -= counts_[index(n, s)]) < 0) break;
    }
  }
  path_[static_cast<std::size_t>(n)] = t;
  for (int i = n - 1; i >= 0; --i) {
    const int target = fwd_[index(i + 1, t)];
    const Symbol value = values_[static_cast<std::size_t>(i)];
    auto optimal = [&](const InArc& in) {
      const int c = fwd_[index(i, in.from)];
      return c < kInfinity && c + (in.symbol == value ? 0 : 1) == target;
    };
    double total = 0;
    for (const auto& in : g.in_arcs(i + 1, t)) {
      if (optimal(in)) total += counts_[index(i, in.from)];
    }
    double r = uniform() * total;
    StateId pred = -1;
    std::uint8_t mismatch = 0;
    for (const auto& in : g.in_arcs(i + 1, t)) {
      if (!optimal(in)) continue;
      pred = in.from;
      mismatch = in.symbol == value ? 0 : 1;
      if ((r -= counts_[index(i, in.from)]) < 0) break;
    }
    path_[static_cast<std::size_t>(i)] = pred;
    violations_[static_cast<std::size_t>(i)] = mismatch;
    t = pred;
  }
}

void SoftRegularState::update(int s) {
  if (s < 0 || s > length()) throw std::out_of_range("update: position out of range");
  relax_from(s, fwd_);
  violation_ = best_final(fwd_);
  if (witness_ == Witness::sampled) {
    sample_path(s);
  } else {
    extract_path();
  }
  ++version_;
}

void SoftRegularState::apply(std::span<const Change> changes) {
  if (changes.empty()) return;
  int from = length();
  for (const auto& c : changes) {
    values_.at(static_cast<std::size_t>(c.position)) = c.value;
    from = std::min(from, c.position);
  }
  update(from);
}

HammingProbe SoftRegularState::probe(std::span<const Change> changes) {
  HammingProbe rec;
  rec.version = version_;
  rec.changes.assign(changes.begin(), changes.end());
  rec.from = length();
  if (changes.empty()) return rec;

  std::vector<Change> old;
  old.reserve(changes.size());
  for (const auto& c : changes) {
    if (c.position < 0 || c.position >= length()) throw std::out_of_range("probe: position out of range");
    rec.from = std::min(rec.from, c.position);
    old.push_back({c.position, values_[static_cast<std::size_t>(c.position)]});
    values_[static_cast<std::size_t>(c.position)] = c.value;
  }
  const int m = graph_->num_states();
  std::copy_n(fwd_.begin() + static_cast<std::ptrdiff_t>(index(rec.from, 0)), m,
              scratch_.begin() + static_cast<std::ptrdiff_t>(index(rec.from, 0)));
  relax_from(rec.from, scratch_);
  rec.delta = best_final(scratch_) - violation_;
  for (auto it = old.rbegin(); it != old.rend(); ++it) values_[static_cast<std::size_t>(it->position)] = it->value;
  return rec;
}

HammingProbe SoftRegularState::probe_assign(int i, Symbol v) {
  const Change c{i, v};
  return probe(std::span<const Change>(&c, 1));
}

HammingProbe SoftRegularState::probe_swap(int i, int j) {
  if (i == j) throw std::invalid_argument("probe_swap: positions must differ");
  const Change cs[2] = {{i, values_.at(static_cast<std::size_t>(j))}, {j, values_.at(static_cast<std::size_t>(i))}};
  return probe(cs);
}

void SoftRegularState::commit(const HammingProbe& rec) {
  if (rec.version != version_) throw StaleProbeError();
  apply(rec.changes);
}

void SoftRegularState::check_invariants() const {
  const LayeredGraph& g = *graph_;
  auto fail = [](const std::string& what) { throw std::logic_error("soft regular invariant: " + what); };
  const int n = length();
  if (path_[0] != g.start()) fail("witness path does not begin at the start node");
  if (!g.is_success(path_[static_cast<std::size_t>(n)])) fail("witness path does not end in a success node");
  int sum = 0;
  for (int i = 0; i < n; ++i) {
    const auto at = static_cast<std::size_t>(i);
    bool found = false;
    for (const auto& arc : g.arcs(i, path_[at])) {
      if (arc.to != path_[at + 1]) continue;
      if ((arc.symbol == values_[at]) == (violations_[at] == 0)) found = true;
    }
    if (!found) fail("witness arc disagrees with variable violation at " + std::to_string(i));
    sum += violations_[at];
  }
  if (sum != violation_) fail("witness cost differs from constraint violation");
}

}  // namespace acbls
