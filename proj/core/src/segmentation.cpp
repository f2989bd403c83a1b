#include "acbls/segmentation.hpp"

#include <algorithm>
#include <string>

namespace acbls {

SegmentationState::SegmentationState(LayeredGraphPtr graph, std::vector<Symbol> values,
                                     std::uint64_t seed)
    : graph_(std::move(graph)), values_(std::move(values)), rng_(seed) {
  if (!graph_) throw std::invalid_argument("SegmentationState: null graph");
  if (static_cast<int>(values_.size()) != graph_->length()) {
    throw std::invalid_argument("SegmentationState: assignment length differs from graph length");
  }
  const std::size_t n = values_.size();
  path_.assign(n + 1, graph_->start());
  violations_.assign(n, 0);
  draws_.assign(n, 0);
  calc_segment(0, Draws::fresh);
}

SegmentationState SegmentationState::with_draws(LayeredGraphPtr graph, std::vector<Symbol> values,
                                                std::vector<std::uint64_t> draws,
                                                std::uint64_t seed) {
  SegmentationState st(std::move(graph), std::move(values), seed);
  if (draws.size() != st.values_.size()) throw std::invalid_argument("with_draws: wrong draw count");
  st.draws_ = std::move(draws);
  st.segments_.clear();
  std::fill(st.violations_.begin(), st.violations_.end(), 0);
  st.violation_ = 0;
  st.calc_segment(0, Draws::replay);
  st.version_ = 0;
  st.visited_ = 0;
  return st;
}

void SegmentationState::calc_segment(int s, Draws mode) {
  const LayeredGraph& g = *graph_;
  const int n = length();
  if (s < 0 || s > n) throw std::out_of_range("calc_segment: position out of range");

  // Keep the segments picked for positions 0..s-1 only.
  while (!segments_.empty() && segments_.back().first >= s) segments_.pop_back();
  if (!segments_.empty() && segments_.back().last >= s) segments_.back().last = s - 1;
  bool in_segment = s > 0 && violations_[static_cast<std::size_t>(s - 1)] == 0;
  if (s == 0) path_[0] = g.start();

  for (int i = s; i < n; ++i) {
    const auto at = static_cast<std::size_t>(i);
    violation_ -= violations_[at];
    if (mode == Draws::fresh) draws_[at] = rng_();
    const StateId node = path_[at];
    const Symbol value = values_[at];
    StateId next;
    auto match = g.arcs(i, node, value);
    if (!match.empty()) {
      if (match.size() == 1) {
        next = match.front().to;
      } else {
        SplitMix64 gen(draws_[at]);
        next = match[g.matching_choice(i, node, value)->sample(gen)].to;
      }
      if (in_segment) {
        segments_.back().last = i;
      } else {
        segments_.push_back({i, i});
        in_segment = true;
      }
      violations_[at] = 0;
    } else {
      in_segment = false;
      violations_[at] = 1;
      ++violation_;
      SplitMix64 gen(draws_[at]);
      next = g.arcs(i, node)[g.successor_choice(i, node).sample(gen)].to;
    }
    path_[at + 1] = next;
  }
  visited_ += static_cast<std::uint64_t>(n - s);
  ++version_;
}

void SegmentationState::apply(std::span<const Change> changes, Draws mode) {
  if (changes.empty()) return;
  int from = length();
  for (const auto& c : changes) {
    if (c.position < 0 || c.position >= length()) throw std::out_of_range("apply: position out of range");
    values_[static_cast<std::size_t>(c.position)] = c.value;
    from = std::min(from, c.position);
  }
  calc_segment(from, mode);
}

void SegmentationState::assign(int i, Symbol v, Draws mode) {
  const Change c{i, v};
  apply(std::span<const Change>(&c, 1), mode);
}

void SegmentationState::save(int from, std::span<const Change> changes, Snapshot& snap) const {
  const auto f = static_cast<std::size_t>(from);
  snap.path.assign(path_.begin() + static_cast<std::ptrdiff_t>(f) + 1, path_.end());
  snap.violations.assign(violations_.begin() + static_cast<std::ptrdiff_t>(f), violations_.end());
  snap.draws.assign(draws_.begin() + static_cast<std::ptrdiff_t>(f), draws_.end());
  std::size_t kept = 0;
  while (kept < segments_.size() && segments_[kept].first < from) ++kept;
  snap.segment_base = kept > 0 ? kept - 1 : 0;
  snap.segments.assign(segments_.begin() + static_cast<std::ptrdiff_t>(snap.segment_base), segments_.end());
  snap.old_values.clear();
  for (const auto& c : changes) snap.old_values.push_back({c.position, values_[static_cast<std::size_t>(c.position)]});
  snap.violation = violation_;
}

void SegmentationState::restore(int from, const Snapshot& snap) {
  const auto f = static_cast<std::ptrdiff_t>(from);
  std::copy(snap.path.begin(), snap.path.end(), path_.begin() + f + 1);
  std::copy(snap.violations.begin(), snap.violations.end(), violations_.begin() + f);
  std::copy(snap.draws.begin(), snap.draws.end(), draws_.begin() + f);
  segments_.resize(snap.segment_base);
  segments_.insert(segments_.end(), snap.segments.begin(), snap.segments.end());
  // Reverse order so that a position changed twice ends at its first value.
  for (auto it = snap.old_values.rbegin(); it != snap.old_values.rend(); ++it) {
    values_[static_cast<std::size_t>(it->position)] = it->value;
  }
  violation_ = snap.violation;
}

SegmentationProbe SegmentationState::probe(std::span<const Change> changes, Draws mode) {
  SegmentationProbe rec;
  rec.version = version_;
  rec.changes.assign(changes.begin(), changes.end());
  rec.violation = violation_;
  if (changes.empty()) {
    rec.from = length();
    rec.segment_base = segments_.size();
    return rec;
  }
  int from = length();
  for (const auto& c : changes) {
    if (c.position < 0 || c.position >= length()) throw std::out_of_range("probe: position out of range");
    from = std::min(from, c.position);
  }
  const std::uint64_t version = version_;
  save(from, changes, scratch_);
  for (const auto& c : changes) values_[static_cast<std::size_t>(c.position)] = c.value;
  calc_segment(from, mode);

  const auto f = static_cast<std::ptrdiff_t>(from);
  rec.from = from;
  rec.delta = violation_ - scratch_.violation;
  rec.violation = violation_;
  rec.path_suffix.assign(path_.begin() + f + 1, path_.end());
  rec.violation_suffix.assign(violations_.begin() + f, violations_.end());
  rec.draw_suffix.assign(draws_.begin() + f, draws_.end());
  rec.segment_base = scratch_.segment_base;
  rec.segment_tail.assign(segments_.begin() + static_cast<std::ptrdiff_t>(rec.segment_base), segments_.end());

  restore(from, scratch_);
  version_ = version;
  return rec;
}

SegmentationProbe SegmentationState::probe_assign(int i, Symbol v, Draws mode) {
  const Change c{i, v};
  return probe(std::span<const Change>(&c, 1), mode);
}

SegmentationProbe SegmentationState::probe_swap(int i, int j, Draws mode) {
  if (i == j) throw std::invalid_argument("probe_swap: positions must differ");
  const Change cs[2] = {{i, values_.at(static_cast<std::size_t>(j))}, {j, values_.at(static_cast<std::size_t>(i))}};
  return probe(cs, mode);
}

void SegmentationState::commit(const SegmentationProbe& rec) {
  if (rec.version != version_) throw StaleProbeError();
  if (rec.changes.empty()) return;
  for (const auto& c : rec.changes) values_[static_cast<std::size_t>(c.position)] = c.value;
  const auto f = static_cast<std::ptrdiff_t>(rec.from);
  std::copy(rec.path_suffix.begin(), rec.path_suffix.end(), path_.begin() + f + 1);
  std::copy(rec.violation_suffix.begin(), rec.violation_suffix.end(), violations_.begin() + f);
  std::copy(rec.draw_suffix.begin(), rec.draw_suffix.end(), draws_.begin() + f);
  segments_.resize(rec.segment_base);
  segments_.insert(segments_.end(), rec.segment_tail.begin(), rec.segment_tail.end());
  violation_ = rec.violation;
  ++version_;
}

void SegmentationState::check_invariants() const {
  const LayeredGraph& g = *graph_;
  const int n = length();
  auto fail = [](const std::string& what) { throw std::logic_error("segmentation invariant: " + what); };

  if (path_[0] != g.start()) fail("path does not begin at the start node");
  if (!g.is_success(path_[static_cast<std::size_t>(n)])) fail("path does not end in a success node");
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  int covered_total = 0;
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    const Segment& sg = segments_[j];
    if (sg.first > sg.last || sg.first < 0 || sg.last >= n) fail("malformed segment");
    if (j > 0 && sg.first <= segments_[j - 1].last + 1) fail("segments overlap or touch");
    for (int i = sg.first; i <= sg.last; ++i) covered[static_cast<std::size_t>(i)] = 1;
    covered_total += sg.last - sg.first + 1;
  }
  int sum = 0;
  for (int i = 0; i < n; ++i) {
    const auto at = static_cast<std::size_t>(i);
    sum += violations_[at];
    if ((violations_[at] == 0) != (covered[at] != 0)) {
      fail("violation flag disagrees with segment cover at position " + std::to_string(i));
    }
    if (!g.alive(i, path_[at])) fail("path leaves the pruned graph at layer " + std::to_string(i));
    bool labelled = false, any = false;
    for (const auto& arc : g.arcs(i, path_[at])) {
      if (arc.to != path_[at + 1]) continue;
      any = true;
      labelled = labelled || arc.symbol == values_[at];
    }
    if (!any) fail("path has no arc at position " + std::to_string(i));
    if (violations_[at] == 0 && !labelled) fail("satisfied position without a matching arc at " + std::to_string(i));
  }
  if (sum != violation_) fail("sum of variable violations differs from constraint violation");
  if (n - covered_total != violation_) fail("n minus segment lengths differs from constraint violation");
}

}  // namespace acbls
