#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "acbls/layered_graph.hpp"
#include "acbls/rng.hpp"

namespace acbls {

/// Where the random word used at each revisited position comes from.
enum class Draws {
  /// Draw a new word per position from the state's generator.
  fresh,
  /// Reuse the word recorded for that position by the previous computation.
  replay,
};

/// A new value for one position of a constrained sequence.
struct Change {
  int position;
  Symbol value;
};

struct Segment {
  int first;  // inclusive, 0-based
  int last;   // inclusive

  bool operator==(const Segment&) const = default;
};

class StaleProbeError : public std::logic_error {
 public:
  StaleProbeError() : std::logic_error("probe record is stale; re-probe the move") {}
};

/// Everything needed to turn the pre-probe state into the probed state.
struct SegmentationProbe {
  int delta = 0;
  int from = 0;  // first revisited position
  std::uint64_t version = 0;
  std::vector<Change> changes;
  std::vector<StateId> path_suffix;        // path[from + 1 .. n]
  std::vector<std::uint8_t> violation_suffix;  // violation[from .. n - 1]
  std::vector<std::uint64_t> draw_suffix;  // draws[from .. n - 1]
  std::size_t segment_base = 0;            // segments[0 .. segment_base) are untouched
  std::vector<Segment> segment_tail;
  int violation = 0;
};

/*
 * Incrementally maintained segmentation of an assignment against one
 * automaton constraint.
 *
 * A segmentation is an ordered list of disjoint, non-empty runs of positions
 * whose values lie on one picked start-to-success path through the layered
 * graph. Positions outside every segment are violated; the constraint
 * violation is their number.
 *
 * calc_segment(s) revisits positions s..n-1 once each. It follows the arc
 * labelled with the current value when one leaves the current path node
 * (extending or opening a segment); otherwise the position is violated and a
 * successor is sampled with probability proportional to its path count.
 *
 * Each revisited position is given one 64-bit draw word; all randomness at
 * that position derives from it. Recording the words makes any computation
 * replayable, which probe/commit and the tests rely on.
 */
class SegmentationState {
 public:
  SegmentationState(LayeredGraphPtr graph, std::vector<Symbol> values, std::uint64_t seed);

  /// Full computation using the given per-position draw words.
  static SegmentationState with_draws(LayeredGraphPtr graph, std::vector<Symbol> values,
                                      std::vector<std::uint64_t> draws, std::uint64_t seed = 0);

  const LayeredGraph& graph() const { return *graph_; }
  int length() const { return static_cast<int>(values_.size()); }
  int violation() const { return violation_; }
  int violation_at(int i) const { return violations_[static_cast<std::size_t>(i)]; }
  std::span<const Symbol> values() const { return values_; }
  std::span<const StateId> path() const { return path_; }
  std::span<const Segment> segments() const { return segments_; }
  std::span<const std::uint8_t> violations() const { return violations_; }
  std::span<const std::uint64_t> draws() const { return draws_; }
  std::uint64_t version() const { return version_; }

  /// Recomputes positions s..n-1 from the intact prefix.
  void calc_segment(int s, Draws mode = Draws::fresh);

  /// Sets the values and recomputes from the smallest changed position.
  void apply(std::span<const Change> changes, Draws mode = Draws::fresh);
  void assign(int i, Symbol v, Draws mode = Draws::fresh);

  /// Evaluates a move by making it and undoing it. The observable state is
  /// unchanged afterwards (only the generator advances under Draws::fresh).
  SegmentationProbe probe(std::span<const Change> changes, Draws mode = Draws::fresh);
  SegmentationProbe probe_assign(int i, Symbol v, Draws mode = Draws::fresh);
  SegmentationProbe probe_swap(int i, int j, Draws mode = Draws::fresh);

  /// Installs a probed state exactly; consumes no randomness.
  /// Throws StaleProbeError when the state changed since the probe.
  void commit(const SegmentationProbe& record);

  /// Throws std::logic_error naming the first broken invariant.
  void check_invariants() const;

  /// Positions revisited by calc_segment so far.
  std::uint64_t visited_positions() const { return visited_; }

 private:
  struct Snapshot {
    std::vector<StateId> path;
    std::vector<std::uint8_t> violations;
    std::vector<std::uint64_t> draws;
    std::vector<Segment> segments;
    std::size_t segment_base = 0;
    std::vector<Change> old_values;
    int violation = 0;
  };

  void save(int from, std::span<const Change> changes, Snapshot& snap) const;
  void restore(int from, const Snapshot& snap);

  LayeredGraphPtr graph_;
  std::vector<Symbol> values_;
  std::vector<StateId> path_;
  std::vector<std::uint8_t> violations_;
  std::vector<std::uint64_t> draws_;
  std::vector<Segment> segments_;
  int violation_ = 0;
  SplitMix64 rng_;
  std::uint64_t version_ = 0;
  std::uint64_t visited_ = 0;
  Snapshot scratch_;
};

}  // namespace acbls
