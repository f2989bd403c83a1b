#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acbls/layered_graph.hpp"
#include "acbls/rng.hpp"
#include "acbls/segmentation.hpp"

namespace acbls {

struct HammingProbe {
  int delta = 0;
  int from = 0;
  std::uint64_t version = 0;
  std::vector<Change> changes;
};

/*
 * Baseline violation: the minimal Hamming distance from the current
 * assignment to any accepted word, computed by a shortest-path pass over the
 * layered graph (arc cost 0 when its label equals the value at that position,
 * 1 otherwise).
 *
 * Per-variable violations come from one witness path of minimal cost. With
 * Witness::smallest it is extracted backwards taking the smallest optimal
 * predecessor; with Witness::sampled it is drawn uniformly among all minimal
 * paths, consuming the state's seeded stream on every update.
 * Every update relaxes all arcs of the affected layers.
 */
enum class Witness { smallest, sampled };

class SoftRegularState {
 public:
  static constexpr int kInfinity = 1 << 29;

  SoftRegularState(LayeredGraphPtr graph, std::vector<Symbol> values, Witness witness = Witness::smallest,
                   std::uint64_t seed = 0);

  const LayeredGraph& graph() const { return *graph_; }
  int length() const { return static_cast<int>(values_.size()); }
  int violation() const { return violation_; }
  int violation_at(int i) const { return violations_[static_cast<std::size_t>(i)]; }
  std::span<const Symbol> values() const { return values_; }
  std::span<const std::uint8_t> violations() const { return violations_; }
  std::span<const StateId> path() const { return path_; }
  /// Minimal mismatch count from the start node to (layer, s).
  int forward_cost(int layer, StateId s) const { return fwd_[index(layer, s)]; }
  std::uint64_t version() const { return version_; }
  Witness witness() const { return witness_; }

  /// Recomputes after values changed at positions >= s only.
  void update(int s);
  void apply(std::span<const Change> changes);

  HammingProbe probe(std::span<const Change> changes);
  HammingProbe probe_assign(int i, Symbol v);
  HammingProbe probe_swap(int i, int j);
  void commit(const HammingProbe& record);

  void check_invariants() const;

  /// Arc relaxations performed so far (probes included).
  std::uint64_t relaxed_arcs() const { return relaxed_; }

 private:
  std::size_t index(int layer, StateId s) const {
    return static_cast<std::size_t>(layer) * static_cast<std::size_t>(graph_->num_states()) +
           static_cast<std::size_t>(s);
  }
  // Fills cost layers s+1..n of `cost` from layer s using values_.
  void relax_from(int s, std::vector<int>& cost);
  int best_final(const std::vector<int>& cost) const;
  void extract_path();
  void sample_path(int s);

  LayeredGraphPtr graph_;
  std::vector<Symbol> values_;
  std::vector<int> fwd_;
  std::vector<int> scratch_;
  std::vector<StateId> path_;
  std::vector<std::uint8_t> violations_;
  std::vector<double> counts_;  // sampled witness: optimal prefixes per node, rescaled per layer
  Witness witness_;
  SplitMix64 rng_;
  int violation_ = 0;
  std::uint64_t version_ = 0;
  std::uint64_t relaxed_ = 0;
};

}  // namespace acbls
