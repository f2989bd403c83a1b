#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "acbls/instance.hpp"
#include "acbls/layered_graph.hpp"
#include "acbls/segmentation.hpp"
#include "acbls/soft_regular.hpp"

namespace acbls {

/// An instance with every posted constraint compiled and unrolled over its
/// view. Immutable; shared by any number of ModelStates.
class Model {
 public:
  struct Constraint {
    std::string name;
    std::shared_ptr<const Automaton> automaton;
    LayeredGraphPtr graph;
    std::vector<int> view;  // variable index per position, overlap aliases included
    int base_length = 0;
    bool circular = false;
    ViolationMode mode = ViolationMode::segment;
    const PostedConstraint* source = nullptr;
  };

  struct Occurrence {
    int constraint;
    int position;
  };

  /// `mode_override` replaces every constraint's own violation mode;
  /// `witness` applies to hamming-mode constraints.
  explicit Model(Instance instance, std::optional<ViolationMode> mode_override = std::nullopt,
                 Witness witness = Witness::sampled);

  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const Instance& instance() const { return instance_; }
  const Alphabet& alphabet() const { return instance_.alphabet; }
  int num_vars() const { return instance_.num_vars(); }
  Witness witness() const { return witness_; }
  std::span<const Constraint> constraints() const { return constraints_; }
  std::span<const Occurrence> occurrences(int var) const { return occurrences_[static_cast<std::size_t>(var)]; }

 private:
  Instance instance_;
  Witness witness_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<Occurrence>> occurrences_;
};

using ConstraintState = std::variant<SegmentationState, SoftRegularState>;
using ConstraintProbe = std::variant<SegmentationProbe, HammingProbe>;

struct SwapProbe {
  int x = 0;
  int y = 0;
  int delta = 0;
  std::uint64_t version = 0;
  std::vector<std::pair<int, ConstraintProbe>> records;  // (constraint, record)
};

/*
 * Assignment of the flattened schedule plus one violation state per posted
 * constraint. Moves are swaps of two differently valued cells of one column,
 * so every column keeps its workload.
 *
 * Per-variable violation sums the constraint violations at every position of
 * every view that reads the variable; overlap aliases count for the variable
 * they copy.
 */
class ModelState {
 public:
  ModelState(const Model& model, std::vector<Symbol> assignment, std::uint64_t seed);

  const Model& model() const { return *model_; }
  std::span<const Symbol> values() const { return values_; }
  int total_violation() const { return total_; }
  int violation_of(int var) const { return var_violation_[static_cast<std::size_t>(var)]; }
  std::span<const int> variable_violations() const { return var_violation_; }
  int constraint_violation(int c) const;
  const ConstraintState& constraint_state(int c) const { return states_[static_cast<std::size_t>(c)]; }

  /// Throws std::invalid_argument unless x and y share a column and differ in value.
  SwapProbe probe_swap(int x, int y, Draws mode = Draws::fresh);
  void commit(const SwapProbe& probe);

  /// Replaces the whole assignment and rebuilds every constraint state.
  void reset(std::vector<Symbol> assignment, std::uint64_t seed);

  /// Recomputes the aggregates and checks workloads and view aliasing.
  /// Throws std::logic_error on any mismatch.
  void check_consistency() const;

  /// Sum of segment-visit and arc-relaxation counters over all constraints.
  std::uint64_t visited_positions() const;
  std::uint64_t relaxed_arcs() const;

 private:
  void rebuild(std::uint64_t seed);
  void add_contribution(int c, int from, int sign);

  const Model* model_;
  std::vector<Symbol> values_;
  std::vector<ConstraintState> states_;
  std::vector<int> var_violation_;
  int total_ = 0;
  std::uint64_t version_ = 0;
};

/// Each column an independent uniform shuffle of its workload multiset.
std::vector<Symbol> initial_random(const Instance& inst, std::uint64_t seed);
/// Copies of the 6-row block d*7, e*7, n*7, x*7, d*7, x*7 (rotating family only).
std::vector<Symbol> initial_tiled(const Instance& inst);
std::vector<Symbol> initial_assignment(const Instance& inst, InitMode mode, std::uint64_t seed);

struct SolutionProblem {
  std::string predicate;  // "workload", "automaton", "pattern", "stretch", "offblock"
  std::string constraint;
  std::string message;
};

/// All failed checks: column workloads, acceptance of every view word by its
/// automaton, and the direct (cyclic where the view is circular) rule checks.
std::vector<SolutionProblem> validate_solution(const Model& model, std::span<const Symbol> assignment);
bool check_solution(const Model& model, std::span<const Symbol> assignment);

}  // namespace acbls
