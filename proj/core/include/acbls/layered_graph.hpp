#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "acbls/automaton.hpp"
#include "acbls/weighted_choice.hpp"

namespace acbls {

class EmptyLanguageError : public AutomatonError {
 public:
  explicit EmptyLanguageError(int length)
      : AutomatonError("empty language at length " + std::to_string(length)), length_(length) {}
  int length() const { return length_; }

 private:
  int length_;
};

struct Arc {
  Symbol symbol;
  StateId to;
};

struct InArc {
  StateId from;
  Symbol symbol;
};

/*
 * An automaton unrolled over `length` positions.
 *
 * Layers are numbered 0..length; layer i holds the states the automaton can
 * be in before reading position i. Every layer is a dense array of
 * num_states() slots with a survival mask. After construction only nodes on
 * some start-to-success path survive, and arcs join surviving nodes only.
 *
 * paths(i, s) is the number of labelled paths from node s of layer i to a
 * success node in the last layer, i.e. the number of accepted completions.
 */
class LayeredGraph {
 public:
  /// Throws EmptyLanguageError when no word of this length is accepted.
  LayeredGraph(const Automaton& automaton, int length);

  int length() const { return length_; }
  int num_states() const { return m_; }
  const Alphabet& alphabet() const { return alphabet_; }
  StateId start() const { return start_; }
  bool deterministic() const { return deterministic_; }

  bool alive(int layer, StateId s) const { return alive_[index(layer, s)] != 0; }
  bool is_success(StateId s) const { return success_[static_cast<std::size_t>(s)] != 0; }

  /// Outgoing arcs of a node, sorted by (symbol, to).
  std::span<const Arc> arcs(int layer, StateId s) const {
    const std::size_t node = index(layer, s);
    return std::span<const Arc>(arcs_).subspan(arc_begin_[node], arc_begin_[node + 1] - arc_begin_[node]);
  }
  /// Outgoing arcs of a node labelled `symbol`.
  std::span<const Arc> arcs(int layer, StateId s, Symbol symbol) const {
    const std::size_t* sym = &sym_begin_[index(layer, s) * (alphabet_.size() + 1)];
    return std::span<const Arc>(arcs_).subspan(sym[symbol], sym[symbol + 1] - sym[symbol]);
  }
  /// Incoming arcs of a node in layer >= 1, sorted by (from, symbol).
  std::span<const InArc> in_arcs(int layer, StateId s) const {
    const std::size_t node = index(layer, s);
    return std::span<const InArc>(in_arcs_).subspan(in_begin_[node], in_begin_[node + 1] - in_begin_[node]);
  }

  const PathCount& paths(int layer, StateId s) const { return paths_[index(layer, s)]; }
  /// Number of accepted words of length length().
  const PathCount& count() const { return paths(0, start_); }

  /// Successor sampler over arcs(layer, s), weighted by target path counts.
  const WeightedChoice& successor_choice(int layer, StateId s) const {
    return choices_[index(layer, s)];
  }
  /// Sampler over arcs(layer, s, symbol) when that set has several arcs.
  const WeightedChoice* matching_choice(int layer, StateId s, Symbol symbol) const;

  std::size_t arc_count() const { return arcs_.size(); }
  std::size_t arc_count(int layer) const;
  std::size_t node_count() const;

 private:
  std::size_t index(int layer, StateId s) const {
    return static_cast<std::size_t>(layer) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(s);
  }

  Alphabet alphabet_;
  int length_;
  int m_;
  StateId start_;
  bool deterministic_;
  std::vector<char> success_;
  std::vector<char> alive_;
  std::vector<std::size_t> arc_begin_;  // per node, into arcs_
  std::vector<std::size_t> sym_begin_;  // per (node, symbol), into arcs_
  std::vector<Arc> arcs_;
  std::vector<std::size_t> in_begin_;
  std::vector<InArc> in_arcs_;
  std::vector<PathCount> paths_;
  std::vector<WeightedChoice> choices_;
  std::vector<std::size_t> matching_index_;  // per (node, symbol), into matching_ or npos
  std::vector<WeightedChoice> matching_;
};

using LayeredGraphPtr = std::shared_ptr<const LayeredGraph>;

/// `layer node -> symbol node` lines with 1-based layers and states, then
/// `paths layer node count` lines.
void write_layered_text(std::ostream& out, const LayeredGraph& g);
/// Graphviz DOT rendering, nodes labelled with their path counts.
void write_layered_dot(std::ostream& out, const LayeredGraph& g);

}  // namespace acbls
