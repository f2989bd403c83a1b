#include "acbls/layered_graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace acbls {
namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

LayeredGraph::LayeredGraph(const Automaton& a, int length)
    : alphabet_(a.alphabet()),
      length_(length),
      m_(a.num_states()),
      start_(a.start()),
      deterministic_(a.deterministic()) {
  if (length_ < 1) throw AutomatonError("unroll length must be positive");
  const std::size_t layers = static_cast<std::size_t>(length_) + 1;
  const std::size_t nodes = layers * static_cast<std::size_t>(m_);
  const std::size_t k = alphabet_.size();

  success_.assign(static_cast<std::size_t>(m_), 0);
  for (StateId s = 0; s < m_; ++s) success_[static_cast<std::size_t>(s)] = a.is_accepting(s);

  // Forward reachability, then backward co-reachability restricted to it.
  std::vector<char> fwd(nodes, 0);
  fwd[index(0, start_)] = 1;
  for (int i = 0; i < length_; ++i) {
    for (StateId s = 0; s < m_; ++s) {
      if (!fwd[index(i, s)]) continue;
      for (const auto& t : a.out(s)) fwd[index(i + 1, t.to)] = 1;
    }
  }
  alive_.assign(nodes, 0);
  for (StateId s = 0; s < m_; ++s) alive_[index(length_, s)] = fwd[index(length_, s)] && a.is_accepting(s);
  for (int i = length_ - 1; i >= 0; --i) {
    for (StateId s = 0; s < m_; ++s) {
      if (!fwd[index(i, s)]) continue;
      for (const auto& t : a.out(s)) {
        if (alive_[index(i + 1, t.to)]) {
          alive_[index(i, s)] = 1;
          break;
        }
      }
    }
  }
  if (!alive_[index(0, start_)]) throw EmptyLanguageError(length_);

  // Arcs between surviving nodes; Automaton::out() is sorted by (symbol, to).
  arc_begin_.assign(nodes + 1, 0);
  sym_begin_.assign(nodes * (k + 1), 0);
  for (int i = 0; i < length_; ++i) {
    for (StateId s = 0; s < m_; ++s) {
      const std::size_t node = index(i, s);
      arc_begin_[node] = arcs_.size();
      std::size_t* sym = &sym_begin_[node * (k + 1)];
      std::size_t c = 0;
      if (alive_[node]) {
        for (const auto& t : a.out(s)) {
          if (!alive_[index(i + 1, t.to)]) continue;
          while (c <= t.symbol) sym[c++] = arcs_.size();
          arcs_.push_back({t.symbol, t.to});
        }
      }
      while (c <= k) sym[c++] = arcs_.size();
    }
  }
  for (std::size_t node = index(length_, 0); node < nodes; ++node) {
    arc_begin_[node] = arcs_.size();
    std::fill_n(&sym_begin_[node * (k + 1)], k + 1, arcs_.size());
  }
  arc_begin_[nodes] = arcs_.size();

  // Reverse adjacency, grouped by target node.
  in_begin_.assign(nodes + 1, 0);
  for (int i = 0; i < length_; ++i) {
    for (StateId s = 0; s < m_; ++s) {
      for (const auto& arc : arcs(i, s)) ++in_begin_[index(i + 1, arc.to) + 1];
    }
  }
  for (std::size_t n = 1; n <= nodes; ++n) in_begin_[n] += in_begin_[n - 1];
  in_arcs_.resize(arcs_.size());
  {
    std::vector<std::size_t> fill(in_begin_.begin(), in_begin_.end() - 1);
    for (int i = 0; i < length_; ++i) {
      for (StateId s = 0; s < m_; ++s) {
        for (const auto& arc : arcs(i, s)) in_arcs_[fill[index(i + 1, arc.to)]++] = {s, arc.symbol};
      }
    }
  }

  paths_.assign(nodes, PathCount(0));
  for (StateId s = 0; s < m_; ++s) {
    if (alive_[index(length_, s)]) paths_[index(length_, s)] = 1;
  }
  choices_.resize(nodes);
  matching_index_.assign(nodes * k, kNone);
  std::vector<PathCount> weights;
  for (int i = length_ - 1; i >= 0; --i) {
    for (StateId s = 0; s < m_; ++s) {
      const std::size_t node = index(i, s);
      if (!alive_[node]) continue;
      weights.clear();
      PathCount sum = 0;
      for (const auto& arc : arcs(i, s)) {
        weights.push_back(paths(i + 1, arc.to));
        sum += weights.back();
      }
      paths_[node] = sum;
      choices_[node] = WeightedChoice(weights);
      for (std::size_t c = 0; c < k; ++c) {
        auto match = arcs(i, s, static_cast<Symbol>(c));
        if (match.size() < 2) continue;
        weights.clear();
        for (const auto& arc : match) weights.push_back(paths(i + 1, arc.to));
        matching_index_[node * k + c] = matching_.size();
        matching_.emplace_back(weights);
      }
    }
  }
}

const WeightedChoice* LayeredGraph::matching_choice(int layer, StateId s, Symbol symbol) const {
  const std::size_t at = matching_index_[index(layer, s) * alphabet_.size() + symbol];
  return at == kNone ? nullptr : &matching_[at];
}

std::size_t LayeredGraph::arc_count(int layer) const {
  return arc_begin_[index(layer + 1, 0)] - arc_begin_[index(layer, 0)];
}

std::size_t LayeredGraph::node_count() const {
  return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), 1));
}

void write_layered_text(std::ostream& out, const LayeredGraph& g) {
  out << "# layered graph: length " << g.length() << ", " << g.node_count() << " nodes, "
      << g.arc_count() << " arcs\n";
  for (int i = 0; i < g.length(); ++i) {
    for (StateId s = 0; s < g.num_states(); ++s) {
      for (const auto& arc : g.arcs(i, s)) {
        out << i + 1 << ' ' << s + 1 << " -> " << g.alphabet().name(arc.symbol) << ' ' << arc.to + 1 << '\n';
      }
    }
  }
  for (int i = 0; i <= g.length(); ++i) {
    for (StateId s = 0; s < g.num_states(); ++s) {
      if (g.alive(i, s)) out << "paths " << i + 1 << ' ' << s + 1 << ' ' << g.paths(i, s) << '\n';
    }
  }
}

void write_layered_dot(std::ostream& out, const LayeredGraph& g) {
  out << "digraph layered {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int i = 0; i <= g.length(); ++i) {
    out << "  { rank=same;";
    for (StateId s = 0; s < g.num_states(); ++s) {
      if (g.alive(i, s)) out << " L" << i + 1 << "_" << s + 1 << ";";
    }
    out << " }\n";
    for (StateId s = 0; s < g.num_states(); ++s) {
      if (!g.alive(i, s)) continue;
      out << "  L" << i + 1 << "_" << s + 1 << " [label=\"" << s + 1 << "\\n" << g.paths(i, s) << "\"";
      if (i == g.length()) out << ", shape=doublecircle";
      out << "];\n";
    }
  }
  for (int i = 0; i < g.length(); ++i) {
    for (StateId s = 0; s < g.num_states(); ++s) {
      for (const auto& arc : g.arcs(i, s)) {
        out << "  L" << i + 1 << "_" << s + 1 << " -> L" << i + 2 << "_" << arc.to + 1 << " [label=\""
            << g.alphabet().name(arc.symbol) << "\"];\n";
      }
    }
  }
  out << "}\n";
}

}  // namespace acbls
