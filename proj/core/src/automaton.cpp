#include "acbls/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_set>

namespace acbls {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > std::numeric_limits<Symbol>::max()) {
    throw AutomatonError("alphabet too large");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw AutomatonError("empty symbol name");
    if (!seen.insert(n).second) throw AutomatonError("duplicate symbol '" + n + "'");
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

Symbol Alphabet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw AutomatonError("unknown symbol '" + std::string(name) + "'");
}

Word Alphabet::word(std::span<const std::string> names) const {
  Word w;
  w.reserve(names.size());
  for (const auto& n : names) w.push_back(at(n));
  return w;
}

std::string Alphabet::spell(std::span<const Symbol> word, std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += sep;
    out += name(word[i]);
  }
  return out;
}

Automaton::Automaton(Alphabet alphabet, int num_states, StateId start,
                     std::vector<StateId> accepting, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      start_(start),
      accepting_(static_cast<std::size_t>(std::max(num_states, 0)), false),
      transitions_(std::move(transitions)) {
  if (num_states_ < 1) throw AutomatonError("automaton needs at least one state");
  auto valid = [&](StateId s) { return s >= 0 && s < num_states_; };
  if (!valid(start_)) throw AutomatonError("start state out of range");
  for (StateId s : accepting) {
    if (!valid(s)) throw AutomatonError("accepting state out of range");
    accepting_[static_cast<std::size_t>(s)] = true;
  }
  for (const auto& t : transitions_) {
    if (!valid(t.from) || !valid(t.to)) throw AutomatonError("transition endpoint out of range");
    if (t.symbol >= alphabet_.size()) throw AutomatonError("transition symbol out of range");
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

  out_begin_.assign(static_cast<std::size_t>(num_states_) + 1, 0);
  for (const auto& t : transitions_) ++out_begin_[static_cast<std::size_t>(t.from) + 1];
  for (std::size_t i = 1; i < out_begin_.size(); ++i) out_begin_[i] += out_begin_[i - 1];

  for (std::size_t i = 1; i < transitions_.size(); ++i) {
    if (transitions_[i].from == transitions_[i - 1].from &&
        transitions_[i].symbol == transitions_[i - 1].symbol) {
      deterministic_ = false;
      break;
    }
  }
}

std::vector<StateId> Automaton::accepting_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < num_states_; ++s) {
    if (is_accepting(s)) out.push_back(s);
  }
  return out;
}

std::span<const Transition> Automaton::out(StateId s) const {
  auto i = static_cast<std::size_t>(s);
  return std::span<const Transition>(transitions_).subspan(out_begin_[i], out_begin_[i + 1] - out_begin_[i]);
}

bool accepts(const Automaton& a, std::span<const Symbol> word) {
  std::vector<char> current(static_cast<std::size_t>(a.num_states()), 0);
  std::vector<char> next(current.size(), 0);
  current[static_cast<std::size_t>(a.start())] = 1;
  for (Symbol c : word) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!current[static_cast<std::size_t>(s)]) continue;
      for (const auto& t : a.out(s)) {
        if (t.symbol == c) {
          next[static_cast<std::size_t>(t.to)] = 1;
          any = true;
        }
      }
    }
    if (!any) return false;
    current.swap(next);
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (current[static_cast<std::size_t>(s)] && a.is_accepting(s)) return true;
  }
  return false;
}

Automaton universal(const Alphabet& alphabet) {
  std::vector<Transition> ts;
  for (std::size_t c = 0; c < alphabet.size(); ++c) ts.push_back({0, static_cast<Symbol>(c), 0});
  return Automaton(alphabet, 1, 0, {0}, std::move(ts));
}

Automaton trim(const Automaton& a) {
  const auto m = static_cast<std::size_t>(a.num_states());
  std::vector<char> reach(m, 0);
  std::vector<StateId> stack{a.start()};
  reach[static_cast<std::size_t>(a.start())] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& t : a.out(s)) {
      if (!reach[static_cast<std::size_t>(t.to)]) {
        reach[static_cast<std::size_t>(t.to)] = 1;
        stack.push_back(t.to);
      }
    }
  }

  std::vector<std::vector<StateId>> preds(m);
  for (const auto& t : a.transitions()) preds[static_cast<std::size_t>(t.to)].push_back(t.from);
  std::vector<char> coreach(m, 0);
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (a.is_accepting(s)) {
      coreach[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[static_cast<std::size_t>(s)]) {
      if (!coreach[static_cast<std::size_t>(p)]) {
        coreach[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
  }

  // Start first so that it becomes state 0.
  std::vector<StateId> remap(m, -1);
  StateId next = 0;
  remap[static_cast<std::size_t>(a.start())] = next++;
  for (std::size_t s = 0; s < m; ++s) {
    if (remap[s] < 0 && reach[s] && coreach[s]) remap[s] = next++;
  }
  std::vector<StateId> accepting;
  for (std::size_t s = 0; s < m; ++s) {
    if (remap[s] >= 0 && a.is_accepting(static_cast<StateId>(s))) accepting.push_back(remap[s]);
  }
  std::vector<Transition> ts;
  for (const auto& t : a.transitions()) {
    auto f = static_cast<std::size_t>(t.from), to = static_cast<std::size_t>(t.to);
    if (remap[f] < 0 || remap[to] < 0) continue;
    if (!coreach[f] || !coreach[to]) continue;  // start may be dead
    ts.push_back({remap[f], t.symbol, remap[to]});
  }
  return Automaton(a.alphabet(), next, 0, std::move(accepting), std::move(ts));
}

Automaton product(const Automaton& a, const Automaton& b) {
  if (a.alphabet() != b.alphabet()) throw AutomatonError("product: alphabet mismatch");

  std::map<std::pair<StateId, StateId>, StateId> index;
  std::deque<std::pair<StateId, StateId>> queue;
  std::vector<Transition> ts;
  std::vector<StateId> accepting;

  auto intern = [&](StateId x, StateId y) {
    auto [it, inserted] = index.try_emplace({x, y}, static_cast<StateId>(index.size()));
    if (inserted) {
      queue.emplace_back(x, y);
      if (a.is_accepting(x) && b.is_accepting(y)) accepting.push_back(it->second);
    }
    return it->second;
  };
  intern(a.start(), b.start());
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    const StateId from = index.at({x, y});
    for (const auto& tx : a.out(x)) {
      for (const auto& ty : b.out(y)) {
        if (tx.symbol != ty.symbol) continue;
        ts.push_back({from, tx.symbol, intern(tx.to, ty.to)});
      }
    }
  }
  Automaton raw(a.alphabet(), static_cast<int>(index.size()), 0, std::move(accepting), std::move(ts));
  return trim(raw);
}

}  // namespace acbls
