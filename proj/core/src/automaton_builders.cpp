#include "acbls/automaton.hpp"

#include <set>

namespace acbls {
namespace {

void check_symbol(const Alphabet& alphabet, Symbol s, const char* what) {
  if (s >= alphabet.size()) throw AutomatonError(std::string(what) + ": symbol out of range");
}

}  // namespace

Automaton build_pattern(const Alphabet& alphabet, std::span<const SymbolPair> allowed) {
  const auto k = static_cast<StateId>(alphabet.size());
  std::set<SymbolPair> ok;
  for (auto p : allowed) {
    check_symbol(alphabet, p.first, "pattern");
    check_symbol(alphabet, p.second, "pattern");
    ok.insert(p);
  }
  // State 0 is the start; state 1 + a means "last value was a".
  std::vector<Transition> ts;
  std::vector<StateId> accepting;
  for (StateId a = 0; a < k; ++a) {
    ts.push_back({0, static_cast<Symbol>(a), 1 + a});
    accepting.push_back(1 + a);
    for (StateId b = 0; b < k; ++b) {
      if (a == b || ok.count({static_cast<Symbol>(a), static_cast<Symbol>(b)})) {
        ts.push_back({1 + a, static_cast<Symbol>(b), 1 + b});
      }
    }
  }
  return Automaton(alphabet, 1 + k, 0, std::move(accepting), std::move(ts));
}

Automaton build_stretch(const Alphabet& alphabet, std::span<const Symbol> values,
                        std::span<const int> min_len, std::span<const int> max_len,
                        RunBoundary boundary) {
  if (values.size() != min_len.size() || values.size() != max_len.size()) {
    throw AutomatonError("stretch: value and bound lists differ in length");
  }
  const std::size_t k = alphabet.size();
  std::vector<int> lo(k, 1), hi(k, kUnboundedRun);
  std::vector<bool> seen(k, false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    Symbol v = values[i];
    check_symbol(alphabet, v, "stretch");
    if (seen[v]) throw AutomatonError("stretch: value '" + alphabet.name(v) + "' listed twice");
    seen[v] = true;
    if (min_len[i] < 1 || min_len[i] > max_len[i]) {
      throw AutomatonError("stretch: bounds for '" + alphabet.name(v) + "' must satisfy 1 <= min <= max");
    }
    lo[v] = min_len[i];
    hi[v] = max_len[i];
  }

  // A run counter for value c saturates at cap(c): its maximum when bounded,
  // otherwise its minimum (beyond which length no longer matters).
  std::vector<int> cap(k);
  for (std::size_t c = 0; c < k; ++c) cap[c] = hi[c] == kUnboundedRun ? lo[c] : hi[c];

  const bool relaxed = boundary == RunBoundary::relaxed;
  const int copies = relaxed ? 2 : 1;  // copy 1 marks "still inside the first run"
  std::vector<StateId> base(k);
  StateId next = 1;
  for (std::size_t c = 0; c < k; ++c) {
    base[c] = next;
    next += cap[c] * copies;
  }
  auto state = [&](std::size_t c, int len, int copy) {
    return base[c] + copy * cap[c] + (len - 1);
  };

  std::vector<Transition> ts;
  std::vector<StateId> accepting;
  for (std::size_t c = 0; c < k; ++c) {
    const int first_copy = relaxed ? 1 : 0;
    ts.push_back({0, static_cast<Symbol>(c), state(c, 1, first_copy)});
    for (int copy = 0; copy < copies; ++copy) {
      const bool first_run = relaxed && copy == 1;
      for (int len = 1; len <= cap[c]; ++len) {
        const StateId from = state(c, len, copy);
        if (relaxed || len >= lo[c]) accepting.push_back(from);
        if (len < cap[c]) {
          ts.push_back({from, static_cast<Symbol>(c), state(c, len + 1, copy)});
        } else if (hi[c] == kUnboundedRun) {
          ts.push_back({from, static_cast<Symbol>(c), from});
        }
        if (first_run || len >= lo[c]) {
          for (std::size_t d = 0; d < k; ++d) {
            if (d != c) ts.push_back({from, static_cast<Symbol>(d), state(d, 1, 0)});
          }
        }
      }
    }
  }
  return Automaton(alphabet, next, 0, std::move(accepting), std::move(ts));
}

Automaton build_offblock_pattern(const Alphabet& alphabet, Symbol off,
                                 std::span<const SymbolPair> allowed) {
  check_symbol(alphabet, off, "offblock");
  const auto k = static_cast<StateId>(alphabet.size());
  std::set<SymbolPair> ok;
  for (auto p : allowed) {
    check_symbol(alphabet, p.first, "offblock");
    check_symbol(alphabet, p.second, "offblock");
    ok.insert(p);
  }
  // 0: start, 1: leading off-block, 2+s: working s, 2+k+s: off after working s.
  auto work = [&](StateId s) { return 2 + s; };
  auto rest = [&](StateId s) { return 2 + k + s; };
  const auto x = static_cast<StateId>(off);
  std::vector<Transition> ts;
  ts.push_back({0, off, 1});
  ts.push_back({1, off, 1});
  for (StateId s = 0; s < k; ++s) {
    if (s == x) continue;
    ts.push_back({0, static_cast<Symbol>(s), work(s)});
    ts.push_back({1, static_cast<Symbol>(s), work(s)});
    ts.push_back({work(s), off, rest(s)});
    ts.push_back({rest(s), off, rest(s)});
    for (StateId t = 0; t < k; ++t) {
      if (t == x) continue;
      ts.push_back({work(s), static_cast<Symbol>(t), work(t)});
      if (ok.count({static_cast<Symbol>(s), static_cast<Symbol>(t)})) {
        ts.push_back({rest(s), static_cast<Symbol>(t), work(t)});
      }
    }
  }
  std::vector<StateId> accepting;
  for (StateId s = 0; s < 2 + 2 * k; ++s) accepting.push_back(s);
  return trim(Automaton(alphabet, 2 + 2 * k, 0, std::move(accepting), std::move(ts)));
}

}  // namespace acbls
