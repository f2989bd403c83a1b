#pragma once
// Brute-force reference implementations. Deliberately naive and independent
// of the library code paths they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "acbls/automaton.hpp"

namespace oracle {

using acbls::Symbol;
using acbls::Word;

inline void for_each_word(int k, int n, const std::function<void(const Word&)>& fn) {
  Word w(static_cast<std::size_t>(n), 0);
  while (true) {
    fn(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == k - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

// NFA acceptance straight from the transition list.
inline bool accepts(const acbls::Automaton& a, const Word& w) {
  std::set<acbls::StateId> cur{a.start()};
  for (Symbol s : w) {
    std::set<acbls::StateId> next;
    for (const auto& t : a.transitions()) {
      if (t.symbol == s && cur.count(t.from)) next.insert(t.to);
    }
    cur.swap(next);
  }
  return std::any_of(cur.begin(), cur.end(), [&](acbls::StateId q) { return a.is_accepting(q); });
}

inline std::uint64_t count_accepted(const acbls::Automaton& a, int n) {
  std::uint64_t c = 0;
  for_each_word(static_cast<int>(a.alphabet().size()), n, [&](const Word& w) { c += accepts(a, w); });
  return c;
}

// Accepting runs (state sequences) of length n; equals count_accepted for DFAs.
inline std::uint64_t count_accepting_runs(const acbls::Automaton& a, int n) {
  std::vector<std::uint64_t> cur(static_cast<std::size_t>(a.num_states()), 0);
  cur[static_cast<std::size_t>(a.start())] = 1;
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next(cur.size(), 0);
    for (const auto& t : a.transitions()) next[static_cast<std::size_t>(t.to)] += cur[static_cast<std::size_t>(t.from)];
    cur.swap(next);
  }
  std::uint64_t c = 0;
  for (acbls::StateId q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) c += cur[static_cast<std::size_t>(q)];
  }
  return c;
}

inline int hamming(const Word& a, const Word& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// -1 when no word of that length is accepted.
inline int min_hamming(const acbls::Automaton& a, const Word& w) {
  int best = -1;
  for_each_word(static_cast<int>(a.alphabet().size()), static_cast<int>(w.size()), [&](const Word& u) {
    if (!accepts(a, u)) return;
    const int d = hamming(u, w);
    if (best < 0 || d < best) best = d;
  });
  return best;
}

using Pairs = std::set<std::pair<Symbol, Symbol>>;

// Linear predicates. Runs are maximal blocks of equal values.
inline std::vector<std::pair<Symbol, int>> runs(const Word& w) {
  std::vector<std::pair<Symbol, int>> r;
  for (Symbol s : w) {
    if (!r.empty() && r.back().first == s) {
      ++r.back().second;
    } else {
      r.push_back({s, 1});
    }
  }
  return r;
}

inline bool pattern_ok(const Word& w, const Pairs& allowed) {
  if (w.empty()) return false;  // the pattern automaton's start state does not accept
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] != w[i - 1] && !allowed.count({w[i - 1], w[i]})) return false;
  }
  return true;
}

// lo/hi indexed by symbol; symbols absent from `values` are unconstrained.
inline bool stretch_ok(const Word& w, const std::vector<Symbol>& values, const std::vector<int>& lo,
                       const std::vector<int>& hi) {
  if (w.empty()) return false;
  for (auto [s, len] : runs(w)) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] == s && (len < lo[k] || len > hi[k])) return false;
    }
  }
  return true;
}

inline bool offblock_ok(const Word& w, Symbol off, const Pairs& allowed) {
  const auto r = runs(w);
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    if (r[k].first == off && !allowed.count({r[k - 1].first, r[k + 1].first})) return false;
  }
  return true;
}

// Cyclic predicates: the word is read around the wrap.
inline Word rotate_to_run_start(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != w[(i + w.size() - 1) % w.size()]) {
      Word r(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
      r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      return r;
    }
  }
  return w;  // constant word: one run all the way round
}

inline bool cyclic_pattern_ok(const Word& w, const Pairs& allowed) {
  Word c = w;
  c.push_back(w.front());
  return pattern_ok(c, allowed);
}

inline bool cyclic_stretch_ok(const Word& w, const std::vector<Symbol>& values, const std::vector<int>& lo,
                              const std::vector<int>& hi) {
  return stretch_ok(rotate_to_run_start(w), values, lo, hi);
}

inline bool cyclic_offblock_ok(const Word& w, Symbol off, const Pairs& allowed) {
  const Word r = rotate_to_run_start(w);
  auto rs = runs(r);
  if (rs.size() < 2) return true;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (rs[k].first != off) continue;
    const Symbol before = rs[(k + rs.size() - 1) % rs.size()].first;
    const Symbol after = rs[(k + 1) % rs.size()].first;
    if (!allowed.count({before, after})) return false;
  }
  return true;
}

// Random automaton over k symbols with up to max_states states.
inline acbls::Automaton random_automaton(std::mt19937_64& rng, int k, int max_states, bool deterministic,
                                         double density = 0.5) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::uniform_int_distribution<int> nstates(1, max_states);
  const int m = nstates(rng);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::vector<acbls::Transition> ts;
  for (int q = 0; q < m; ++q) {
    for (int s = 0; s < k; ++s) {
      if (deterministic) {
        if (u(rng) < density + 0.3) ts.push_back({q, static_cast<Symbol>(s), pick(rng)});
      } else {
        for (int t = 0; t < m; ++t) {
          if (u(rng) < density / m * 2) ts.push_back({q, static_cast<Symbol>(s), t});
        }
      }
    }
  }
  std::vector<acbls::StateId> acc;
  for (int q = 0; q < m; ++q) {
    if (u(rng) < 0.5) acc.push_back(q);
  }
  if (acc.empty()) acc.push_back(pick(rng));
  return acbls::Automaton(acbls::Alphabet(names), m, 0, acc, ts);
}

inline Word random_word(std::mt19937_64& rng, int k, int n) {
  std::uniform_int_distribution<int> d(0, k - 1);
  Word w(static_cast<std::size_t>(n));
  for (auto& s : w) s = static_cast<Symbol>(d(rng));
  return w;
}

}  // namespace oracle
