#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace acbls {

/// Dense index into an Alphabet.
using Symbol = std::uint8_t;
/// 0-based automaton state index.
using StateId = std::int32_t;
using Word = std::vector<Symbol>;

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public AutomatonError {
 public:
  ParseError(int line, const std::string& what)
      : AutomatonError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Finite set of named values; ids are dense 0..size()-1.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Symbol> find(std::string_view name) const;
  /// Like find() but throws AutomatonError on unknown names.
  Symbol at(std::string_view name) const;

  Word word(std::span<const std::string> names) const;
  std::string spell(std::span<const Symbol> word, std::string_view sep = ",") const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

struct Transition {
  StateId from;
  Symbol symbol;
  StateId to;

  auto operator<=>(const Transition&) const = default;
};

/// Finite automaton without an explicit failure state: missing transitions
/// reject. Immutable once built. May be nondeterministic.
class Automaton {
 public:
  Automaton(Alphabet alphabet, int num_states, StateId start,
            std::vector<StateId> accepting, std::vector<Transition> transitions);

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return num_states_; }
  StateId start() const { return start_; }
  bool is_accepting(StateId s) const { return accepting_[static_cast<std::size_t>(s)]; }
  std::vector<StateId> accepting_states() const;

  /// All transitions, sorted by (from, symbol, to) and deduplicated.
  std::span<const Transition> transitions() const { return transitions_; }
  std::span<const Transition> out(StateId s) const;
  bool deterministic() const { return deterministic_; }

 private:
  Alphabet alphabet_;
  int num_states_;
  StateId start_;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> out_begin_;
  bool deterministic_ = true;
};

/// NFA semantics: true iff some run over `word` ends in an accepting state.
bool accepts(const Automaton& a, std::span<const Symbol> word);

/// Single-state automaton accepting every word, including the empty one.
Automaton universal(const Alphabet& alphabet);

/// Removes states that are unreachable from start or cannot reach an
/// accepting state. The start state is always kept (as state 0).
Automaton trim(const Automaton& a);

/// Synchronous product accepting the intersection of both languages, trimmed.
Automaton product(const Automaton& a, const Automaton& b);

// Builders for rostering rules.

using SymbolPair = std::pair<Symbol, Symbol>;

/// Adjacent distinct values (a, b) must appear in `allowed`; equal adjacent
/// values are always fine. Rejects the empty word.
Automaton build_pattern(const Alphabet& alphabet, std::span<const SymbolPair> allowed);

inline constexpr int kUnboundedRun = 1 << 30;

enum class RunBoundary {
  /// Every maximal run must satisfy its minimum.
  strict,
  /// The first and the last run of the word are exempt from the minimum
  /// (maxima still apply). Used for windows over cyclic sequences, where the
  /// boundary runs are fragments of runs checked elsewhere in the window.
  relaxed,
};

/// Every maximal run of values[k] has length in [min_len[k], max_len[k]].
/// Values not listed are unconstrained. Use kUnboundedRun for no maximum.
Automaton build_stretch(const Alphabet& alphabet, std::span<const Symbol> values,
                        std::span<const int> min_len, std::span<const int> max_len,
                        RunBoundary boundary = RunBoundary::strict);

/// Every maximal block of `off` preceded by work value s and followed by work
/// value t must have (s, t) in `allowed`. Blocks at either end of the word are
/// unconstrained.
Automaton build_offblock_pattern(const Alphabet& alphabet, Symbol off,
                                 std::span<const SymbolPair> allowed);

/// Line-based text format; state ids are 1-based in text:
///   alphabet d e x / states 6 / start 1 / accept 5 6 / trans 1 d 2
Automaton parse_automaton(std::string_view text);
std::string serialize(const Automaton& a);

}  // namespace acbls
