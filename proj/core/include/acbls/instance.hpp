#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acbls/automaton.hpp"

namespace acbls {

inline constexpr int kDaysPerWeek = 7;
inline constexpr std::array<std::string_view, kDaysPerWeek> kWeekdays = {"mon", "tue", "wed", "thu",
                                                                         "fri", "sat", "sun"};

enum class ViolationMode { segment, hamming };
enum class InitMode { random, tiled };

std::string_view to_string(ViolationMode mode);
std::string_view to_string(InitMode mode);
ViolationMode parse_violation_mode(std::string_view text);
InitMode parse_init_mode(std::string_view text);

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rostering rule: either a builder description (kept so that solutions
/// can be checked directly, independently of any automaton) or an explicit
/// automaton. A product is the conjunction of its children.
struct Rule {
  enum class Kind { pattern, stretch, offblock, product, automaton };

  Kind kind = Kind::automaton;
  std::vector<SymbolPair> pairs;  // pattern: allowed changes; offblock: allowed (before, after)
  Symbol off = 0;                 // offblock
  std::vector<Symbol> values;     // stretch
  std::vector<int> min_len;
  std::vector<int> max_len;
  std::vector<Rule> children;  // product
  std::shared_ptr<const Automaton> automaton;

  static Rule pattern(std::vector<SymbolPair> allowed);
  static Rule stretch(std::vector<Symbol> values, std::vector<int> min_len, std::vector<int> max_len);
  static Rule offblock(Symbol off, std::vector<SymbolPair> allowed);
  static Rule product(std::vector<Rule> children);
  static Rule explicit_automaton(Automaton a);

  /// Largest finite stretch maximum in the tree, 0 if none.
  int longest_bounded_run() const;
};

/// Compiles a rule. With `cyclic_window`, stretch rules exempt the first and
/// last runs from their minimum, as those are fragments of runs that wrap.
Automaton compile_rule(const Rule& rule, const Alphabet& alphabet, bool cyclic_window);

struct RuleViolation {
  std::string rule;
  int position = 0;  // index in the checked sequence
  std::string detail;
};

/// Checks the rule directly on `seq`, read cyclically or linearly. Explicit
/// automata are checked by acceptance (linear only).
std::optional<RuleViolation> find_rule_violation(const Rule& rule, const Alphabet& alphabet,
                                                 std::span<const Symbol> seq, bool cyclic);

struct View {
  enum class Kind { rows, column, indices };

  Kind kind = Kind::rows;
  bool circular = false;
  int day = 0;               // column
  std::vector<int> indices;  // indices

  std::string describe() const;
};

struct PostedConstraint {
  std::string name;
  Rule rule;
  View view;
  ViolationMode mode = ViolationMode::segment;
};

/// A rotating schedule: `teams` rows of one week each, flattened row-wise.
struct Instance {
  std::string name;
  Alphabet alphabet;
  int teams = 0;
  int weeks = 0;
  /// workload[day][symbol]: required count of `symbol` in that day's column.
  std::array<std::vector<int>, kDaysPerWeek> workload;
  std::vector<PostedConstraint> constraints;
  /// Positions appended to circular views as aliases of their first positions.
  int overlap = 0;
  std::optional<int> rotating_scale;
  std::string note;

  int num_vars() const { return teams * kDaysPerWeek; }
  /// Variable indices of a view, overlap aliases included.
  std::vector<int> expand(const View& view) const;
  /// Length of the view without overlap aliases.
  int base_length(const View& view) const;
  /// Throws InstanceError when inconsistent.
  void validate() const;
};

/// Rotating-roster instance (2i d, 1i e, 1i n, 2i x) with 6i teams: product
/// of pattern and stretch on the circular row-flattened schedule.
Instance build_rotating_instance(int scale);
Rule rotating_rule(const Alphabet& alphabet);

Instance parse_instance(std::string_view json_text, const std::filesystem::path& base_dir = {});
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const Instance& inst);

}  // namespace acbls
