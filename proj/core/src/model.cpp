#include "acbls/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "acbls/rng.hpp"

namespace acbls {

Model::Model(Instance instance, std::optional<ViolationMode> mode_override, Witness witness)
    : instance_(std::move(instance)), witness_(witness) {
  instance_.validate();
  occurrences_.resize(static_cast<std::size_t>(num_vars()));
  for (const auto& posted : instance_.constraints) {
    Constraint c;
    c.name = posted.name;
    c.source = &posted;
    c.circular = posted.view.circular;
    c.mode = mode_override.value_or(posted.mode);
    c.view = instance_.expand(posted.view);
    c.base_length = instance_.base_length(posted.view);
    c.automaton = std::make_shared<const Automaton>(compile_rule(posted.rule, instance_.alphabet, c.circular));
    c.graph = std::make_shared<const LayeredGraph>(*c.automaton, static_cast<int>(c.view.size()));
    const int index = static_cast<int>(constraints_.size());
    for (std::size_t p = 0; p < c.view.size(); ++p) {
      occurrences_[static_cast<std::size_t>(c.view[p])].push_back({index, static_cast<int>(p)});
    }
    constraints_.push_back(std::move(c));
  }
}

ModelState::ModelState(const Model& model, std::vector<Symbol> assignment, std::uint64_t seed)
    : model_(&model) {
  reset(std::move(assignment), seed);
}

void ModelState::reset(std::vector<Symbol> assignment, std::uint64_t seed) {
  if (static_cast<int>(assignment.size()) != model_->num_vars()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " cells, expected " +
                                std::to_string(model_->num_vars()));
  }
  for (Symbol s : assignment) {
    if (s >= model_->alphabet().size()) throw std::invalid_argument("assignment symbol out of range");
  }
  values_ = std::move(assignment);
  rebuild(seed);
  ++version_;
}

void ModelState::rebuild(std::uint64_t seed) {
  states_.clear();
  const auto constraints = model_->constraints();
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const auto& con = constraints[c];
    std::vector<Symbol> word;
    word.reserve(con.view.size());
    for (int v : con.view) word.push_back(values_[static_cast<std::size_t>(v)]);
    if (con.mode == ViolationMode::segment) {
      states_.emplace_back(std::in_place_type<SegmentationState>, con.graph, std::move(word), derive_seed(seed, c));
    } else {
      states_.emplace_back(std::in_place_type<SoftRegularState>, con.graph, std::move(word), model_->witness(),
                           derive_seed(seed, c));
    }
  }
  var_violation_.assign(values_.size(), 0);
  total_ = 0;
  for (std::size_t c = 0; c < states_.size(); ++c) {
    add_contribution(static_cast<int>(c), 0, +1);
    total_ += constraint_violation(static_cast<int>(c));
  }
}

int ModelState::constraint_violation(int c) const {
  return std::visit([](const auto& st) { return st.violation(); }, states_[static_cast<std::size_t>(c)]);
}

void ModelState::add_contribution(int c, int from, int sign) {
  const auto& view = model_->constraints()[static_cast<std::size_t>(c)].view;
  std::visit(
      [&](const auto& st) {
        auto flags = st.violations();
        for (std::size_t p = static_cast<std::size_t>(from); p < view.size(); ++p) {
          var_violation_[static_cast<std::size_t>(view[p])] += sign * flags[p];
        }
      },
      states_[static_cast<std::size_t>(c)]);
}

SwapProbe ModelState::probe_swap(int x, int y, Draws mode) {
  const int n = model_->num_vars();
  if (x < 0 || y < 0 || x >= n || y >= n) throw std::invalid_argument("probe_swap: variable out of range");
  if (x == y || (x - y) % kDaysPerWeek != 0) {
    throw std::invalid_argument("probe_swap: variables must be distinct cells of one column");
  }
  const Symbol vx = values_[static_cast<std::size_t>(x)], vy = values_[static_cast<std::size_t>(y)];
  if (vx == vy) throw std::invalid_argument("probe_swap: variables hold the same value");

  // Usually one or two constraints; a flat list beats a map here.
  std::vector<std::pair<int, std::vector<Change>>> changes;
  auto add = [&](int var, Symbol value) {
    for (const auto& occ : model_->occurrences(var)) {
      auto it = std::find_if(changes.begin(), changes.end(), [&](const auto& e) { return e.first == occ.constraint; });
      if (it == changes.end()) {
        changes.emplace_back(occ.constraint, std::vector<Change>{});
        it = changes.end() - 1;
      }
      it->second.push_back({occ.position, value});
    }
  };
  add(x, vy);
  add(y, vx);

  SwapProbe probe;
  probe.x = x;
  probe.y = y;
  probe.version = version_;
  for (auto& [c, ch] : changes) {
    auto& state = states_[static_cast<std::size_t>(c)];
    ConstraintProbe rec = std::visit(
        [&](auto& st) -> ConstraintProbe {
          if constexpr (std::is_same_v<std::decay_t<decltype(st)>, SegmentationState>) {
            return st.probe(ch, mode);
          } else {
            return st.probe(ch);
          }
        },
        state);
    probe.delta += std::visit([](const auto& r) { return r.delta; }, rec);
    probe.records.emplace_back(c, std::move(rec));
  }
  return probe;
}

void ModelState::commit(const SwapProbe& probe) {
  if (probe.version != version_) throw StaleProbeError();
  std::swap(values_[static_cast<std::size_t>(probe.x)], values_[static_cast<std::size_t>(probe.y)]);
  for (const auto& [c, rec] : probe.records) {
    auto& state = states_[static_cast<std::size_t>(c)];
    // The hamming witness path may move anywhere, so its whole view is refreshed.
    const int from = std::holds_alternative<SegmentationProbe>(rec) ? std::get<SegmentationProbe>(rec).from : 0;
    add_contribution(c, from, -1);
    total_ -= constraint_violation(c);
    if (auto* seg = std::get_if<SegmentationState>(&state)) {
      seg->commit(std::get<SegmentationProbe>(rec));
    } else {
      std::get<SoftRegularState>(state).commit(std::get<HammingProbe>(rec));
    }
    add_contribution(c, from, +1);
    total_ += constraint_violation(c);
  }
  ++version_;
}

void ModelState::check_consistency() const {
  const Instance& inst = model_->instance();
  std::vector<int> vars(values_.size(), 0);
  int total = 0;
  const auto constraints = model_->constraints();
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const auto& view = constraints[c].view;
    std::visit(
        [&](const auto& st) {
          st.check_invariants();
          auto word = st.values();
          auto flags = st.violations();
          for (std::size_t p = 0; p < view.size(); ++p) {
            if (word[p] != values_[static_cast<std::size_t>(view[p])]) {
              throw std::logic_error("constraint '" + constraints[c].name + "' position " + std::to_string(p) +
                                     " disagrees with its variable");
            }
            vars[static_cast<std::size_t>(view[p])] += flags[p];
          }
          total += st.violation();
        },
        states_[c]);
  }
  if (total != total_) throw std::logic_error("total violation out of date");
  if (vars != var_violation_) throw std::logic_error("variable violations out of date");
  for (int d = 0; d < kDaysPerWeek; ++d) {
    std::vector<int> counts(inst.alphabet.size(), 0);
    for (int t = 0; t < inst.teams; ++t) ++counts[values_[static_cast<std::size_t>(t * kDaysPerWeek + d)]];
    if (counts != inst.workload[static_cast<std::size_t>(d)]) {
      throw std::logic_error("workload broken on " + std::string(kWeekdays[static_cast<std::size_t>(d)]));
    }
  }
}

std::uint64_t ModelState::visited_positions() const {
  std::uint64_t sum = 0;
  for (const auto& st : states_) {
    if (auto* seg = std::get_if<SegmentationState>(&st)) sum += seg->visited_positions();
  }
  return sum;
}

std::uint64_t ModelState::relaxed_arcs() const {
  std::uint64_t sum = 0;
  for (const auto& st : states_) {
    if (auto* soft = std::get_if<SoftRegularState>(&st)) sum += soft->relaxed_arcs();
  }
  return sum;
}

// ---------------------------------------------------------------------------

std::vector<Symbol> initial_random(const Instance& inst, std::uint64_t seed) {
  std::vector<Symbol> out(static_cast<std::size_t>(inst.num_vars()));
  SplitMix64 gen(seed);
  for (int d = 0; d < kDaysPerWeek; ++d) {
    std::vector<Symbol> column;
    const auto& counts = inst.workload[static_cast<std::size_t>(d)];
    for (std::size_t s = 0; s < counts.size(); ++s) column.insert(column.end(), static_cast<std::size_t>(counts[s]), static_cast<Symbol>(s));
    std::shuffle(column.begin(), column.end(), gen);
    for (int t = 0; t < inst.teams; ++t) out[static_cast<std::size_t>(t * kDaysPerWeek + d)] = column[static_cast<std::size_t>(t)];
  }
  return out;
}

std::vector<Symbol> initial_tiled(const Instance& inst) {
  if (!inst.rotating_scale) throw std::invalid_argument("tiled initialisation needs a rotating-family instance");
  const Alphabet& al = inst.alphabet;
  const Symbol block[6] = {al.at("d"), al.at("e"), al.at("n"), al.at("x"), al.at("d"), al.at("x")};
  if (inst.teams != 6 * *inst.rotating_scale) throw std::invalid_argument("rotating instance has unexpected team count");
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(inst.num_vars()));
  for (int t = 0; t < inst.teams; ++t) out.insert(out.end(), kDaysPerWeek, block[t % 6]);
  return out;
}

std::vector<Symbol> initial_assignment(const Instance& inst, InitMode mode, std::uint64_t seed) {
  return mode == InitMode::tiled ? initial_tiled(inst) : initial_random(inst, seed);
}

std::vector<SolutionProblem> validate_solution(const Model& model, std::span<const Symbol> assignment) {
  const Instance& inst = model.instance();
  if (static_cast<int>(assignment.size()) != inst.num_vars()) {
    throw std::invalid_argument("assignment size does not match the instance");
  }
  std::vector<SolutionProblem> problems;
  auto where = [&](int var) {
    return "row " + std::to_string(var / kDaysPerWeek + 1) + " " +
           std::string(kWeekdays[static_cast<std::size_t>(var % kDaysPerWeek)]);
  };

  for (const auto& c : model.constraints()) {
    std::vector<Symbol> word;
    for (int v : c.view) word.push_back(assignment[static_cast<std::size_t>(v)]);
    std::span<const Symbol> base(word.data(), static_cast<std::size_t>(c.base_length));
    if (auto v = find_rule_violation(c.source->rule, inst.alphabet, base, c.circular)) {
      problems.push_back({v->rule, c.name, v->rule + " (" + c.name + "): " + v->detail + " at " +
                                               where(c.view[static_cast<std::size_t>(v->position)])});
    }
    if (!accepts(*c.automaton, word)) {
      problems.push_back({"automaton", c.name, "automaton (" + c.name + "): " + c.source->view.describe() + " word rejected"});
    }
  }
  for (int d = 0; d < kDaysPerWeek; ++d) {
    std::vector<int> counts(inst.alphabet.size(), 0);
    for (int t = 0; t < inst.teams; ++t) ++counts[assignment[static_cast<std::size_t>(t * kDaysPerWeek + d)]];
    const auto& want = inst.workload[static_cast<std::size_t>(d)];
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (counts[s] != want[s]) {
        problems.push_back({"workload", "", "workload: " + std::string(kWeekdays[static_cast<std::size_t>(d)]) + " has " +
                                                std::to_string(counts[s]) + " x " + inst.alphabet.name(static_cast<Symbol>(s)) +
                                                ", expected " + std::to_string(want[s])});
      }
    }
  }
  return problems;
}

bool check_solution(const Model& model, std::span<const Symbol> assignment) {
  return validate_solution(model, assignment).empty();
}

}  // namespace acbls
