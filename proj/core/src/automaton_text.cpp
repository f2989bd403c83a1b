#include "acbls/automaton.hpp"

#include <charconv>
#include <sstream>

namespace acbls {
namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, int line) {
  int value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  std::optional<Alphabet> alphabet;
  int num_states = 0;
  std::optional<StateId> start;
  std::vector<StateId> accepting;
  std::vector<Transition> ts;

  auto state = [&](std::string_view tok, int line) {
    if (num_states == 0) throw ParseError(line, "'states' must be declared before use");
    int id = parse_int(tok, line);
    if (id < 1 || id > num_states) {
      throw ParseError(line, "undeclared state " + std::string(tok));
    }
    return static_cast<StateId>(id - 1);
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;

    const auto key = words[0];
    if (key == "alphabet") {
      if (alphabet) throw ParseError(line_no, "duplicate 'alphabet'");
      if (words.size() < 2) throw ParseError(line_no, "empty alphabet");
      std::vector<std::string> names(words.begin() + 1, words.end());
      try {
        alphabet.emplace(std::move(names));
      } catch (const AutomatonError& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (key == "states") {
      if (words.size() != 2) throw ParseError(line_no, "usage: states <count>");
      if (num_states != 0) throw ParseError(line_no, "duplicate 'states'");
      num_states = parse_int(words[1], line_no);
      if (num_states < 1) throw ParseError(line_no, "state count must be positive");
    } else if (key == "start") {
      if (words.size() != 2) throw ParseError(line_no, "usage: start <state>");
      start = state(words[1], line_no);
    } else if (key == "accept") {
      for (std::size_t i = 1; i < words.size(); ++i) accepting.push_back(state(words[i], line_no));
    } else if (key == "trans") {
      if (words.size() != 4) throw ParseError(line_no, "usage: trans <from> <symbol> <to>");
      if (!alphabet) throw ParseError(line_no, "'alphabet' must be declared before transitions");
      auto sym = alphabet->find(words[2]);
      if (!sym) throw ParseError(line_no, "undeclared symbol '" + std::string(words[2]) + "'");
      ts.push_back({state(words[1], line_no), *sym, state(words[3], line_no)});
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(key) + "'");
    }
  }
  if (!alphabet) throw ParseError(line_no, "missing 'alphabet'");
  if (num_states == 0) throw ParseError(line_no, "missing 'states'");
  if (!start) throw ParseError(line_no, "missing 'start'");
  return Automaton(std::move(*alphabet), num_states, *start, std::move(accepting), std::move(ts));
}

std::string serialize(const Automaton& a) {
  std::ostringstream out;
  out << "alphabet";
  for (const auto& n : a.alphabet().names()) out << ' ' << n;
  out << "\nstates " << a.num_states() << "\nstart " << a.start() + 1 << "\naccept";
  for (StateId s : a.accepting_states()) out << ' ' << s + 1;
  out << '\n';
  for (const auto& t : a.transitions()) {
    out << "trans " << t.from + 1 << ' ' << a.alphabet().name(t.symbol) << ' ' << t.to + 1 << '\n';
  }
  return out.str();
}

}  // namespace acbls
