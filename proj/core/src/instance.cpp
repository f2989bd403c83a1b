#include "acbls/instance.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace acbls {

using nlohmann::json;

std::string_view to_string(ViolationMode mode) {
  return mode == ViolationMode::segment ? "segment" : "hamming";
}

std::string_view to_string(InitMode mode) { return mode == InitMode::random ? "random" : "tiled"; }

ViolationMode parse_violation_mode(std::string_view text) {
  if (text == "segment") return ViolationMode::segment;
  if (text == "hamming") return ViolationMode::hamming;
  throw InstanceError("unknown violation mode '" + std::string(text) + "'");
}

InitMode parse_init_mode(std::string_view text) {
  if (text == "random") return InitMode::random;
  if (text == "tiled") return InitMode::tiled;
  throw InstanceError("unknown init mode '" + std::string(text) + "'");
}

std::string View::describe() const {
  switch (kind) {
    case Kind::rows:
      return circular ? "rows-circular" : "rows";
    case Kind::column:
      return std::string(circular ? "column-circular:" : "column:") + std::string(kWeekdays[static_cast<std::size_t>(day)]);
    case Kind::indices:
      return "indices[" + std::to_string(indices.size()) + "]";
  }
  return "?";
}

int Instance::base_length(const View& view) const {
  switch (view.kind) {
    case View::Kind::rows:
      return num_vars();
    case View::Kind::column:
      return teams;
    case View::Kind::indices:
      return static_cast<int>(view.indices.size());
  }
  return 0;
}

std::vector<int> Instance::expand(const View& view) const {
  std::vector<int> out;
  switch (view.kind) {
    case View::Kind::rows:
      out.resize(static_cast<std::size_t>(num_vars()));
      std::iota(out.begin(), out.end(), 0);
      break;
    case View::Kind::column:
      for (int t = 0; t < teams; ++t) out.push_back(t * kDaysPerWeek + view.day);
      break;
    case View::Kind::indices:
      out = view.indices;
      break;
  }
  if (view.circular) {
    const int k = std::min(overlap, static_cast<int>(out.size()));
    for (int i = 0; i < k; ++i) out.push_back(out[static_cast<std::size_t>(i)]);
  }
  return out;
}

void Instance::validate() const {
  if (alphabet.size() == 0) throw InstanceError("empty alphabet");
  if (teams < 1) throw InstanceError("teams must be positive");
  if (weeks != teams) throw InstanceError("weeks must equal teams for a rotating schedule");
  if (overlap < 0) throw InstanceError("overlap must be nonnegative");
  for (int d = 0; d < kDaysPerWeek; ++d) {
    const auto& counts = workload[static_cast<std::size_t>(d)];
    if (counts.size() != alphabet.size()) throw InstanceError("workload for " + std::string(kWeekdays[static_cast<std::size_t>(d)]) + " has wrong size");
    int sum = 0;
    for (int c : counts) {
      if (c < 0) throw InstanceError("negative workload count");
      sum += c;
    }
    if (sum != teams) {
      throw InstanceError("workload for " + std::string(kWeekdays[static_cast<std::size_t>(d)]) + " sums to " +
                          std::to_string(sum) + ", expected " + std::to_string(teams));
    }
  }
  for (const auto& c : constraints) {
    if (c.view.kind == View::Kind::column && (c.view.day < 0 || c.view.day >= kDaysPerWeek)) {
      throw InstanceError("constraint '" + c.name + "': bad weekday");
    }
    for (int i : c.view.indices) {
      if (i < 0 || i >= num_vars()) throw InstanceError("constraint '" + c.name + "': index out of range");
    }
    if (base_length(c.view) < 1) throw InstanceError("constraint '" + c.name + "': empty view");
  }
}

Rule rotating_rule(const Alphabet& al) {
  const Symbol d = al.at("d"), e = al.at("e"), n = al.at("n"), x = al.at("x");
  Rule pattern = Rule::pattern({{d, x}, {e, x}, {n, x}, {x, d}, {x, e}, {x, n}});
  Rule stretch = Rule::stretch({d, e, n, x}, {2, 2, 2, 2}, {7, 7, 7, 7});
  return Rule::product({std::move(pattern), std::move(stretch)});
}

Instance build_rotating_instance(int scale) {
  if (scale < 1) throw InstanceError("rotating scale must be at least 1");
  Instance inst;
  inst.name = "rotating-" + std::to_string(scale);
  inst.alphabet = Alphabet({"d", "e", "n", "x"});
  inst.teams = 6 * scale;
  inst.weeks = 6 * scale;
  for (auto& day : inst.workload) day = {2 * scale, scale, scale, 2 * scale};
  PostedConstraint c;
  c.name = "pattern*stretch";
  c.rule = rotating_rule(inst.alphabet);
  c.view.kind = View::Kind::rows;
  c.view.circular = true;
  inst.constraints.push_back(std::move(c));
  inst.overlap = 7;
  inst.rotating_scale = scale;
  return inst;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Symbol symbol_of(const Alphabet& al, const json& j) {
  if (!j.is_string()) throw InstanceError("expected a symbol name, got " + j.dump());
  auto s = al.find(j.get<std::string>());
  if (!s) throw InstanceError("unknown symbol '" + j.get<std::string>() + "'");
  return *s;
}

std::vector<SymbolPair> pairs_of(const Alphabet& al, const json& j) {
  if (!j.is_array()) throw InstanceError("expected a list of symbol pairs");
  std::vector<SymbolPair> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw InstanceError("expected a symbol pair, got " + p.dump());
    out.emplace_back(symbol_of(al, p[0]), symbol_of(al, p[1]));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rule rule_of(const Alphabet& al, const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    const std::filesystem::path p = base_dir / j.get<std::string>();
    return Rule::explicit_automaton(parse_automaton(read_file(p)));
  }
  if (!j.is_object() || j.size() != 1) {
    throw InstanceError("automaton must be a file name or a single-key object, got " + j.dump());
  }
  const auto& [key, body] = *j.items().begin();
  if (key == "text") return Rule::explicit_automaton(parse_automaton(body.get<std::string>()));
  if (key == "file") return rule_of(al, body, base_dir);
  if (key == "pattern") return Rule::pattern(pairs_of(al, body));
  if (key == "stretch") {
    std::vector<Symbol> values;
    for (const auto& v : body.at("values")) values.push_back(symbol_of(al, v));
    std::vector<int> lo = body.at("min").get<std::vector<int>>();
    std::vector<int> hi;
    for (const auto& h : body.at("max")) hi.push_back(h.is_null() ? kUnboundedRun : h.get<int>());
    return Rule::stretch(std::move(values), std::move(lo), std::move(hi));
  }
  if (key == "offblock") {
    return Rule::offblock(symbol_of(al, body.at("off")), pairs_of(al, body.at("allowed")));
  }
  if (key == "product") {
    std::vector<Rule> children;
    for (const auto& c : body) children.push_back(rule_of(al, c, base_dir));
    return Rule::product(std::move(children));
  }
  throw InstanceError("unknown automaton kind '" + key + "'");
}

int weekday_of(std::string_view name) {
  for (int d = 0; d < kDaysPerWeek; ++d) {
    if (kWeekdays[static_cast<std::size_t>(d)] == name) return d;
  }
  throw InstanceError("unknown weekday '" + std::string(name) + "'");
}

View view_of(const json& j) {
  View v;
  if (j.is_array()) {
    v.kind = View::Kind::indices;
    v.indices = j.get<std::vector<int>>();
    return v;
  }
  const std::string s = j.get<std::string>();
  if (s == "rows" || s == "rows-circular") {
    v.kind = View::Kind::rows;
    v.circular = s == "rows-circular";
    return v;
  }
  for (std::string_view prefix : {"column:", "column-circular:"}) {
    if (s.rfind(prefix, 0) == 0) {
      v.kind = View::Kind::column;
      v.circular = prefix == "column-circular:";
      v.day = weekday_of(std::string_view(s).substr(prefix.size()));
      return v;
    }
  }
  throw InstanceError("unknown view '" + s + "'");
}

std::vector<int> counts_of(const Alphabet& al, const json& j) {
  std::vector<int> counts(al.size(), 0);
  for (const auto& [name, count] : j.items()) counts[symbol_of(al, json(name))] = count.get<int>();
  return counts;
}

json rule_to_json(const Alphabet& al, const Rule& r) {
  auto pairs = [&](const std::vector<SymbolPair>& ps) {
    json arr = json::array();
    for (auto [a, b] : ps) arr.push_back({al.name(a), al.name(b)});
    return arr;
  };
  switch (r.kind) {
    case Rule::Kind::pattern:
      return {{"pattern", pairs(r.pairs)}};
    case Rule::Kind::stretch: {
      json values = json::array(), hi = json::array();
      for (Symbol v : r.values) values.push_back(al.name(v));
      for (int h : r.max_len) hi.push_back(h == kUnboundedRun ? json(nullptr) : json(h));
      return {{"stretch", {{"values", values}, {"min", r.min_len}, {"max", hi}}}};
    }
    case Rule::Kind::offblock:
      return {{"offblock", {{"off", al.name(r.off)}, {"allowed", pairs(r.pairs)}}}};
    case Rule::Kind::product: {
      json arr = json::array();
      for (const auto& c : r.children) arr.push_back(rule_to_json(al, c));
      return {{"product", arr}};
    }
    case Rule::Kind::automaton:
      return {{"text", serialize(*r.automaton)}};
  }
  return nullptr;
}

}  // namespace

Instance parse_instance(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  try {
    Instance inst;
    inst.name = j.value("name", std::string("instance"));
    inst.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>());
    inst.teams = j.at("teams").get<int>();
    inst.weeks = j.value("weeks", inst.teams);
    inst.note = j.value("note", std::string());

    const json& wl = j.at("workload");
    if (wl.is_array()) {
      if (wl.size() != kDaysPerWeek) throw InstanceError("workload list must have 7 entries");
      for (int d = 0; d < kDaysPerWeek; ++d) inst.workload[static_cast<std::size_t>(d)] = counts_of(inst.alphabet, wl[static_cast<std::size_t>(d)]);
    } else if (wl.is_object() && wl.contains("mon")) {
      for (int d = 0; d < kDaysPerWeek; ++d) {
        inst.workload[static_cast<std::size_t>(d)] = counts_of(inst.alphabet, wl.at(std::string(kWeekdays[static_cast<std::size_t>(d)])));
      }
    } else {
      auto counts = counts_of(inst.alphabet, wl);
      for (auto& day : inst.workload) day = counts;
    }

    int longest = 0;
    for (const auto& jc : j.at("constraints")) {
      PostedConstraint c;
      c.rule = rule_of(inst.alphabet, jc.at("automaton"), base_dir);
      c.view = view_of(jc.value("view", json("rows-circular")));
      c.mode = parse_violation_mode(jc.value("mode", std::string("segment")));
      c.name = jc.value("name", "c" + std::to_string(inst.constraints.size() + 1));
      if (c.view.circular) longest = std::max(longest, c.rule.longest_bounded_run());
      inst.constraints.push_back(std::move(c));
    }
    inst.overlap = j.value("overlap", longest);
    if (j.contains("family")) {
      const json& fam = j.at("family");
      if (fam.at("name").get<std::string>() == "rotating") inst.rotating_scale = fam.at("scale").get<int>();
    }
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw InstanceError(std::string("invalid instance: ") + e.what());
  } catch (const AutomatonError& e) {
    throw InstanceError(std::string("invalid instance: ") + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path), path.parent_path());
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  j["alphabet"] = inst.alphabet.names();
  j["teams"] = inst.teams;
  j["weeks"] = inst.weeks;
  json wl = json::object();
  for (int d = 0; d < kDaysPerWeek; ++d) {
    json day = json::object();
    for (std::size_t s = 0; s < inst.alphabet.size(); ++s) {
      day[inst.alphabet.name(static_cast<Symbol>(s))] = inst.workload[static_cast<std::size_t>(d)][s];
    }
    wl[std::string(kWeekdays[static_cast<std::size_t>(d)])] = day;
  }
  j["workload"] = wl;
  j["overlap"] = inst.overlap;
  if (inst.rotating_scale) j["family"] = {{"name", "rotating"}, {"scale", *inst.rotating_scale}};
  if (!inst.note.empty()) j["note"] = inst.note;
  json cs = json::array();
  for (const auto& c : inst.constraints) {
    json jc;
    jc["name"] = c.name;
    jc["automaton"] = rule_to_json(inst.alphabet, c.rule);
    if (c.view.kind == View::Kind::indices) {
      jc["view"] = c.view.indices;
    } else {
      jc["view"] = c.view.describe();
    }
    jc["mode"] = std::string(to_string(c.mode));
    cs.push_back(jc);
  }
  j["constraints"] = cs;
  return j.dump(2) + "\n";
}

}  // namespace acbls
