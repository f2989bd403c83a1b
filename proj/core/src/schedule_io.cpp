#include "acbls/schedule_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "acbls/instance.hpp"
#include "json.hpp"

namespace acbls {

using nlohmann::json;

void write_schedule_table(std::ostream& out, const Alphabet& alphabet, std::span<const Symbol> assignment) {
  std::size_t width = 3;
  for (const auto& n : alphabet.names()) width = std::max(width, n.size());
  out << std::setw(4) << "";
  for (auto day : kWeekdays) {
    std::string label(day);
    label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    out << ' ' << std::left << std::setw(static_cast<int>(width)) << label;
  }
  out << std::right << '\n';
  const std::size_t rows = assignment.size() / kDaysPerWeek;
  for (std::size_t r = 0; r < rows; ++r) {
    out << std::setw(4) << r + 1;
    for (std::size_t d = 0; d < kDaysPerWeek; ++d) {
      out << ' ' << std::left << std::setw(static_cast<int>(width)) << alphabet.name(assignment[r * kDaysPerWeek + d]);
    }
    out << std::right << '\n';
  }
}

std::string schedule_to_json(const Alphabet& alphabet, std::span<const Symbol> assignment,
                             std::string_view extra_json_object) {
  json j = json::parse(extra_json_object);
  json rows = json::array();
  for (std::size_t r = 0; r + kDaysPerWeek <= assignment.size(); r += kDaysPerWeek) {
    json row = json::array();
    for (std::size_t d = 0; d < kDaysPerWeek; ++d) row.push_back(alphabet.name(assignment[r + d]));
    rows.push_back(row);
  }
  j["schedule"] = rows;
  return j.dump();
}

std::vector<Symbol> parse_schedule(std::string_view text, const Alphabet& alphabet) {
  std::vector<Symbol> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InstanceError(std::string("malformed schedule JSON: ") + e.what());
    }
    if (!j.contains("schedule") || !j.at("schedule").is_array()) throw InstanceError("schedule JSON lacks 'schedule'");
    for (const auto& row : j.at("schedule")) {
      if (!row.is_array() || row.size() != kDaysPerWeek) throw InstanceError("schedule row must have 7 cells");
      for (const auto& cell : row) {
        auto s = alphabet.find(cell.get<std::string>());
        if (!s) throw InstanceError("unknown symbol in schedule: " + cell.dump());
        out.push_back(*s);
      }
    }
    return out;
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> cells;
    for (std::string w; words >> w;) cells.push_back(w);
    if (cells.empty()) continue;
    auto lower = [](std::string s) {
      for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      return s;
    };
    if (std::find(kWeekdays.begin(), kWeekdays.end(), lower(cells.front())) != kWeekdays.end()) continue;
    if (cells.size() == kDaysPerWeek + 1 &&
        std::all_of(cells.front().begin(), cells.front().end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      cells.erase(cells.begin());
    }
    if (cells.size() != kDaysPerWeek) {
      throw InstanceError("schedule line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                          " cells, expected 7");
    }
    for (const auto& c : cells) {
      auto s = alphabet.find(c);
      if (!s) throw InstanceError("schedule line " + std::to_string(line_no) + ": unknown symbol '" + c + "'");
      out.push_back(*s);
    }
  }
  return out;
}

std::vector<Symbol> load_schedule(const std::filesystem::path& path, const Alphabet& alphabet) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_schedule(ss.str(), alphabet);
}

}  // namespace acbls
