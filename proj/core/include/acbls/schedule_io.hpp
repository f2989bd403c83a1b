#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acbls/automaton.hpp"

namespace acbls {

/// Teams x 7 table with a weekday header and 1-based row numbers.
void write_schedule_table(std::ostream& out, const Alphabet& alphabet, std::span<const Symbol> assignment);

/// {"schedule": [["d", ...], ...]} plus any extra fields already in `extra`.
std::string schedule_to_json(const Alphabet& alphabet, std::span<const Symbol> assignment,
                             std::string_view extra_json_object = "{}");

/// Reads either layout above. Header lines of weekday names, a leading row
/// number and '#' comments are skipped. Every row must have 7 cells.
std::vector<Symbol> parse_schedule(std::string_view text, const Alphabet& alphabet);
std::vector<Symbol> load_schedule(const std::filesystem::path& path, const Alphabet& alphabet);

}  // namespace acbls
