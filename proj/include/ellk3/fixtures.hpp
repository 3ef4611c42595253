#pragma once

// Reference tables compiled into the library, and their parsers.

#include "ellk3/ade_types.hpp"
#include "ellk3/classifier.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ellk3 {

/// Names of the embedded files (table1.tsv, rank18_z2.txt, ...).
std::vector<std::string> fixture_names();
/// Contents of an embedded file. Throws std::out_of_range for unknown names.
std::string_view fixture_text(std::string_view name);

/// Splits a cell such as "[6],[3],[2],[1]" (spaces allowed).
std::vector<GroupType> parse_group_cell(const std::string& cell);

/// One row of the main reference table.
struct ReferenceRow {
  long no = 0;
  int rank = 0;
  ADEType type;
  std::vector<GroupType> groups;  // cell order
};

/// Throws std::runtime_error naming the line on malformed input.
std::vector<ReferenceRow> parse_table1(std::string_view text);
/// group -> types, from the per-group list.
std::map<GroupType, std::set<ADEType>> parse_table2(std::string_view text);
/// One type per line, '#' comments and blank lines ignored.
std::set<ADEType> parse_type_list(std::string_view text);

/// Embedded seeds for a ruleset (rank-18 list plus any extra seeds).
std::set<ADEType> builtin_seeds(Ruleset rs);
/// Embedded rank-18 list for a group ([1], [2], [3], [4], [2,2]).
std::set<ADEType> rank18_list(const GroupType& g);

}  // namespace ellk3
