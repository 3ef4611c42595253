#pragma once

// Serialization of classification results, reference diffs and count tables.

#include "ellk3/classifier.hpp"
#include "ellk3/fixtures.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ellk3 {

/// All groups of one type, in cell order (group_cell_less).
struct TypeRow {
  ADEType type;
  std::vector<GroupType> groups;

  friend bool operator==(const TypeRow&, const TypeRow&) = default;
};

/// Rows in table order; entries need not be sorted.
std::vector<TypeRow> group_by_type(const std::vector<ClassEntry>& entries);
/// Inverse of group_by_type, sorted by entry_less.
std::vector<ClassEntry> flatten(const std::vector<TypeRow>& rows);

/// "[2],[1]".
std::string group_cell_str(const std::vector<GroupType>& groups);

/// One line per type: rank, canonical type, group cell.
std::string format_tsv(const std::vector<ClassEntry>& entries);
/// Throws std::runtime_error naming the bad line.
std::vector<ClassEntry> parse_tsv(std::string_view text);
/// Array of {"type", "rank", "euler", "groups"} objects, [] = trivial group.
std::string format_json(const std::vector<ClassEntry>& entries);
std::vector<ClassEntry> parse_json(std::string_view text);

/// Candidate listing: rank, euler, type.
std::string format_types_tsv(const std::vector<ADEType>& types);
std::string format_types_json(const std::vector<ADEType>& types);

struct GroupMismatch {
  ADEType type;
  std::vector<GroupType> expected;
  std::vector<GroupType> actual;
};

struct DiffReport {
  std::vector<ADEType> missing;  // in the reference, not computed
  std::vector<ADEType> extra;    // computed, not in the reference
  std::vector<GroupMismatch> mismatched;

  bool empty() const { return missing.empty() && extra.empty() && mismatched.empty(); }
  /// Human-readable lines, first divergence first.
  std::string str() const;
};

DiffReport verify_reference(const std::vector<ClassEntry>& results, const std::vector<ReferenceRow>& reference);

using RankRow = std::array<long, 19>;  // index = rank, slot 0 unused

struct CountTables {
  std::map<GroupType, long> per_group;
  std::map<GroupType, RankRow> per_group_rank;
  RankRow types_per_rank{};        // |P_r|
  RankRow trivial_only_per_rank{}; // |T_r|
  long total_pairs = 0;
  long total_types = 0;
};

CountTables count_tables(const std::vector<ClassEntry>& entries);
RankRow rank_histogram(const std::vector<ADEType>& types);
long row_total(const RankRow& r);

/// Published reference numbers.
struct PublishedCounts {
  std::map<GroupType, long> per_group;
  std::map<GroupType, RankRow> per_group_rank;  // [1], [2], [3], [4], [2,2]
  RankRow candidates;      // |E_r|, euler <= 24
  RankRow all_types;       // |R_r|, no euler cap
  RankRow types_per_rank;  // |P_r|
  RankRow trivial_only;    // |T_r|
};
const PublishedCounts& published_counts();

/// Lines "ok ..." / "MISMATCH ..." comparing the computed tables with the
/// published ones; returns true when everything agrees.
bool compare_counts(const CountTables& c, const RankRow& candidates, const RankRow& all_types,
                    std::string& log);

}  // namespace ellk3
