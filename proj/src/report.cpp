#include "ellk3/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ellk3 {

std::vector<TypeRow> group_by_type(const std::vector<ClassEntry>& entries) {
  std::vector<ClassEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(), entry_less);
  std::vector<TypeRow> rows;
  for (const auto& e : sorted) {
    if (rows.empty() || !(rows.back().type == e.type)) rows.push_back(TypeRow{e.type, {}});
    if (std::find(rows.back().groups.begin(), rows.back().groups.end(), e.group) == rows.back().groups.end())
      rows.back().groups.push_back(e.group);
  }
  for (auto& r : rows) std::sort(r.groups.begin(), r.groups.end(), group_cell_less);
  return rows;
}

std::vector<ClassEntry> flatten(const std::vector<TypeRow>& rows) {
  std::vector<ClassEntry> out;
  for (const auto& r : rows)
    for (const auto& g : r.groups) out.push_back(ClassEntry{r.type, g});
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

std::string group_cell_str(const std::vector<GroupType>& groups) {
  std::string s;
  for (std::size_t i = 0; i < groups.size(); ++i) s += (i ? "," : "") + group_str(groups[i]);
  return s;
}

std::string format_tsv(const std::vector<ClassEntry>& entries) {
  std::ostringstream os;
  for (const auto& r : group_by_type(entries))
    os << r.type.rank() << '\t' << r.type.str() << '\t' << group_cell_str(r.groups) << '\n';
  return os.str();
}

std::vector<ClassEntry> parse_tsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long no = 0;
  std::vector<TypeRow> rows;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty() || line[0] == '#') continue;
    try {
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
        throw std::invalid_argument("expected 3 tab-separated columns");
      const int rank = std::stoi(line.substr(0, t1));
      TypeRow r{parse_type(line.substr(t1 + 1, t2 - t1 - 1)), parse_group_cell(line.substr(t2 + 1))};
      if (r.type.rank() != rank) throw std::invalid_argument("rank column disagrees with the type");
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(no) + ": " + e.what());
    }
  }
  return flatten(rows);
}

std::string format_json(const std::vector<ClassEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : group_by_type(entries)) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : r.groups) groups.push_back(g);
    arr.push_back({{"type", r.type.str()}, {"rank", r.type.rank()}, {"euler", r.type.euler()}, {"groups", groups}});
  }
  return arr.dump(1) + "\n";
}

std::vector<ClassEntry> parse_json(std::string_view text) {
  std::vector<TypeRow> rows;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw std::invalid_argument("top level must be an array");
    for (const auto& obj : arr) {
      TypeRow r{parse_type(obj.at("type").get<std::string>()), {}};
      if (obj.contains("rank") && obj.at("rank").get<int>() != r.type.rank())
        throw std::invalid_argument("rank disagrees with the type " + r.type.str());
      if (obj.contains("euler") && obj.at("euler").get<int>() != r.type.euler())
        throw std::invalid_argument("euler disagrees with the type " + r.type.str());
      for (const auto& g : obj.at("groups")) {
        GroupType gt = g.get<GroupType>();
        // Round-trip through the text form to validate divisibility.
        r.groups.push_back(parse_group(group_str(gt)));
      }
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  }
  return flatten(rows);
}

std::string format_types_tsv(const std::vector<ADEType>& types) {
  std::ostringstream os;
  for (const auto& t : types) os << t.rank() << '\t' << t.euler() << '\t' << t.str() << '\n';
  return os.str();
}

std::string format_types_json(const std::vector<ADEType>& types) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : types) arr.push_back({{"type", t.str()}, {"rank", t.rank()}, {"euler", t.euler()}});
  return arr.dump(1) + "\n";
}

std::string DiffReport::str() const {
  std::ostringstream os;
  for (const auto& t : missing) os << "missing\t" << t.str() << '\n';
  for (const auto& t : extra) os << "extra\t" << t.str() << '\n';
  for (const auto& m : mismatched)
    os << "groups\t" << m.type.str() << "\texpected " << group_cell_str(m.expected) << "\tgot "
       << group_cell_str(m.actual) << '\n';
  return os.str();
}

DiffReport verify_reference(const std::vector<ClassEntry>& results, const std::vector<ReferenceRow>& reference) {
  std::map<ADEType, std::set<GroupType>> got, want;
  for (const auto& e : results) got[e.type].insert(e.group);
  for (const auto& r : reference) {
    if (want.count(r.type)) throw std::runtime_error("reference lists " + r.type.str() + " twice");
    want[r.type].insert(r.groups.begin(), r.groups.end());
  }
  auto cell = [](const std::set<GroupType>& s) {
    std::vector<GroupType> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), group_cell_less);
    return v;
  };
  DiffReport d;
  for (const auto& [t, gs] : want) {
    auto it = got.find(t);
    if (it == got.end()) d.missing.push_back(t);
    else if (it->second != gs) d.mismatched.push_back(GroupMismatch{t, cell(gs), cell(it->second)});
  }
  for (const auto& [t, gs] : got)
    if (!want.count(t)) d.extra.push_back(t);
  std::sort(d.missing.begin(), d.missing.end(), table_less);
  std::sort(d.extra.begin(), d.extra.end(), table_less);
  std::sort(d.mismatched.begin(), d.mismatched.end(),
            [](const GroupMismatch& a, const GroupMismatch& b) { return table_less(a.type, b.type); });
  return d;
}

CountTables count_tables(const std::vector<ClassEntry>& entries) {
  CountTables c;
  for (const auto& e : entries) {
    ++c.per_group[e.group];
    c.per_group_rank[e.group][static_cast<std::size_t>(e.type.rank())] += 1;
    ++c.total_pairs;
  }
  for (const auto& r : group_by_type(entries)) {
    ++c.types_per_rank[static_cast<std::size_t>(r.type.rank())];
    if (r.groups.size() == 1 && r.groups[0].empty()) ++c.trivial_only_per_rank[static_cast<std::size_t>(r.type.rank())];
    ++c.total_types;
  }
  return c;
}

RankRow rank_histogram(const std::vector<ADEType>& types) {
  RankRow r{};
  for (const auto& t : types)
    if (t.rank() >= 1 && t.rank() <= 18) ++r[static_cast<std::size_t>(t.rank())];
  return r;
}

long row_total(const RankRow& r) {
  long s = 0;
  for (long v : r) s += v;
  return s;
}

namespace {

RankRow row(std::initializer_list<long> v) {
  RankRow r{};
  std::size_t i = 1;
  for (long x : v) r[i++] = x;
  return r;
}

}  // namespace

const PublishedCounts& published_counts() {
  static const PublishedCounts p = [] {
    PublishedCounts c;
    c.per_group = {{{}, 2746},   {{2}, 732},  {{3}, 85},     {{4}, 41},  {{5}, 6},
                   {{6}, 10},    {{7}, 1},    {{8}, 1},      {{2, 2}, 61}, {{4, 2}, 5},
                   {{6, 2}, 1},  {{3, 3}, 3}, {{4, 4}, 1}};
    c.per_group_rank[{}] = row({1, 2, 3, 6, 9, 16, 24, 39, 57, 88, 127, 189, 262, 360, 448, 500, 416, 199});
    c.per_group_rank[{2}] = row({0, 0, 0, 0, 0, 0, 0, 1, 2, 6, 13, 29, 53, 92, 133, 164, 155, 84});
    c.per_group_rank[{3}] = row({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 6, 12, 21, 24, 19});
    c.per_group_rank[{4}] = row({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 4, 10, 15, 11});
    c.per_group_rank[{2, 2}] = row({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 5, 10, 16, 16, 11});
    c.all_types = row({1, 2, 3, 6, 9, 16, 24, 39, 57, 88, 128, 193, 276, 403, 570, 815, 1137, 1599});
    c.candidates = row({1, 2, 3, 6, 9, 16, 24, 39, 57, 88, 128, 193, 274, 393, 531, 688, 773, 712});
    c.types_per_rank = row({1, 2, 3, 6, 9, 16, 24, 39, 57, 88, 128, 193, 274, 392, 518, 624, 580, 325});
    c.trivial_only = row({1, 2, 3, 6, 9, 16, 24, 38, 55, 82, 115, 162, 217, 289, 362, 419, 372, 188});
    return c;
  }();
  return p;
}

namespace {

std::string row_str(const RankRow& r) {
  std::string s;
  for (std::size_t i = 1; i < r.size(); ++i) s += (i > 1 ? " " : "") + std::to_string(r[i]);
  return s;
}

bool check_row(const std::string& name, const RankRow& got, const RankRow& want, std::string& log) {
  const bool ok = got == want;
  log += (ok ? "ok       " : "MISMATCH ") + name + ": " + row_str(got) + " (total " +
         std::to_string(row_total(got)) + ")";
  if (!ok) log += " expected " + row_str(want);
  log += "\n";
  return ok;
}

}  // namespace

bool compare_counts(const CountTables& c, const RankRow& candidates, const RankRow& all_types, std::string& log) {
  const PublishedCounts& p = published_counts();
  bool ok = true;
  std::set<GroupType> groups;
  for (const auto& [g, n] : p.per_group) groups.insert(g);
  for (const auto& [g, n] : c.per_group) groups.insert(g);
  for (const auto& g : groups) {
    const long got = c.per_group.count(g) ? c.per_group.at(g) : 0;
    const long want = p.per_group.count(g) ? p.per_group.at(g) : 0;
    const bool good = got == want;
    ok = ok && good;
    log += (good ? "ok       " : "MISMATCH ") + std::string("pairs with G = ") + group_str(g) + ": " +
           std::to_string(got) + (good ? "" : " expected " + std::to_string(want)) + "\n";
  }
  for (const auto& [g, want] : p.per_group_rank) {
    const RankRow got = c.per_group_rank.count(g) ? c.per_group_rank.at(g) : RankRow{};
    ok = check_row("P^" + group_str(g) + "_r", got, want, log) && ok;
  }
  ok = check_row("E_r", candidates, p.candidates, log) && ok;
  ok = check_row("R_r", all_types, p.all_types, log) && ok;
  ok = check_row("P_r", c.types_per_rank, p.types_per_rank, log) && ok;
  ok = check_row("T_r", c.trivial_only_per_rank, p.trivial_only, log) && ok;
  return ok;
}

}  // namespace ellk3
