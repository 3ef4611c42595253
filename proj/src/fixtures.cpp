#include "ellk3/fixtures.hpp"

#include <sstream>
#include <stdexcept>

namespace ellk3 {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kFixtureFiles[];
extern const std::size_t kFixtureCount;
}  // namespace detail

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i) out.emplace_back(detail::kFixtureFiles[i].first);
  return out;
}

std::string_view fixture_text(std::string_view name) {
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i)
    if (detail::kFixtureFiles[i].first == name) return detail::kFixtureFiles[i].second;
  throw std::out_of_range("no embedded fixture '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(long line, const std::string& what) {
  throw std::runtime_error("fixture line " + std::to_string(line) + ": " + what);
}

template <class F>
void for_each_data_line(std::string_view text, F&& f) {
  std::istringstream in{std::string(text)};
  std::string line;
  long no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    f(no, line);
  }
}

}  // namespace

std::vector<GroupType> parse_group_cell(const std::string& cell) {
  std::vector<GroupType> out;
  std::string cur;
  int depth = 0;
  for (char c : cell) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(parse_group(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(parse_group(trim(cur)));
  if (out.empty()) throw std::invalid_argument("empty group cell");
  return out;
}

std::vector<ReferenceRow> parse_table1(std::string_view text) {
  std::vector<ReferenceRow> rows;
  for_each_data_line(text, [&](long no, const std::string& line) {
    auto cols = split(line, '\t');
    if (cols.size() != 4) fail(no, "expected 4 tab-separated columns");
    try {
      ReferenceRow r;
      std::size_t pos = 0;
      r.no = std::stol(cols[0], &pos);
      if (pos != cols[0].size()) fail(no, "bad row number");
      r.rank = std::stoi(cols[1], &pos);
      if (pos != cols[1].size()) fail(no, "bad rank");
      r.type = parse_type(cols[2]);
      if (r.type.rank() != r.rank) fail(no, "rank column disagrees with the type");
      r.groups = parse_group_cell(cols[3]);
      rows.push_back(std::move(r));
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      fail(no, e.what());
    }
  });
  return rows;
}

std::map<GroupType, std::set<ADEType>> parse_table2(std::string_view text) {
  std::map<GroupType, std::set<ADEType>> out;
  for_each_data_line(text, [&](long no, const std::string& line) {
    auto cols = split(line, '\t');
    if (cols.size() != 2) fail(no, "expected 2 tab-separated columns");
    try {
      out[parse_group(cols[0])].insert(parse_type(cols[1]));
    } catch (const std::exception& e) {
      fail(no, e.what());
    }
  });
  return out;
}

std::set<ADEType> parse_type_list(std::string_view text) {
  std::set<ADEType> out;
  for_each_data_line(text, [&](long no, const std::string& line) {
    try {
      out.insert(parse_type(trim(line)));
    } catch (const std::exception& e) {
      fail(no, e.what());
    }
  });
  return out;
}

std::set<ADEType> rank18_list(const GroupType& g) {
  if (g.empty()) return parse_type_list(fixture_text("rank18_trivial.txt"));
  if (g == GroupType{2}) return parse_type_list(fixture_text("rank18_z2.txt"));
  if (g == GroupType{3}) return parse_type_list(fixture_text("rank18_z3.txt"));
  if (g == GroupType{4}) return parse_type_list(fixture_text("rank18_z4.txt"));
  if (g == GroupType{2, 2}) return parse_type_list(fixture_text("rank18_z2z2.txt"));
  throw std::out_of_range("no rank-18 list for " + group_str(g));
}

std::set<ADEType> builtin_seeds(Ruleset rs) {
  auto merge = [](std::set<ADEType> a, const std::set<ADEType>& b) {
    a.insert(b.begin(), b.end());
    return a;
  };
  switch (rs) {
    case Ruleset::Trivial:
      return rank18_list({});
    case Ruleset::Z2:
      return merge(rank18_list({2}), parse_type_list(fixture_text("seeds_extra_z2.txt")));
    case Ruleset::Z3:
      return rank18_list({3});
    case Ruleset::Z4:
      return merge(rank18_list({4}), parse_type_list(fixture_text("seeds_extra_z4.txt")));
    case Ruleset::Z2Z2:
      return merge(rank18_list({2, 2}), parse_type_list(fixture_text("seeds_extra_z2z2.txt")));
  }
  throw std::logic_error("builtin_seeds: bad ruleset");
}

}  // namespace ellk3
