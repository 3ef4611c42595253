// ellk3: command-line driver for the elliptic K3 torsion classification.
// Exit codes: 0 success, 1 negative answer or failed check, 2 usage/parse error.

#include "ellk3/classifier.hpp"
#include "ellk3/fixtures.hpp"
#include "ellk3/genus.hpp"
#include "ellk3/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ellk3;

namespace {

constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Opts {
  int max_rank = 18;
  int max_euler = 24;
  std::string format = "tsv";
  std::string type;
  unsigned jobs = 1;
  std::string signature;
  std::string form_file;
  std::string ruleset;
  std::string seeds = "builtin";
  std::string only;
  std::string table1_file;
};

int cmd_enumerate(const Opts& o) {
  auto types = enumerate_candidates(o.max_rank, o.max_euler);
  std::cout << (o.format == "json" ? format_types_json(types) : format_types_tsv(types));
  return 0;
}

int cmd_classify(const Opts& o) {
  if (!o.type.empty()) {
    ADEType t;
    try {
      t = parse_type(o.type);
    } catch (const std::invalid_argument& e) {
      std::cerr << "ellk3: " << e.what() << "\n";
      return kUsage;
    }
    if (t.empty()) {
      std::cerr << "ellk3: the empty type has no classification\n";
      return kUsage;
    }
    std::vector<ClassEntry> entries;
    for (auto& g : classify_type(t)) entries.push_back(ClassEntry{t, g});
    if (entries.empty()) {
      std::cerr << t.str() << ": no realizable torsion group\n";
      return 1;
    }
    std::cout << (o.format == "json" ? format_json(entries) : format_tsv(entries));
    return 0;
  }
  auto entries = classify_all(o.max_rank, o.max_euler, o.jobs);
  std::cout << (o.format == "json" ? format_json(entries) : format_tsv(entries));
  return 0;
}

int cmd_exists_lattice(const Opts& o) {
  long r = 0, s = 0;
  FiniteQuadraticForm q;
  try {
    const auto comma = o.signature.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("signature must be r,s");
    std::size_t p1 = 0, p2 = 0;
    const std::string a = o.signature.substr(0, comma), b = o.signature.substr(comma + 1);
    r = std::stol(a, &p1);
    s = std::stol(b, &p2);
    if (p1 != a.size() || p2 != b.size() || r < 0 || s < 0 || r + s == 0)
      throw std::invalid_argument("bad signature '" + o.signature + "'");
    q = parse_form(read_file(o.form_file));
  } catch (const std::exception& e) {
    std::cerr << "ellk3: " << e.what() << "\n";
    return kUsage;
  }
  const bool ok = exists_even_lattice(r, s, q);
  std::cout << (ok ? "exists" : "none") << "\n";
  return ok ? 0 : 1;
}

int cmd_transform(const Opts& o) {
  Ruleset rs;
  std::set<ADEType> seeds;
  try {
    rs = parse_ruleset(o.ruleset);
    seeds = o.seeds == "builtin" ? builtin_seeds(rs) : parse_type_list(read_file(o.seeds));
  } catch (const std::exception& e) {
    std::cerr << "ellk3: " << e.what() << "\n";
    return kUsage;
  }
  auto c = closure(seeds, rs);
  std::vector<ADEType> out(c.begin(), c.end());
  std::sort(out.begin(), out.end(), table_less);
  for (const auto& t : out) std::cout << t.str() << "\n";
  return 0;
}

int cmd_verify(const Opts& o) {
  std::vector<ReferenceRow> table1;
  try {
    table1 = parse_table1(o.table1_file.empty() ? fixture_text("table1.tsv") : std::string_view(read_file(o.table1_file)));
  } catch (const std::exception& e) {
    std::cerr << "ellk3: " << e.what() << "\n";
    return kUsage;
  }
  const auto entries = classify_all(18, 24, o.jobs);
  bool ok = true;

  std::string log;
  const auto counts = count_tables(entries);
  ok = compare_counts(counts, rank_histogram(enumerate_candidates(18, 24)),
                      rank_histogram(enumerate_candidates(18, 36)), log);
  std::cout << log;
  if (o.only == "counts") return ok ? 0 : 1;

  const DiffReport diff = verify_reference(entries, table1);
  std::cout << (diff.empty() ? "ok       " : "MISMATCH ") << "reference table: " << table1.size() << " rows\n"
            << diff.str();
  ok = ok && diff.empty();

  std::map<GroupType, std::set<ADEType>> computed;
  for (const auto& e : entries) computed[e.group].insert(e.type);
  for (const auto& [g, types] : parse_table2(fixture_text("table2.tsv"))) {
    const bool good = computed[g] == types;
    ok = ok && good;
    std::cout << (good ? "ok       " : "MISMATCH ") << "type list for " << group_str(g) << ": " << types.size()
              << " types\n";
  }

  const std::pair<GroupType, Ruleset> rules[] = {{{}, Ruleset::Trivial}, {{2}, Ruleset::Z2}, {{3}, Ruleset::Z3},
                                                 {{4}, Ruleset::Z4},     {{2, 2}, Ruleset::Z2Z2}};
  for (const auto& [g, rs] : rules) {
    std::set<ADEType> at18;
    for (const auto& t : computed[g])
      if (t.rank() == 18) at18.insert(t);
    const bool good18 = at18 == rank18_list(g);
    const bool good_closure = closure(builtin_seeds(rs), rs) == computed[g];
    ok = ok && good18 && good_closure;
    std::cout << (good18 ? "ok       " : "MISMATCH ") << "rank-18 list for " << group_str(g) << "\n"
              << (good_closure ? "ok       " : "MISMATCH ") << "substitution closure for " << group_str(g) << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion groups and ADE-types of elliptic K3 surfaces"};
  app.require_subcommand(1);
  Opts o;

  auto* en = app.add_subcommand("enumerate", "List candidate ADE-types");
  en->add_option("--max-rank", o.max_rank, "Largest rank")->check(CLI::NonNegativeNumber);
  en->add_option("--max-euler", o.max_euler, "Largest euler number")->check(CLI::NonNegativeNumber);
  en->add_option("--format", o.format)->check(CLI::IsMember({"tsv", "json"}));

  auto* cl = app.add_subcommand("classify", "Classify one type or all candidates");
  cl->add_option("--type", o.type, "ADE-type such as \"2A5+2A2\"");
  cl->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  cl->add_option("--max-rank", o.max_rank)->check(CLI::Range(0, 18));
  cl->add_option("--max-euler", o.max_euler)->check(CLI::Range(0, 24));
  cl->add_option("--format", o.format)->check(CLI::IsMember({"tsv", "json"}));

  auto* ex = app.add_subcommand("exists-lattice", "Decide whether an even lattice with given data exists");
  ex->add_option("--signature", o.signature, "r,s")->required();
  ex->add_option("--form", o.form_file, "Finite quadratic form file")->required();

  auto* tr = app.add_subcommand("transform", "Closure of seed types under vertex deletion");
  tr->add_option("--ruleset", o.ruleset, "trivial|2|3|4|22")->required();
  tr->add_option("--seeds", o.seeds, "Seed file or 'builtin'");

  auto* ve = app.add_subcommand("verify", "Regenerate everything and compare with the embedded tables");
  ve->add_option("--only", o.only)->check(CLI::IsMember({"counts"}));
  ve->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  ve->add_option("--reference", o.table1_file, "Replacement for the embedded main table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*en) return cmd_enumerate(o);
    if (*cl) return cmd_classify(o);
    if (*ex) return cmd_exists_lattice(o);
    if (*tr) return cmd_transform(o);
    if (*ve) return cmd_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "ellk3: internal error: " << e.what() << "\n";
    return 3;
  }
  return kUsage;
}
