#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "spec.hpp"

using namespace qsym;
using namespace qsym::cli;
using nlohmann::json;

namespace {

std::string spec_file(const std::string& name) { return std::string(QSYM_SPECS_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("qsym_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

Outcome run_on(const std::string& command, const std::string& path, std::optional<std::size_t> max_degree = {},
               std::optional<std::size_t> degree = {}) {
  Options o;
  o.command = command;
  o.spec_path = path;
  o.max_degree = max_degree;
  o.degree = degree;
  return run(o);
}

std::string where(const json& j) {
  try {
    parse_spec(j);
  } catch (const SpecError& e) {
    return e.where;
  }
  return "accepted";
}

// Integers and fractions appearing in s.
void numbers_in(const std::string& s, std::set<std::string>& out) {
  static const std::regex num(R"(-?\d+(/\d+)?)");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), num); it != std::sregex_iterator(); ++it) out.insert(it->str());
}

void numbers_in(const json& j, std::set<std::string>& out) {
  if (j.is_number())
    out.insert(j.dump());
  else if (j.is_string())
    numbers_in(j.get<std::string>(), out);
  else if (j.is_structured())
    for (const auto& [k, v] : j.items()) {
      numbers_in(k, out);
      numbers_in(v, out);
    }
}

}  // namespace

TEST_CASE("spec errors name the offending location") {
  json good = json::parse(R"({"version": 1, "field": "rationals",
    "couple": {"kind": "diagonal", "rank": 1, "moduli": [2], "degrees": [[1]], "q": [["-1"]]}})");
  CHECK(where(good) == "accepted");

  json j = good;
  j.erase("field");
  CHECK(where(j) == "/field");
  j = good;
  j["field"] = {{"prime", 6}};
  CHECK(where(j) == "/field/prime");
  j = good;
  j["version"] = 2;
  CHECK(where(j) == "/version");
  j = good;
  j["couple"]["kind"] = "bogus";
  CHECK(where(j) == "/couple/kind");
  j = good;
  j["couple"]["letters"] = {"a", "b"};
  CHECK(where(j) == "/couple/letters");
  j = good;
  j["pairing"] = {{"kind", "explicit"}};
  CHECK(where(j) == "/pairing/kind");
  j = good;
  j["max_degree"] = -1;
  CHECK(where(j) == "/max_degree");

  // q = 2 is not a character value of Z/2.
  j = good;
  j["couple"]["q"] = {{"2"}};
  CHECK(where(j) == "/couple");

  const std::string broken = write_temp("broken.json", "{\n  \"version\": 1,\n  \"field\" \"rationals\"\n}\n");
  try {
    load_spec(broken);
    FAIL("malformed JSON accepted");
  } catch (const SpecError& e) {
    CHECK(e.where == "line 3, column 21");  // end of the unexpected token
  }
}

TEST_CASE("exit codes") {
  CHECK(run_on("validate", spec_file("rank1_qm1.json")).exit_code == ok);
  CHECK(run_on("validate", spec_file("raw_z2.json")).exit_code == ok);
  CHECK(run_on("validate", spec_file("raw_broken_antipode.json")).exit_code == failed);
  CHECK(run_on("validate", spec_file("bad_field_p6.json")).exit_code == bad_input);
  CHECK(run_on("hilbert", spec_file("missing.json")).exit_code == bad_input);
  CHECK(run_on("check", spec_file("rank1_phi1_zero.json")).exit_code == failed);
  CHECK(run_on("check", spec_file("regular_z2.json")).exit_code == ok);

  Options capped;
  capped.command = "gram";
  capped.spec_path = spec_file("a2_q2.json");
  capped.degree = 4;
  capped.cap = 5;
  auto out = run(capped);
  CHECK(out.exit_code == resource);
  CHECK(out.report["error"]["where"] == "resource cap");

  capped.command = "hilbert";
  out = run(capped);
  CHECK(out.exit_code == resource);
  CHECK(out.report["hilbert"]["truncated"] == true);
  CHECK(out.report["hilbert"]["dims"] == json::array({1, 2, 4}));
}

TEST_CASE("report and table carry the same numbers") {
  auto out = run_on("hilbert", spec_file("a2_q2.json"));
  REQUIRE(out.exit_code == ok);
  const auto& h = out.report["hilbert"];
  CHECK(h["dims"] == json::array({1, 2, 4, 6, 9}));
  CHECK(h["gram_dims"] == h["dims"]);
  CHECK(h["mode"] == "reduced");
  std::istringstream table(out.table);
  std::string line;
  std::vector<std::size_t> from_table;
  while (std::getline(table, line)) {
    std::istringstream row(line);
    std::size_t n, dim, g;
    std::string agree;
    if (row >> n >> dim >> g >> agree && agree == "yes") from_table.push_back(dim);
  }
  CHECK(from_table == h["dims"].get<std::vector<std::size_t>>());

  auto rel = run_on("relations", spec_file("a2_q2.json"), {}, 3);
  CHECK(rel.report["relations"]["count"] == 2);
  CHECK(rel.report["relations"]["words"] == 8);
  CHECK(rel.report["relations"]["relations"][0] == "x.x.y - 5/2*x.y.x + y.x.x");

  auto f5 = run_on("relations", spec_file("rank1_f5_q2.json"), {}, 4);
  CHECK(f5.report["relations"]["relations"] == json::array({"v.v.v.v"}));

  auto gram = run_on("gram", spec_file("rank1_q1.json"), {}, 4);
  CHECK(gram.report["gram"]["matrix"] == json::array({json::array({"24"})}));
  CHECK(gram.report["gram"]["cotensor"]["rank"] == 1);
}

TEST_CASE("every number in the table is in the re-parsed report") {
  struct Run {
    const char* command;
    const char* spec;
    std::optional<std::size_t> degree;
  };
  for (const auto& r : std::vector<Run>{{"validate", "raw_broken_antipode.json", {}},
                                        {"validate", "a2_q2.json", {}},
                                        {"hilbert", "rank1_f5_q2.json", {}},
                                        {"hilbert", "a2_q2.json", {}},
                                        {"relations", "a2_q2.json", 3},
                                        {"relations", "rank1_qm1.json", 2},
                                        {"gram", "a2_q2.json", 2},
                                        {"gram", "rank1_f5_q2.json", 3},
                                        {"check", "rank1_qm1.json", {}},
                                        {"check", "rank1_phi1_zero.json", {}},
                                        {"check", "regular_z2.json", {}}}) {
    CAPTURE(r.command);
    CAPTURE(r.spec);
    auto out = run_on(r.command, spec_file(r.spec), {}, r.degree);
    const json back = json::parse(out.report.dump(2));
    std::set<std::string> table, report;
    numbers_in(out.table, table);
    numbers_in(back, report);
    for (const auto& x : table) {
      CAPTURE(x);
      CHECK(report.count(x) == 1);
    }
  }
}

TEST_CASE("reports are deterministic unless timing is requested") {
  auto a = run_on("check", spec_file("a2_q2.json"), 3);
  auto b = run_on("check", spec_file("a2_q2.json"), 3);
  CHECK(a.report.dump(2) == b.report.dump(2));
  CHECK(a.table == b.table);
  CHECK(a.report["timing"]["recorded"] == false);

  Options par;
  par.command = "check";
  par.spec_path = spec_file("a2_q2.json");
  par.max_degree = 3;
  par.parallel = true;
  auto c = run(par);
  CHECK(c.report["checks"] == a.report["checks"]);

  par.timing = true;
  CHECK(run(par).report["timing"]["recorded"] == true);
}
