#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stratcat/cli.hpp"

using namespace stratcat;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> parse_lines(const std::string& text) {
  std::vector<nlohmann::json> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    rows.push_back(nlohmann::json::parse(line));
  }
  return rows;
}

std::map<std::string, std::string> witness_by_case(const std::vector<nlohmann::json>& rows) {
  std::map<std::string, std::string> result;
  for (const auto& row : rows)
    result[row["case"].get<std::string>()] = row["witness"].get<std::string>();
  return result;
}

void check_sorted_and_passing(const std::vector<nlohmann::json>& rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k]["status"] == "PASS");
    if (k == 0) continue;
    auto key = [&](std::size_t i) {
      return std::make_pair(rows[i]["suite"].get<std::string>(),
                            rows[i]["case"].get<std::string>());
    };
    CHECK(key(k - 1) <= key(k));
  }
}

struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content) : path(name) {
    std::ofstream stream(path);
    stream << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

const char* chain_json = R"({
  "elements": ["a", "b", "c"],
  "leq": [["a", "b"], ["b", "c"]],
  "f": {"a": "2", "b": "1", "c": "0"}
})";

}  // namespace

TEST_CASE("homology subcommand over the integers") {
  CliResult result = run({"homology", "other_sphere", "--ring", "z"});
  REQUIRE(result.code == 0);
  auto rows = parse_lines(result.out);
  REQUIRE(rows.size() == 3);
  check_sorted_and_passing(rows);
  auto groups = witness_by_case(rows);
  CHECK(groups["H0"] == "Z");
  CHECK(groups["H1"] == "0");
  CHECK(groups["H2"] == "Z");
}

TEST_CASE("homology subcommand mod 2") {
  CliResult result = run({"homology", "round_sphere", "--ring", "z2"});
  REQUIRE(result.code == 0);
  auto groups = witness_by_case(parse_lines(result.out));
  CHECK(groups["H0"] == "Z/2");
  CHECK(groups["H1"] == "0");
  CHECK(groups["H2"] == "Z/2");
}

TEST_CASE("homology rejects bad targets") {
  CliResult unknown = run({"homology", "no_such_example"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown builtin") != std::string::npos);

  TempFile bad("cli_bad_input.json", "{ not json");
  CliResult malformed = run({"homology", bad.path});
  CHECK(malformed.code == 2);
  CHECK_FALSE(malformed.err.empty());
}

TEST_CASE("argument errors exit with the usage code") {
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"homology", "other_sphere", "--ring", "z3"}).code == 2);
  CHECK(run({"verify-cubes", "--max-len", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cube class verification over a chain") {
  TempFile chain("cli_chain_tmp.json", chain_json);
  CliResult result = run({"verify-cubes", "--poset", chain.path, "--max-len", "2"});
  REQUIRE(result.code == 0);
  auto rows = parse_lines(result.out);
  CHECK_FALSE(rows.empty());
  check_sorted_and_passing(rows);
  bool saw_classes = false, saw_stratum = false;
  for (const auto& row : rows) {
    if (row["suite"] == "classes") saw_classes = true;
    if (row["suite"] == "stratum") saw_stratum = true;
  }
  CHECK(saw_classes);
  CHECK(saw_stratum);
}

TEST_CASE("fiber comparison over a chain") {
  TempFile chain("cli_chain_tmp2.json", chain_json);
  CliResult result = run({"fiber-compare", "--poset", chain.path, "--max-len", "3"});
  REQUIRE(result.code == 0);
  auto rows = parse_lines(result.out);
  CHECK_FALSE(rows.empty());
  check_sorted_and_passing(rows);
  for (const auto& row : rows) CHECK(row["suite"] == "fiber");
}

TEST_CASE("retraction audit") {
  CliResult result = run({"qbar-audit", "--max-n", "2"});
  REQUIRE(result.code == 0);
  auto rows = parse_lines(result.out);
  CHECK_FALSE(rows.empty());
  check_sorted_and_passing(rows);
  bool saw_jacobian = false;
  for (const auto& row : rows)
    if (row["suite"] == "jacobian") saw_jacobian = true;
  CHECK(saw_jacobian);

  CliResult invalid_grid = run({"qbar-audit", "--max-n", "2", "--grid", "1/2"});
  CHECK(invalid_grid.code == 2);
}

TEST_CASE("nerve check reports filler certificates") {
  TempFile chain("cli_chain_tmp3.json", chain_json);
  CliResult result = run({"nerve-check", chain.path, "--dim", "2"});
  REQUIRE(result.code == 0);
  auto rows = parse_lines(result.out);
  check_sorted_and_passing(rows);
  bool saw_outer = false, saw_existence = false, saw_spine = false;
  for (const auto& row : rows) {
    if (row["suite"] == "kan" && row["case"] == "outer_horns") saw_outer = true;
    if (row["suite"] == "inner_horns" && row["case"] == "existence") saw_existence = true;
    if (row["suite"] == "spine") saw_spine = true;
  }
  CHECK(saw_outer);
  CHECK(saw_existence);
  CHECK(saw_spine);

  CliResult missing = run({"nerve-check", "no_such_file.json", "--dim", "2"});
  CHECK(missing.code == 2);
}

TEST_CASE("parallel workers produce the same report") {
  TempFile chain("cli_chain_tmp4.json", chain_json);
  CliResult serial = run({"verify-cubes", "--poset", chain.path, "--max-len", "2"});
  CliResult parallel =
      run({"verify-cubes", "--poset", chain.path, "--max-len", "2", "--jobs", "4"});
  CHECK(serial.code == 0);
  CHECK(parallel.code == 0);
  CHECK(serial.out == parallel.out);
}
