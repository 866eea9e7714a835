#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mal/dyadic_set.hpp"
#include "mal/examples.hpp"
#include "mal/scalars.hpp"
#include "mal/serialize.hpp"
#include "mal/step.hpp"

using namespace mal;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string cli = std::string("\"") + MAL_CLI_PATH + "\"";

int status(const std::string& command) {
  int rc = std::system(command.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

fs::path work_dir() {
  fs::path dir = fs::temp_directory_path() / "mal-cli-suite";
  fs::create_directories(dir);
  return dir;
}

json load(const fs::path& path) { return parse_json(read_text_file(path.string())); }

// 2 on [0,1/4), -1 on the rest
StepElement sample_step() {
  std::vector<StepTerm> terms;
  terms.push_back({Rational(2), DyadicSet::cell(2, 0)});
  terms.push_back({Rational(-1), DyadicSet::from_cells(2, {1, 2, 3})});
  return StepElement(DyadicSet::full(), std::move(terms));
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("exit codes separate pass, fail, misuse, budget and io") {
  CHECK(status(cli + " verify --example usual --n 6 >/dev/null") == 0);
  CHECK(status(cli + " verify --example interleaved --n 4 >/dev/null") == 1);
  CHECK(status(cli + " verify >/dev/null 2>&1") == 2);
  CHECK(status(cli + " verify --example unknown-name >/dev/null 2>&1") == 2);
  CHECK(status(cli + " verify --example usual --n 4 --depth 25 >/dev/null 2>&1") == 2);
  CHECK(status(cli + " verify --example usual --format xml >/dev/null 2>&1") == 2);
  CHECK(status(cli + " bogus-subcommand >/dev/null 2>&1") == 2);
  CHECK(status("MAL_BUDGET=100 " + cli + " verify --example usual --n 10 --depth 10 >/dev/null 2>&1") == 3);
  CHECK(status(cli + " verify --family /no/such/family.json >/dev/null 2>&1") == 4);
  CHECK(status(cli + " integrate --example usual --element /no/such/element.json >/dev/null 2>&1") == 4);

  fs::path bad = work_dir() / "bad-family.json";
  write_text_file(bad.string(), "{ this is not json");
  CHECK(status(cli + " verify --family " + bad.string() + " >/dev/null 2>&1") == 2);
}

TEST_CASE("reports are deterministic and land at --out") {
  fs::path first = work_dir() / "verify-a.json";
  fs::path second = work_dir() / "verify-b.json";
  const std::string command = " verify --example usual --n 6 --seed 3 --out ";
  REQUIRE(status(cli + command + first.string() + " 2>/dev/null") == 0);
  REQUIRE(status(cli + command + second.string() + " 2>/dev/null") == 0);
  CHECK(read_text_file(first.string()) == read_text_file(second.string()));

  json j = load(first);
  CHECK(j["schema"] == "mal-report/1");
  CHECK(j["command"] == "verify");
  CHECK(j["seed"] == 3);
  CHECK(j["report"]["all_pass"] == true);
}

TEST_CASE("family verification reports the probe ledger") {
  fs::path out = work_dir() / "verify-usual-10.json";
  REQUIRE(status(cli + " verify --example usual --n 10 --depth 10 --out " + out.string() +
                 " 2>/dev/null") == 0);
  json j = load(out);
  CHECK(j["report"]["depth"] == 10);
  CHECK(j["report"]["r1"]["pass"] == true);
  CHECK(j["report"]["r3"]["pass"] == true);
  CHECK(j["report"]["r4"]["probed"] == 90);
  CHECK(j["report"]["r4"]["covered"] == 90);
  CHECK(j["report"]["all_pass"] == true);
  CHECK(j["seed"] == 0);
}

TEST_CASE("a family file round trips through verification") {
  fs::path fam_path = work_dir() / "usual-4.json";
  write_text_file(fam_path.string(), json_text(family_to_json(usual_family(4))));
  CHECK(status(cli + " verify --family " + fam_path.string() + " >/dev/null") == 0);
}

TEST_CASE("the representation report pins the cylinder ledger") {
  fs::path out = work_dir() / "represent-usual-6.json";
  REQUIRE(status(cli + " represent --example usual --n 6 --out " + out.string() +
                 " 2>/dev/null") == 0);
  json j = load(out);
  CHECK(j["conditions"]["abs_is_unit"] == true);
  CHECK(j["conditions"]["meets_nonzero"] == true);
  CHECK(j["conditions"]["traces_pass"] == true);
  CHECK(j["conditions"]["minimality_pass"] == true);
  CHECK(j["space"]["outcomes"].size() == 64);
  CHECK(j["independence"]["max_order"] == 4);
  CHECK(j["independence"]["cylinders_checked"] == 473);
  CHECK(j["independence"]["pass"] == true);
}

TEST_CASE("the gallery lists its families and report-only constructions") {
  fs::path out = work_dir() / "examples.json";
  REQUIRE(status(cli + " examples --out " + out.string() + " 2>/dev/null") == 0);
  json j = load(out);
  auto names = j["families"].get<std::vector<std::string>>();
  CHECK(names.size() == 8);
  for (const char* name : {"usual", "interleaved", "nonvanishing", "incomplete", "digit",
                           "mixed", "cut", "glued"})
    CHECK(std::find(names.begin(), names.end(), name) != names.end());
  CHECK(j["report_only"] == json::array({"crushed", "nonsigma"}));
}

TEST_CASE("the crushed report writes its ledger to a file") {
  fs::path out = work_dir() / "crushed-6.json";
  REQUIRE(status(cli + " report --example crushed --gamma 1/3 --stage 6 --out " + out.string() +
                 " 2>/dev/null") == 0);
  json j = load(out);
  CHECK(j["crushed"]["stage"] == 6);
  CHECK(j["crushed"]["gamma"] == "1/3");
  CHECK(j["crushed"]["r0_measure"] == "1319/4096");
  CHECK(j["crushed"]["gamma_gap"] == "139/12288");
  CHECK(j["crushed"]["checks"]["two_sided"] == true);
  CHECK(j["crushed"]["checks"]["measure_close"] == true);
  CHECK(j["extended_family"]["generators"] == 7);
  CHECK(j["extended_family"]["particles_checked"] == 128);
  CHECK(j["extended_family"]["particles_nonzero"] == true);
}

TEST_CASE("the nonsigma report tracks the chain against its ledger") {
  fs::path out = work_dir() / "nonsigma-20.json";
  REQUIRE(status(cli + " report --example nonsigma --m 20 --out " + out.string() +
                 " 2>/dev/null") == 0);
  json j = load(out);
  REQUIRE(j["nonsigma"]["chain"].size() == 20);
  CHECK(j["nonsigma"]["chain"][0]["measure"] == "3/4");
  CHECK(j["nonsigma"]["chain"][19]["measure"] == "43755/65536");
  CHECK(j["nonsigma"]["chain"][19]["above_half"] == true);
  CHECK(j["nonsigma"]["chain"][19]["bound_holds"] == true);
  CHECK(j["nonsigma"]["all_above_half"] == true);
}

TEST_CASE("element files feed the measure and integrate commands") {
  fs::path elem = work_dir() / "gen3.json";
  write_text_file(elem.string(), json_text(element_to_json(usual_generator(3))));
  fs::path out = work_dir() / "measure.json";
  REQUIRE(status(cli + " measure --example usual --n 4 --element " + elem.string() + " --out " +
                 out.string() + " 2>/dev/null") == 0);
  CHECK(load(out)["measure"] == "1/2");

  fs::path step_path = work_dir() / "step.json";
  write_text_file(step_path.string(), json_text(step_to_json(sample_step())));
  fs::path integral_out = work_dir() / "integral.json";
  REQUIRE(status(cli + " integrate --example usual --n 4 --element " + step_path.string() +
                 " --out " + integral_out.string() + " 2>/dev/null") == 0);
  json j = load(integral_out);
  CHECK(j["integral"]["value"] == "-1/4");
  CHECK(j["integral"]["decimal"] == "-0.250000000000");
  CHECK(j["bounded"]["value"] == "-1/4");
  CHECK(j["l1_norm"]["value"] == "5/4");
}

TEST_CASE("the haar table reports exact self inner products") {
  fs::path out = work_dir() / "haar-3.json";
  REQUIRE(status(cli + " haar --example usual --n 3 --haar-depth 3 --out " + out.string() +
                 " 2>/dev/null") == 0);
  json j = load(out);
  CHECK(j["orthogonal"] == true);
  REQUIRE(j["table"].size() == 8);
  CHECK(j["table"][0]["self_inner"] == "1");
  CHECK(j["table"][1]["self_inner"] == "1");
  CHECK(j["table"][2]["self_inner"] == "1/2");
  CHECK(j["table"][7]["self_inner"] == "1/4");
  CHECK(j["table"][7]["orthogonal_to_rest"] == true);
}

TEST_CASE("the report command emits csv next to its output file") {
  fs::path step_path = work_dir() / "csv-step.json";
  write_text_file(step_path.string(), json_text(step_to_json(sample_step())));
  fs::path out = work_dir() / "report-csv.json";
  REQUIRE(status(cli + " report --example usual --n 3 --element " + step_path.string() +
                 " --csv-level 2 --out " + out.string() + " 2>/dev/null") == 0);
  json j = load(out);
  CHECK(j["csv_path"] == out.string() + ".csv");
  CHECK(read_text_file(out.string() + ".csv") ==
        "cell_lo,cell_hi,value\n"
        "0,1/4,2\n"
        "1/4,1/2,-1\n"
        "1/2,3/4,-1\n"
        "3/4,1,-1\n");
}

TEST_CASE("text format flattens the report into lines") {
  fs::path out = work_dir() / "measure.txt";
  REQUIRE(status(cli + " measure --example usual --n 2 --format text --out " + out.string() +
                 " 2>/dev/null") == 0);
  CHECK(read_text_file(out.string()) ==
        "command: measure\n"
        "generators[0]: 1/2\n"
        "generators[1]: 1/2\n"
        "schema: mal-report/1\n"
        "unit: 1\n");
}

TEST_SUITE_END();
