#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mal/algebra.hpp"
#include "mal/crushed.hpp"
#include "mal/dyadic_set.hpp"
#include "mal/error.hpp"
#include "mal/examples.hpp"
#include "mal/family.hpp"
#include "mal/integrate.hpp"
#include "mal/interval_set.hpp"
#include "mal/represent.hpp"
#include "mal/scalars.hpp"
#include "mal/serialize.hpp"
#include "mal/step.hpp"
#include "oracle.hpp"

using namespace mal;
using nlohmann::json;

TEST_SUITE_BEGIN("serialize");

TEST_CASE("element records round trip every carrier") {
  json cell_record = element_to_json(DyadicSet::cell(2, 1));
  CHECK(cell_record["kind"] == "dyadic");
  CHECK(cell_record["level"] == 2);
  CHECK(cell_record["mask"] == "2");

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << 32) - 1);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::uint64_t> cells;
    std::uint64_t bits = mask(rng);
    for (std::uint64_t c = 0; c < 32; ++c)
      if ((bits >> c) & 1) cells.push_back(c);
    AlgebraElement x = DyadicSet::from_cells(5, cells);
    CHECK(equal(element_from_json(element_to_json(x)), x));
  }

  AlgebraElement below_cut = IntervalSet::of(QuadScalar(Rational(0)), irrational_cut_point());
  CHECK(equal(element_from_json(element_to_json(below_cut)), below_cut));
  AlgebraElement two_piece = IntervalSet::from_intervals(
      {{QuadScalar(Rational(1, 8)), QuadScalar(Rational(1, 4))},
       {irrational_cut_point(), QuadScalar(Rational(1))}});
  CHECK(equal(element_from_json(element_to_json(two_piece)), two_piece));

  FiniteSubset f = FiniteSubset::empty(6);
  f.bits = 0b101001;
  json finite_record = element_to_json(f);
  CHECK(finite_record["kind"] == "finite");
  CHECK(finite_record["universe"] == 6);
  CHECK(finite_record["members"] == json::array({0, 3, 5}));
  CHECK(equal(element_from_json(finite_record), AlgebraElement(f)));

  AlgebraElement nested =
      PairElement::of(DyadicSet::cell(1, 0), PairElement::of(below_cut, AlgebraElement(f)));
  json nested_record = element_to_json(nested);
  CHECK(nested_record["kind"] == "pair");
  CHECK(nested_record["right"]["kind"] == "pair");
  CHECK(equal(element_from_json(nested_record), nested));
}

TEST_CASE("family records round trip across the gallery carriers") {
  const Family families[] = {usual_family(4), digit_family(3), cut_family(2), mixed_family(3, 4)};
  for (const Family& fam : families) {
    Family back = family_from_json(family_to_json(fam));
    CHECK(back.size() == fam.size());
    CHECK(equal(back.unit, fam.unit));
    for (std::uint32_t i = 1; i <= fam.size(); ++i)
      CHECK(equal(back.generator(i), fam.generator(i)));
  }
  CHECK(family_to_json(usual_family(2))["algebra"] == "dyadic");
  CHECK(family_to_json(mixed_family(2, 3))["algebra"] == "pair");
}

TEST_CASE("step records keep the coefficient order and round trip") {
  std::vector<StepTerm> terms;
  terms.push_back({Rational(2), DyadicSet::cell(2, 0)});
  terms.push_back({Rational(-1), DyadicSet::from_cells(2, {1, 2, 3})});
  StepElement x(DyadicSet::full(), std::move(terms));

  json record = step_to_json(x);
  CHECK(record["unit"]["level"] == 0);
  CHECK(record["unit"]["mask"] == "1");
  REQUIRE(record["terms"].size() == 2);
  CHECK(record["terms"][0][0] == "-1");  // terms sorted by coefficient
  CHECK(record["terms"][1][0] == "2");
  CHECK(step_from_json(record) == x);

  std::mt19937_64 rng(7);
  for (int round = 0; round < 25; ++round) {
    StepElement y = oracle::step_of_values(4, oracle::random_step_values(rng, 4));
    CHECK(step_from_json(step_to_json(y)) == y);
  }

  StepElement restricted = constant_step(DyadicSet::cell(1, 0), Rational(1, 3));
  CHECK(step_from_json(step_to_json(restricted)) == restricted);
}

TEST_CASE("integral values carry exact fields and a display decimal") {
  json third = integral_to_json({Rational(1, 3), Rational(1, 4), Rational(1, 2)});
  CHECK(third["value"] == "1/3");
  CHECK(third["decimal"] == "0.333333333333");
  CHECK(third["lo"] == "1/4");
  CHECK(third["hi"] == "1/2");

  json negative = integral_to_json({Rational(-1, 4), Rational(-1, 4), Rational(-1, 4)});
  CHECK(negative["value"] == "-1/4");
  CHECK(negative["decimal"] == "-0.250000000000");

  json zero = integral_to_json({Rational(0), Rational(0), Rational(0)});
  CHECK(zero["decimal"] == "0.000000000000");
}

TEST_CASE("probability spaces serialize outcome by outcome") {
  Family fam = usual_family(2);
  Representation rep = build_representation(rademacher_system(fam.unit, fam), 2);
  json j = prob_space_to_json(rep.space);
  CHECK(j["depth"] == 2);
  CHECK(j["outcomes"] == json::array({"++", "+-", "-+", "--"}));
  CHECK(j["probabilities"] == json::array({"1/2^2", "1/2^2", "1/2^2", "1/2^2"}));
  json variables = json::array({json::array({1, 1, -1, -1}), json::array({1, -1, 1, -1})});
  CHECK(j["variables"] == variables);
}

TEST_CASE("crushed stages serialize sets, measures and checks") {
  CrushedStage st = crushed_extension_stage(Rational(1, 3), 3);
  CrushedReport rep = verify_crushed_stage(st);
  json j = crushed_to_json(st, rep);

  CHECK(j["stage"] == 3);
  CHECK(j["gamma"] == "1/3");
  CHECK(j["r0_measure"] == rational_text(rep.r0_measure));
  CHECK(j["gamma_gap"] == rational_text(rep.gamma_gap));
  CHECK(equal(element_from_json(j["r0"]), AlgebraElement(st.r0)));

  REQUIRE(j["a_sets"].size() == 3);
  REQUIRE(j["b_sets"].size() == 3);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(j["a_sets"][n]["measure"] == dyadic_text(st.a_sets[n].lebesgue()));
    CHECK(equal(element_from_json(j["a_sets"][n]["set"]), AlgebraElement(st.a_sets[n])));
  }

  CHECK(j["checks"].size() == 6);
  CHECK(j["checks"]["sets_disjoint"] == rep.sets_disjoint);
  CHECK(j["checks"]["ledger_bounds"] == rep.ledger_bounds);
  CHECK(j["checks"]["stage_cantor"] == rep.stage_cantor);
  CHECK(j["checks"]["avoids_interval"] == rep.avoids_interval);
  CHECK(j["checks"]["two_sided"] == rep.two_sided);
  CHECK(j["checks"]["measure_close"] == rep.measure_close);
}

TEST_CASE("every report shares the same envelope") {
  json env = report_envelope("verify");
  CHECK(env["schema"] == "mal-report/1");
  CHECK(env["command"] == "verify");
  CHECK(env.size() == 2);
}

TEST_CASE("csv emission walks the grid left to right") {
  std::vector<StepTerm> terms;
  terms.push_back({Rational(2), DyadicSet::cell(2, 0)});
  terms.push_back({Rational(-1), DyadicSet::from_cells(2, {1, 2, 3})});
  StepElement x(DyadicSet::full(), std::move(terms));

  CHECK(step_to_csv(x, 2) ==
        "cell_lo,cell_hi,value\n"
        "0,1/4,2\n"
        "1/4,1/2,-1\n"
        "1/2,3/4,-1\n"
        "3/4,1,-1\n");

  // a finer grid repeats values; the header plus eight rows
  std::string fine = step_to_csv(x, 3);
  CHECK(std::count(fine.begin(), fine.end(), '\n') == 9);
  CHECK(fine.find("1/8,1/4,2\n") != std::string::npos);
  CHECK(fine.find("7/8,1,-1\n") != std::string::npos);

  // cells outside a restricted unit are skipped
  StepElement half(DyadicSet::cell(1, 0),
                   {{Rational(1), DyadicSet::cell(2, 0)}});
  CHECK(step_to_csv(half, 2) ==
        "cell_lo,cell_hi,value\n"
        "0,1/4,1\n"
        "1/4,1/2,0\n");

  StepElement silent(DyadicSet::full());
  CHECK(step_to_csv(silent, 1) ==
        "cell_lo,cell_hi,value\n"
        "0,1/2,0\n"
        "1/2,1,0\n");

  CHECK_ERRC(step_to_csv(x, 1), Errc::not_in_algebra);  // grid coarser than a fragment
  StepElement off_grid = constant_step(DyadicSet::cell(2, 1), Rational(1));
  CHECK_ERRC(step_to_csv(off_grid, 1), Errc::not_in_algebra);  // unit cuts a grid cell
  StepElement finite_carrier = constant_step(FiniteSubset::full(4), Rational(1));
  CHECK_ERRC(step_to_csv(finite_carrier, 1), Errc::bad_element);
  CHECK_ERRC(step_to_csv(x, 21), Errc::budget_exceeded);
}

TEST_CASE("json text round trips and rejects malformed input") {
  json j;
  j["a"] = 1;
  j["b"] = json::array({1, 2});
  std::string text = json_text(j);
  CHECK(text.back() == '\n');
  CHECK(parse_json(text) == j);

  CHECK_ERRC(parse_json("{ not json"), Errc::parse_error);
  CHECK_ERRC(parse_json(""), Errc::parse_error);
}

TEST_CASE("malformed records fail with a parse error") {
  CHECK_ERRC(element_from_json(parse_json("{\"kind\":\"nope\"}")), Errc::parse_error);
  CHECK_ERRC(element_from_json(parse_json("{\"kind\":\"dyadic\",\"level\":2}")), Errc::parse_error);
  CHECK_ERRC(element_from_json(parse_json("{\"kind\":\"dyadic\",\"level\":2,\"mask\":\"555\"}")),
             Errc::parse_error);
  CHECK_ERRC(element_from_json(parse_json("{\"kind\":\"finite\",\"universe\":3,\"members\":[7]}")),
             Errc::parse_error);
  CHECK_ERRC(element_from_json(parse_json("[]")), Errc::parse_error);

  const char* unit_record = "{\"kind\":\"dyadic\",\"level\":0,\"mask\":\"1\"}";
  CHECK_ERRC(step_from_json(parse_json(std::string("{\"unit\":") + unit_record +
                                       ",\"terms\":[[\"1\"]]}")),
             Errc::parse_error);
  CHECK_ERRC(step_from_json(parse_json(std::string("{\"unit\":") + unit_record +
                                       ",\"terms\":[\"x\"]}")),
             Errc::parse_error);
  CHECK_ERRC(family_from_json(parse_json(std::string("{\"unit\":") + unit_record + "}")),
             Errc::parse_error);
}

TEST_CASE("text files round trip and report io failures") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mal-serialize-suite";
  fs::create_directories(dir);

  std::string content = "line one\nline two\n";
  write_text_file((dir / "t.txt").string(), content);
  CHECK(read_text_file((dir / "t.txt").string()) == content);

  CHECK_ERRC(read_text_file((dir / "missing.txt").string()), Errc::io_error);
  CHECK_ERRC(write_text_file((dir / "no-such-subdir" / "t.txt").string(), "x"), Errc::io_error);

  fs::remove_all(dir);
}

TEST_SUITE_END();
