#include <doctest.h>

#include "bpmkit/duration.hpp"
#include "bpmkit/errors.hpp"
#include "bpmkit/rational.hpp"
#include "bpmkit/scenario.hpp"
#include "builder.hpp"
#include "fixtures.hpp"

using namespace bpmkit;
using bpmkit::testing::Builder;

TEST_CASE("duration parsing and rendering") {
  CHECK(Duration::parse("03:20:00").seconds() == 12000);
  CHECK(Duration::parse("3:20:00").seconds() == 12000);
  CHECK(Duration::parse("05:00").seconds() == 300);
  CHECK(Duration::parse("2:36:00").seconds() == 9360);
  CHECK(Duration::parse("0:00").seconds() == 0);
  CHECK(Duration::parse("100:00:01").seconds() == 360001);

  CHECK(Duration(32235).str() == "8:57:15");
  CHECK(Duration(0).str() == "0:00:00");
  CHECK(Duration(45).str() == "0:00:45");
  CHECK(Duration(360000).str() == "100:00:00");

  CHECK_THROWS_AS(Duration::parse("5"), std::invalid_argument);
  CHECK_THROWS_AS(Duration::parse("5:0"), std::invalid_argument);
  CHECK_THROWS_AS(Duration::parse("1:5:00"), std::invalid_argument);
  CHECK_THROWS_AS(Duration::parse("-1:00"), std::invalid_argument);
  CHECK_THROWS_AS(Duration::parse("1:00:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(Duration::parse("a:00"), std::invalid_argument);
  CHECK_THROWS_AS(Duration::parse("05:60"), std::out_of_range);
  CHECK_THROWS_AS(Duration::parse("1:60:00"), std::out_of_range);
  CHECK_THROWS_AS(Duration(-1), std::invalid_argument);

  SUBCASE("render then parse is the identity below 100 hours") {
    for (std::int64_t s = 0; s < 360000; ++s) {
      REQUIRE(Duration::parse(Duration(s).str()).seconds() == s);
    }
  }
  SUBCASE("deltas") {
    CHECK(format_delta(-690) == "-0:11:30");
    CHECK(format_delta(600) == "+0:10:00");
    CHECK(format_delta(0) == "0:00:00");
  }
}

TEST_CASE("decimal probabilities are exact") {
  CHECK(parse_decimal("0.05") == Rational(1, 20));
  CHECK(parse_decimal("1") == Rational(1));
  CHECK(parse_decimal(".5") == Rational(1, 2));
  CHECK(parse_decimal("0.95") + parse_decimal("0.05") == Rational(1));
  CHECK(to_string(Rational(128940, 4)) == "32235");
  CHECK(to_string(Rational(1, 3)) == "1/3");
  CHECK(round_half_up(Rational(1, 2)) == 1);
  CHECK(round_half_up(Rational(3, 2)) == 2);
  CHECK(round_half_up(Rational(149, 100)) == 1);
}

TEST_CASE("parse_scenario") {
  SUBCASE("table rows") {
    auto s = parse_scenario(R"(scenario "table-estimated-times"
[durations]
"Perform Fertilization" = 03:20:00
"Pay Contractor for Service" = 05:00   # trailing comment
"Check Field Geo-Data in FMIS *" = 05:00

[probabilities]
# gateway label / condition label / value - or a raw flow id
"Field Geo-Data up-to-date?" / "out-of-date" = 0.05
Flow_7 = 0.25
)");
    CHECK(s.name == "table-estimated-times");
    REQUIRE(s.durations.size() == 3);
    CHECK(s.durations[0].duration.seconds() == 12000);
    CHECK(s.durations[0].line == 3);
    CHECK(s.durations[1].duration.seconds() == 300);
    CHECK_FALSE(s.durations[0].is_glob());
    CHECK(s.durations[2].is_glob());
    REQUIRE(s.probabilities.size() == 2);
    const auto* ref = std::get_if<ConditionRef>(&s.probabilities[0].target);
    REQUIRE(ref);
    CHECK(ref->gateway_label == "Field Geo-Data up-to-date?");
    CHECK(ref->condition_label == "out-of-date");
    CHECK(s.probabilities[0].probability == Rational(1, 20));
    const auto* id = std::get_if<FlowIdRef>(&s.probabilities[1].target);
    REQUIRE(id);
    CHECK(id->flow == "Flow_7");
  }
  SUBCASE("range errors") {
    CHECK_THROWS_AS(parse_scenario("[probabilities]\np = 1.5\n"), ScenarioRangeError);
    CHECK_THROWS_AS(parse_scenario("[probabilities]\np = -0.1\n"), ScenarioRangeError);
    CHECK_THROWS_AS(parse_scenario("[durations]\n\"A\" = 05:61\n"), ScenarioRangeError);
  }
  SUBCASE("syntax errors carry the line") {
    try {
      parse_scenario("[durations]\n\"A\" = 05:00\n\"B\" 05:00\n");
      FAIL("expected a syntax error");
    } catch (const ScenarioSyntaxError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_scenario("\"A\" = 05:00\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[durations]\n\"A = 05:00\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[timings]\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[durations]\n\"A\" = soon\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[durations]\n\"\" = 05:00\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[durations]\n\"A\" = 05:00\n\"A\" = 06:00\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[probabilities]\np = half\n"), ScenarioSyntaxError);
    CHECK_THROWS_AS(parse_scenario("[durations]\nscenario \"late\"\n"), ScenarioSyntaxError);
  }
  SUBCASE("quoted strings keep any character but the quote") {
    auto s = parse_scenario("[durations]\n\"a # not = a comment [x] / y *\" = 01:00\n");
    REQUIRE(s.durations.size() == 1);
    CHECK(s.durations[0].matcher == "a # not = a comment [x] / y *");
  }
}

TEST_CASE("glob_match") {
  CHECK(glob_match("Check Field Geo-Data in FMIS *", "Check Field Geo-Data in FMIS 1"));
  CHECK(glob_match("Check * in FMIS *", "Check Field Geo-Data in FMIS 3"));
  CHECK(glob_match("*", ""));
  CHECK(glob_match("a*b*c", "abc"));
  CHECK_FALSE(glob_match("Check Field Geo-Data in FMIS *", "Check Field Geo-Data"));
  CHECK_FALSE(glob_match("a?c", "abc"));
  CHECK(glob_match("a?c", "a?c"));
}

TEST_CASE("bind against the fixtures") {
  auto s = testing::reference_scenario();
  for (const auto& c : {testing::as_is(), testing::to_be()}) {
    const auto& m = c.primary_process();
    auto bound = bind(s, m);
    std::size_t splits = 0;
    for (std::size_t i = 0; i < m.nodes().size(); ++i) {
      const auto& n = m.nodes()[i];
      if (n.is_task()) CHECK(bound.duration(i).seconds() > 0);
      else CHECK(bound.duration(i).seconds() == 0);
      if (!n.is_gateway() || m.outgoing(i).size() < 2) continue;
      ++splits;
      for (auto f : m.outgoing(i)) {
        const auto& flow = m.flows()[f];
        CHECK(bound.probability(n.id, flow.id) == (*flow.condition == "out-of-date" ? Rational(1, 20) : Rational(19, 20)));
      }
    }
    CHECK(splits == (m.task_count() == 18 ? 3u : 1u));
  }
  auto m = testing::as_is().primary_process();
  auto bound = bind(s, m);
  CHECK(bound.duration("Task_CheckFmis2").seconds() == 300);
  CHECK(bound.duration("Task_UpdateFmis3").seconds() == 900);
  CHECK(bound.duration("Task_PerformFertilization").seconds() == 12000);
  CHECK(bound.duration("Task_ContractHarvesting").seconds() == 420);
  CHECK(bound.duration("Event_SeedingInvoice").seconds() == 0);
}

TEST_CASE("bind errors") {
  Builder b;
  b.start("S").task("C", "Check data").xor_gw("G", "Ok?").task("U", "Update data").xor_gw("J").task("P", "Sell Beet to Wholesalers").end("E");
  b.chain({"S", "C", "G"}).flow("G", "U", "no").flow("G", "J", "yes").chain({"U", "J", "P", "E"});
  auto m = b.build();
  const std::string times = "[durations]\n\"Check data\" = 01:00\n\"Update data\" = 02:00\n";

  SUBCASE("missing duration lists the task") {
    try {
      bind(parse_scenario(times + "[probabilities]\n\"Ok?\" / \"no\" = 0.1\n"), m);
      FAIL("expected MissingDurationError");
    } catch (const MissingDurationError& e) {
      CHECK(e.labels() == std::vector<std::string>{"Sell Beet to Wholesalers"});
    }
  }
  const std::string full = times + "\"Sell *\" = 03:00\n";
  SUBCASE("complement for a binary split") {
    auto bound = bind(parse_scenario(full + "[probabilities]\n\"Ok?\" / \"no\" = 0.1\n"), m);
    CHECK(bound.probability("G", "F_G_J") == Rational(9, 10));
    CHECK(bound.duration("P").seconds() == 180);
  }
  SUBCASE("flow id rules win over condition rules") {
    auto bound = bind(parse_scenario(full + "[probabilities]\n\"Ok?\" / \"no\" = 0.1\nF_G_U = 0.3\n"), m);
    CHECK(bound.probability("G", "F_G_U") == Rational(3, 10));
  }
  SUBCASE("sum error") {
    CHECK_THROWS_AS(bind(parse_scenario(full + "[probabilities]\nF_G_U = 0.5\nF_G_J = 0.6\n"), m), SumError);
  }
  SUBCASE("missing probability") {
    CHECK_THROWS_AS(bind(parse_scenario(full), m), MissingProbabilityError);
  }
  SUBCASE("exact label beats glob") {
    auto bound = bind(parse_scenario(full + "\"*data\" = 09:00\n[probabilities]\nF_G_U = 0.5\n"), m);
    CHECK(bound.duration("C").seconds() == 60);
  }
  SUBCASE("ambiguous globs") {
    auto text = "[durations]\n\"* data\" = 01:00\n\"Check *\" = 02:00\n\"Update data\" = 02:00\n\"Sell *\" = 03:00\n"
                "[probabilities]\nF_G_U = 0.5\n";
    CHECK_THROWS_AS(bind(parse_scenario(text), m), AmbiguousMatchError);
    auto agree = "[durations]\n\"* data\" = 01:00\n\"Check *\" = 01:00\n\"Update data\" = 02:00\n\"Sell *\" = 03:00\n"
                 "[probabilities]\nF_G_U = 0.5\n";
    CHECK(bind(parse_scenario(agree), m).duration("C").seconds() == 60);
  }
}
