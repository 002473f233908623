#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "relplan/errors.hpp"
#include "relplan/rng.hpp"
#include "relplan/tdss_bridge.hpp"

#include <regex>
#include <string>

using namespace relplan;
using namespace relplan::tdss;
using feature_model::FeatureSpec;
using feature_model::ResolvedKeyword;
using scenario_engine::ScenarioProgram;

namespace {

const FeatureSpec& umc_feature()
{
    static const FeatureSpec spec =
        feature_model::parse_feature_file(fixtures::kUmcFeatureTagged, "umc.feature");
    return spec;
}

const ScenarioProgram& umc_program()
{
    static const ScenarioProgram program =
        scenario_engine::parse_scenario_spec(fixtures::kUmcScnFull);
    return program;
}

std::vector<StepSkeleton> bound_umc_skeletons()
{
    auto outcome = bind_steps(generate_step_skeletons(umc_feature()),
                              parse_bindings_file(fixtures::kUmcBind), umc_program());
    REQUIRE(outcome.unmatched_patterns.empty());
    return outcome.skeletons;
}

} // namespace

TEST_CASE("skeleton generation turns step text into anchored patterns")
{
    const auto skeletons = generate_step_skeletons(umc_feature());
    REQUIRE(skeletons.size() == 8);
    // first pattern of the second usage scenario
    CHECK(skeletons[4].pattern == "^the EVU user enters charging preferences$");
    CHECK(skeletons[4].resolved_keyword == ResolvedKeyword::When);
    CHECK(skeletons[4].scenario_index == 1);
    CHECK(skeletons[4].step_index == 0);
    CHECK(skeletons[5].pattern == "^the smartphone app calculates an optimized charging plan$");
    CHECK(skeletons[5].resolved_keyword == ResolvedKeyword::Then);
    for (const auto& s : skeletons)
        CHECK(!s.binding.has_value());
}

TEST_CASE("single step feature yields a single skeleton")
{
    const FeatureSpec spec =
        feature_model::parse_feature_file("Feature: X\n Scenario: s\n  When a\n");
    const auto skeletons = generate_step_skeletons(spec);
    REQUIRE(skeletons.size() == 1);
    CHECK(skeletons[0].pattern == "^a$");
    CHECK(!skeletons[0].binding.has_value());
}

TEST_CASE("patterns escape regex metacharacters and self-match")
{
    const FeatureSpec spec = feature_model::parse_feature_file(
        "Feature: X\n Scenario: s\n  When send (a+b) * [c] to $host.port^2?\n");
    const auto skeletons = generate_step_skeletons(spec);
    REQUIRE(skeletons.size() == 1);
    const std::regex re(skeletons[0].pattern);
    CHECK(std::regex_match(std::string("send (a+b) * [c] to $host.port^2?"), re));
    CHECK(!std::regex_match(std::string("send a+b * c to host.port^2?"), re));
}

TEST_CASE("every generated pattern matches its own source text")
{
    const auto& spec = umc_feature();
    const auto skeletons = generate_step_skeletons(spec);
    for (const auto& s : skeletons) {
        const std::string& source =
            spec.scenarios[s.scenario_index].steps[s.step_index].text;
        CHECK(std::regex_match(source, std::regex(s.pattern)));
    }
}

TEST_CASE("skeleton file format")
{
    const FeatureSpec spec = feature_model::parse_feature_file(
        "Feature: X\n Scenario: s\n  When a\n  Then b\n  And c\n");
    CHECK(skeletons_to_text(generate_step_skeletons(spec)) == "# scenario: s\n"
                                                              "When\t^a$\n"
                                                              "Then\t^b$\n"
                                                              "Then\t^c$\n");
}

TEST_CASE("bindings file parsing")
{
    const auto entries = parse_bindings_file(fixtures::kUmcBind);
    REQUIRE(entries.size() == 8);
    CHECK(entries[0].action == BindAction::Trigger);
    CHECK(entries[1].action == BindAction::Receive);
    CHECK(entries[4].pattern == "^the EVU user enters charging preferences$");
    CHECK(entries[4].event_expr == "EVU -> App.enterChargingPreferences()");

    CHECK(parse_bindings_file("").empty());
    CHECK(parse_bindings_file("# only a comment\n\n").empty());
    CHECK_THROWS_AS(parse_bindings_file("^a$\ttrigger\n"), ParseError);       // 2 fields
    CHECK_THROWS_AS(parse_bindings_file("^a$\tfire\tX.a()\n"), ParseError);   // bad action
    CHECK_THROWS_AS(parse_bindings_file("^a$\ttrigger\tX.a()\n^a$\ttrigger\tX.a()\n"),
                    ParseError); // duplicate pattern
}

TEST_CASE("bind_steps attaches bindings by exact pattern")
{
    SUBCASE("full corpus binds everything")
    {
        const auto skeletons = bound_umc_skeletons();
        for (const auto& s : skeletons) {
            REQUIRE(s.binding.has_value());
            const bool when = s.resolved_keyword == ResolvedKeyword::When;
            CHECK(s.binding->action == (when ? BindAction::Trigger : BindAction::Receive));
        }
        CHECK(skeletons[4].binding->event.owner == "App");
        CHECK(skeletons[4].binding->event.name == "enterChargingPreferences");
        CHECK(skeletons[5].binding->event.name == "calculateChargingPlan");
    }

    SUBCASE("empty bindings leave all skeletons unbound")
    {
        const auto outcome =
            bind_steps(generate_step_skeletons(umc_feature()), {}, umc_program());
        for (const auto& s : outcome.skeletons)
            CHECK(!s.binding.has_value());
    }

    SUBCASE("a partial bindings file binds exactly two skeletons")
    {
        const auto outcome = bind_steps(
            generate_step_skeletons(umc_feature()),
            parse_bindings_file(
                "^the EVU user enters charging preferences$\ttrigger\t"
                "EVU -> App.enterChargingPreferences()\n"
                "^the smartphone app calculates an optimized charging plan$\treceive\t"
                "App.calculateChargingPlan()\n"),
            umc_program());
        CHECK(outcome.unmatched_patterns.empty());
        std::size_t bound = 0;
        for (const auto& s : outcome.skeletons)
            bound += s.binding.has_value() ? 1 : 0;
        CHECK(bound == 2);
        CHECK(outcome.skeletons[4].binding->action == BindAction::Trigger);
        CHECK(outcome.skeletons[4].binding->event.name == "enterChargingPreferences");
        CHECK(outcome.skeletons[5].binding->action == BindAction::Receive);
        CHECK(outcome.skeletons[5].binding->event.name == "calculateChargingPlan");
    }

    SUBCASE("action/keyword mismatches are rejected")
    {
        CHECK_THROWS_AS(
            bind_steps(generate_step_skeletons(umc_feature()),
                       parse_bindings_file("^the EVU user enters charging preferences$\treceive\t"
                                           "App.calculateChargingPlan()\n"),
                       umc_program()),
            ParseError);
        CHECK_THROWS_AS(
            bind_steps(generate_step_skeletons(umc_feature()),
                       parse_bindings_file(
                           "^the smartphone app calculates an optimized charging plan$\ttrigger\t"
                           "EVU -> App.enterChargingPreferences()\n"),
                       umc_program()),
            ParseError);
    }

    SUBCASE("undeclared event is rejected with the bind line")
    {
        try {
            bind_steps(generate_step_skeletons(umc_feature()),
                       parse_bindings_file("# comment\n"
                                           "^the EVU user enters charging preferences$\ttrigger\t"
                                           "EVU -> App.warpDrive()\n"),
                       umc_program());
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.message().find("App.warpDrive") != std::string::npos);
        }
    }

    SUBCASE("entries that match no step are reported")
    {
        const auto outcome =
            bind_steps(generate_step_skeletons(umc_feature()),
                       parse_bindings_file("^no such step$\treceive\tApp.displayPrices()\n"),
                       umc_program());
        REQUIRE(outcome.unmatched_patterns.size() == 1);
        CHECK(outcome.unmatched_patterns[0] == "^no such step$");
    }
}

TEST_CASE("execute_test passes the full corpus and reproduces the plan trace")
{
    const TestReport report = execute_test(umc_feature(), bound_umc_skeletons(), umc_program(), 100);
    CHECK(report.all_passed());
    CHECK(report.passed == 2);
    CHECK(report.failed == 0);
    REQUIRE(report.scenarios.size() == 2);
    const auto& plan = report.scenarios[1];
    REQUIRE(plan.trace.size() == 4);
    CHECK(plan.trace[0].name == "enterChargingPreferences");
    CHECK(plan.trace[1].name == "calculateChargingPlan");
    CHECK(plan.trace[2].name == "chargingPlan");
    CHECK(plan.trace[3].name == "executeChargingPlan");
}

TEST_CASE("a missing rule turns the first Then into fail_not_observed")
{
    const ScenarioProgram broken =
        scenario_engine::parse_scenario_spec(fixtures::kUmcScnBroken);
    const auto outcome = bind_steps(generate_step_skeletons(umc_feature()),
                                    parse_bindings_file(fixtures::kUmcBind), broken);
    const TestReport report = execute_test(umc_feature(), outcome.skeletons, broken, 100);
    CHECK(!report.all_passed());
    REQUIRE(report.scenarios.size() == 2);
    CHECK(report.scenarios[0].verdict == Verdict::Pass);
    CHECK(report.scenarios[1].verdict == Verdict::FailNotObserved);
    CHECK(report.scenarios[1].failed_step == 1); // the first Then
}

TEST_CASE("unbound steps fail immediately and stop the scenario")
{
    // bind only the trigger of scenario 2; its Then steps stay unbound
    const auto outcome = bind_steps(
        generate_step_skeletons(umc_feature()),
        parse_bindings_file("^the EVU user enters charging preferences$\ttrigger\t"
                            "EVU -> App.enterChargingPreferences()\n"),
        umc_program());
    const TestReport report = execute_test(umc_feature(), outcome.skeletons, umc_program(), 100);
    REQUIRE(report.scenarios.size() == 2);
    CHECK(report.scenarios[0].verdict == Verdict::FailUnbound);
    CHECK(report.scenarios[0].failed_step == 0);
    CHECK(report.scenarios[0].trace.empty()); // nothing executed
    CHECK(report.scenarios[1].verdict == Verdict::FailUnbound);
    CHECK(report.scenarios[1].failed_step == 1);
    CHECK(report.scenarios[1].trace.size() == 1); // the injected trigger
}

TEST_CASE("livelocked programs exhaust the budget")
{
    const ScenarioProgram cycle = scenario_engine::parse_scenario_spec(
        "system X\n"
        "event X.go()\nevent X.ping()\nevent X.pong()\nevent X.never()\n"
        "scenario a on X.go {\n    request X.ping()\n}\n"
        "scenario b on X.ping {\n    request X.pong()\n}\n"
        "scenario c on X.pong {\n    request X.ping()\n}\n");
    const FeatureSpec spec = feature_model::parse_feature_file(
        "Feature: X\n Scenario: s\n  When kick\n  Then quiet\n");
    const auto outcome =
        bind_steps(generate_step_skeletons(spec),
                   parse_bindings_file("^kick$\ttrigger\tX.go()\n"
                                       "^quiet$\treceive\tX.never()\n"),
                   cycle);
    const TestReport report = execute_test(spec, outcome.skeletons, cycle, 25);
    REQUIRE(report.scenarios.size() == 1);
    CHECK(report.scenarios[0].verdict == Verdict::FailBudget);
    CHECK(report.scenarios[0].trace.size() == 26); // trigger + 25 selections
}

TEST_CASE("adding an unrelated rule never breaks a passing scenario")
{
    const std::string extended = fixtures::kUmcScnFull +
                                 "scenario extra on EVU -> App.requestEnergyPrices {\n"
                                 "    receive App.displayPrices()\n"
                                 "}\n";
    const ScenarioProgram program = scenario_engine::parse_scenario_spec(extended);
    const auto outcome = bind_steps(generate_step_skeletons(umc_feature()),
                                    parse_bindings_file(fixtures::kUmcBind), program);
    const TestReport report = execute_test(umc_feature(), outcome.skeletons, program, 100);
    CHECK(report.all_passed());
}

TEST_CASE("injected events appear in test order")
{
    const ScenarioProgram p = scenario_engine::parse_scenario_spec(
        "system X\nevent X.a()\nevent X.b()\nevent X.c()\n"
        "scenario s on X.c {\n    request X.c()\n}\n");
    const FeatureSpec spec = feature_model::parse_feature_file(
        "Feature: X\n Scenario: s\n  When one\n  When two\n  When three\n");
    const auto outcome =
        bind_steps(generate_step_skeletons(spec),
                   parse_bindings_file("^one$\ttrigger\tX.a()\n"
                                       "^two$\ttrigger\tX.b()\n"
                                       "^three$\ttrigger\tX.c()\n"),
                   p);
    const TestReport report = execute_test(spec, outcome.skeletons, p, 10);
    REQUIRE(report.scenarios.size() == 1);
    REQUIRE(report.scenarios[0].trace.size() == 3);
    CHECK(report.scenarios[0].trace[0].name == "a");
    CHECK(report.scenarios[0].trace[1].name == "b");
    CHECK(report.scenarios[0].trace[2].name == "c");
}

TEST_CASE("reports are deterministic for identical inputs")
{
    auto run = [&]() {
        const TestReport r = execute_test(umc_feature(), bound_umc_skeletons(), umc_program(), 100);
        std::string out;
        for (const auto& s : r.scenarios) {
            out += s.feature_id + "/" + s.scenario_name + "=" +
                   std::string(to_string(s.verdict)) + "\n";
            out += scenario_engine::format_trace(s.trace);
        }
        return out;
    };
    CHECK(run() == run());
}

TEST_CASE("budget must be positive")
{
    CHECK_THROWS_AS(execute_test(umc_feature(), {}, umc_program(), 0), std::invalid_argument);
}
