#include "ldrad/sweep.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

using ldrad::FieldModel;
using ldrad::ordered_json;
using ldrad::SweepError;
using ldrad::SweepSpec;

TEST_CASE("spec parsing expands lists and ranges") {
    const auto doc = ordered_json::parse(R"({
        "axes": {"v0": [0.01, 0.1],
                 "r0": {"min": 5, "max": 50, "count": 2, "spacing": "linear"},
                 "Q2": {"min": 1, "max": 100, "count": 3, "spacing": "log"}},
        "fixed": {"r1": 0.5},
        "output_dir": "runs"})");
    const auto spec = SweepSpec::parse(doc);
    REQUIRE(spec.axes.size() == 3);
    CHECK(spec.axes[0].first == "v0");
    CHECK(spec.axes[0].second == std::vector<double>{0.01, 0.1});
    CHECK(spec.axes[1].second == std::vector<double>{5.0, 50.0});
    REQUIRE(spec.axes[2].second.size() == 3);
    CHECK(spec.axes[2].second[0] == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(spec.axes[2].second[1] == Catch::Approx(10.0).epsilon(1e-14));
    CHECK(spec.axes[2].second[2] == Catch::Approx(100.0).epsilon(1e-14));
    CHECK(spec.fixed.at("r1") == 0.5);
    CHECK(spec.output_dir == "runs");

    const auto single = SweepSpec::parse(ordered_json::parse(
        R"({"axes": {"v0": {"min": 0.2, "max": 0.9, "count": 1, "spacing": "linear"}},
            "fixed": {"r0": 5, "Q2": 1}})"));
    CHECK(single.axes[0].second == std::vector<double>{0.2});
}

TEST_CASE("malformed specs are rejected") {
    auto bad = [](const char* text) {
        CHECK_THROWS_AS(SweepSpec::parse(ordered_json::parse(text)), SweepError);
    };
    bad(R"({"fixed": {"v0": 0.1}})");                                  // no axes
    bad(R"({"axes": {}})");                                            // empty axes
    bad(R"({"axes": {"v0": []}})");                                    // empty value list
    bad(R"({"axes": {"vel": [0.1]}})");                                // unknown parameter
    bad(R"({"axes": {"v0": [0.1]}, "fixed": {"v0": 0.2}})");           // declared twice
    bad(R"({"axes": {"v0": [0.1, "x"]}})");                            // non-numeric value
    bad(R"({"axes": {"v0": {"min": 0.1, "max": 1, "count": 2}}})");    // missing spacing
    bad(R"({"axes": {"v0": {"min": 0.1, "max": 1, "count": 0, "spacing": "linear"}}})");
    bad(R"({"axes": {"v0": {"min": 0.1, "max": 1, "count": 2, "spacing": "cubic"}}})");
    bad(R"({"axes": {"v0": {"min": 0, "max": 1, "count": 2, "spacing": "log"}}})");
    bad(R"({"axes": {"v0": [0.1]}, "extra": 1})");                     // unknown key
    bad(R"([1, 2])");                                                  // not an object
}

TEST_CASE("sweep requires a complete parameter set") {
    const auto no_v0 = SweepSpec::parse(
        ordered_json::parse(R"({"axes": {"r0": [5]}, "fixed": {"Q2": 1}})"));
    CHECK_THROWS_AS(ldrad::run_sweep(no_v0), SweepError);

    const auto no_field = SweepSpec::parse(ordered_json::parse(R"({"axes": {"v0": [0.1]}})"));
    CHECK_THROWS_AS(ldrad::run_sweep(no_field), SweepError);

    // a profile fixes the field, so r0/Q2 must not appear
    const auto with_r0 = SweepSpec::parse(
        ordered_json::parse(R"({"axes": {"v0": [0.1], "r0": [5]}, "fixed": {"Q2": 1}})"));
    const auto zero = FieldModel::tabulated({{1.0, 0.0}, {2.0, 0.0}});
    CHECK_THROWS_AS(ldrad::run_sweep(with_r0, zero), SweepError);
}

TEST_CASE("2x2 Coulomb sweep rows in declaration order") {
    const auto spec = SweepSpec::parse(ordered_json::parse(
        R"({"axes": {"v0": [0.01, 0.1], "r0": [5, 50]}, "fixed": {"Q2": 1}})"));
    const auto result = ldrad::run_sweep(spec);
    REQUIRE(result.rows.size() == 4);
    CHECK(result.successes == 4);

    const double want[4][2] = {{0.01, 5.0}, {0.01, 50.0}, {0.1, 5.0}, {0.1, 50.0}};
    for (int i = 0; i < 4; ++i) {
        CHECK(result.rows[i].v0 == want[i][0]);
        CHECK(result.rows[i].r0 == want[i][1]);
        CHECK(result.rows[i].q2 == 1.0);
        CHECK(result.rows[i].outcome == "TurnedAndEscaped");
        CHECK(result.rows[i].x_turn < 0.0);
        CHECK(result.rows[i].x_turn > -want[i][1]);
        CHECK(result.rows[i].tau_turn > 0.0);
        CHECK(result.rows[i].t_turn > 0.0);
        CHECK(std::abs(result.rows[i].v_turn) < 1e-9);
        CHECK(std::abs(result.rows[i].runaway_rate - 1.0) < 1e-5);
        CHECK(result.rows[i].min_bound_slack >= -1e-8);
        CHECK(result.rows[i].ok);
    }
}

TEST_CASE("force-free profile sweep reports capped runs") {
    // slow enough that the coast does not reach the collision guard within
    // tau_max; faster coasts legitimately end CollisionGuard
    const auto spec = SweepSpec::parse(ordered_json::parse(R"({"axes": {"v0": [0.01, 0.03]}})"));
    const auto zero = FieldModel::tabulated({{1.0, 0.0}, {2.0, 0.0}});
    const auto result = ldrad::run_sweep(spec, zero);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.successes == 2);
    for (const auto& row : result.rows) {
        CHECK(row.outcome == "HorizonCap");
        CHECK(row.r0 == 2.0);          // echoed from the profile
        CHECK(row.q2 == 0.0);          // no point charge behind a tabulated field
        CHECK(std::isnan(row.x_turn)); // never turns
        CHECK(std::isnan(row.runaway_rate));
        CHECK(row.ok);
    }
}

TEST_CASE("invalid cases are recorded in-row and do not abort") {
    const auto spec = SweepSpec::parse(ordered_json::parse(
        R"({"axes": {"v0": [0.5, 1.5]}, "fixed": {"r0": 5, "Q2": 1}})"));
    const auto result = ldrad::run_sweep(spec);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.successes == 1);
    CHECK(result.rows[0].outcome == "TurnedAndEscaped");
    CHECK(result.rows[1].outcome == "InvalidCase");
    CHECK(!result.rows[1].ok);
    CHECK(std::isnan(result.rows[1].x_turn));

    // inner checkpoint beyond the cutoff radius
    const auto bad_r1 = SweepSpec::parse(ordered_json::parse(
        R"({"axes": {"v0": [0.1]}, "fixed": {"r0": 2, "Q2": 1, "r1": 5}})"));
    const auto res2 = ldrad::run_sweep(bad_r1);
    REQUIRE(res2.rows.size() == 1);
    CHECK(res2.successes == 0);
    CHECK(res2.rows[0].outcome == "InvalidCase");
}

TEST_CASE("sweep CSV layout and determinism") {
    const auto spec = SweepSpec::parse(ordered_json::parse(
        R"({"axes": {"v0": [0.05, 0.2]}, "fixed": {"r0": 10, "Q2": 1, "r1": 1}})"));
    const std::string csv = ldrad::sweep_csv(ldrad::run_sweep(spec));
    CHECK(csv.rfind("v0,r0,Q2,r1,outcome,x_turn,tau_turn,t_turn,v_turn,runaway_rate,min_bound_slack\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("TurnedAndEscaped") != std::string::npos);
    CHECK(csv == ldrad::sweep_csv(ldrad::run_sweep(spec)));
}
