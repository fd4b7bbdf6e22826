#include "ldrad/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

using ldrad::SimState;
using ldrad::Worldline;

namespace {

SimState sample(double tau, double theta, double A) {
    SimState s;
    s.tau = tau;
    s.t = tau;
    s.x = -5.0 + 0.1 * tau;
    s.theta = theta;
    s.A = A;
    return s;
}

// what integration of a sign-flipped field would look like: the electron
// gains speed and A runs away toward +inf
Worldline flipped_sign_worldline() {
    Worldline wl;
    for (int i = 0; i <= 20; ++i) {
        const double tau = 0.1 * i;
        wl.samples.push_back(sample(tau, 0.05 + 0.01 * tau, 0.3 * tau));
    }
    wl.outcome = ldrad::Outcome::HorizonCap;
    return wl;
}

}  // namespace

TEST_CASE("predicates reject a sign-flipped trajectory") {
    const Worldline wl = flipped_sign_worldline();
    CHECK(!ldrad::verify_sign(wl));
    CHECK(!ldrad::verify_turned_and_escaped(wl, 5.0));
    CHECK(ldrad::worst_post_entry_accel(wl) > 0.0);
}

TEST_CASE("predicates reject shrinking acceleration magnitude") {
    Worldline wl;
    wl.samples.push_back(sample(0.0, 0.05, 0.0));
    wl.samples.push_back(sample(0.1, 0.05, -1.0));
    wl.samples.push_back(sample(0.2, 0.05, -0.5));  // |A| halves: backslide 0.5
    CHECK(!ldrad::verify_monotone_accel(wl));
    CHECK(ldrad::worst_accel_backslide(wl) == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("predicates accept a real admissible run") {
    ldrad::SimConfig cfg;
    cfg.field = ldrad::FieldModel::cutoff_coulomb(1.0, 10.0);
    cfg.v0 = 0.05;
    const Worldline wl = ldrad::integrate(cfg);
    CHECK(ldrad::verify_sign(wl));
    CHECK(ldrad::verify_monotone_accel(wl));
    CHECK(ldrad::verify_turned_and_escaped(wl, 10.0));
}

TEST_CASE("quick verification grid passes clean") {
    const auto rep = ldrad::run_verify(true);
    CHECK(rep.quick);
    CHECK(rep.grid.size() == 4);
    CHECK(rep.blocks.size() == 5);
    CHECK(rep.cases() == 9);
    CHECK(rep.failures() == 0);
    for (const auto& c : rep.grid) {
        CHECK(c.pass);
        CHECK(c.outcome == "TurnedAndEscaped");
        CHECK(std::isfinite(c.x_turn));
        CHECK(std::abs(c.runaway_rate - 1.0) < 1e-5);
    }
    for (const auto& b : rep.blocks) CHECK(b.pass);
}

TEST_CASE("verification report serializes deterministically") {
    const auto a = ldrad::run_verify(true).to_json();
    const auto b = ldrad::run_verify(true).to_json();
    CHECK(a.dump(2) == b.dump(2));

    CHECK(a["quick"] == true);
    REQUIRE(a["grid"].is_array());
    CHECK(a["grid"].size() == 4);
    const auto& rec = a["grid"][0];
    CHECK(rec.contains("Q2"));
    CHECK(rec.contains("r0"));
    CHECK(rec.contains("v0"));
    CHECK(rec.contains("outcome"));
    CHECK(rec.contains("x_turn"));
    CHECK(rec.contains("runaway_rate"));
    CHECK(rec.contains("checks"));
    CHECK(rec.contains("pass"));
    for (const char* block : {"theorem1", "theorem2", "oracle", "runaway", "kinematics"}) {
        REQUIRE(a.contains(block));
        CHECK(a[block].contains("checks"));
        CHECK(a[block]["pass"] == true);
    }
    CHECK(a["summary"]["cases"] == 9);
    CHECK(a["summary"]["failures"] == 0);
}
