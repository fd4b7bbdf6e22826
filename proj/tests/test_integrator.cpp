#include "ldrad/integrator.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace ldrad;

namespace {

FieldModel zero_field(double r0) {
    return FieldModel::tabulated({{r0 / 2, 0.0}, {r0, 0.0}});
}

SimConfig canonical() {
    SimConfig cfg;
    cfg.field = FieldModel::cutoff_coulomb(1.0, 10.0);
    cfg.v0 = 0.05;
    return cfg;
}

SimConfig deep() {
    // relativistic entry into a small strong region: penetrates far before turning
    SimConfig cfg;
    cfg.field = FieldModel::cutoff_coulomb(0.5, 2.0);
    cfg.v0 = 0.9;
    return cfg;
}

}  // namespace

TEST_CASE("derivative at hand-evaluated points") {
    const auto f = FieldModel::cutoff_coulomb(1.0, 10.0);
    const auto vac = derivative({0, 0, -20.0, 0.0, 0.0}, f);
    CHECK(vac[0] == 1.0);
    CHECK(vac[1] == 0.0);
    CHECK(vac[2] == 0.0);
    CHECK(vac[3] == 0.0);

    const auto forced = derivative({0, 0, -1.0, 0.0, 0.0}, f);  // Ebar(-1) = -1
    CHECK(forced[3] == Catch::Approx(-1.0).epsilon(1e-15));

    const auto moving = derivative({0, 0, -20.0, std::atanh(0.6), 0.0}, f);
    CHECK(moving[0] == Catch::Approx(1.25).epsilon(1e-14));
    CHECK(moving[1] == Catch::Approx(0.75).epsilon(1e-14));
    CHECK(moving[2] == 0.0);
    CHECK(moving[3] == 0.0);
}

TEST_CASE("force-free motion stays exactly inertial") {
    SimConfig cfg;
    cfg.field = zero_field(2.0);
    cfg.v0 = 0.6;
    cfg.tau_max = 2.0;
    const auto wl = integrate(cfg);

    CHECK(wl.outcome == Outcome::HorizonCap);
    CHECK(wl.find_event(EventKind::Turn) == nullptr);
    CHECK(wl.find_event(EventKind::HorizonCap) != nullptr);
    CHECK(wl.samples.back().tau == 2.0);

    const double theta0 = std::atanh(0.6);
    const double cel = 0.75;  // v0 * gamma(v0) = sinh(theta0)
    for (const auto& s : wl.samples) {
        CHECK(s.theta == theta0);  // A stays exactly zero, so theta never moves
        CHECK(s.A == 0.0);
        CHECK(std::abs(s.x - (-2.0 + cel * s.tau)) < 1e-10);
        CHECK(std::abs(s.t - 1.25 * s.tau) < 1e-10);
    }
}

TEST_CASE("initial sample and entry event are canonical") {
    const auto wl = integrate(canonical());
    const auto& s0 = wl.samples.front();
    CHECK(s0.tau == 0.0);
    CHECK(s0.t == 0.0);
    CHECK(s0.x == -10.0);
    CHECK(s0.theta == std::atanh(0.05));
    CHECK(s0.A == 0.0);
    CHECK(wl.events.front().kind == EventKind::Entry);
}

TEST_CASE("cutoff Coulomb run turns, escapes, and obeys the sign theorem") {
    const auto wl = integrate(canonical());
    CHECK(wl.outcome == Outcome::TurnedAndEscaped);

    const Event* turn = wl.find_event(EventKind::Turn);
    const Event* exit = wl.find_event(EventKind::Exit);
    REQUIRE(turn != nullptr);
    REQUIRE(exit != nullptr);
    CHECK(std::abs(turn->state.theta) < 1e-10);   // event refinement bar
    CHECK(std::abs(exit->state.x + 10.0) < 1e-10);
    CHECK(turn->state.tau < exit->state.tau);
    CHECK(turn->state.x > -10.0);
    CHECK(turn->state.x < 0.0);

    double prev_tau = -1.0, prev_absA = 0.0;
    for (std::size_t i = 0; i < wl.samples.size(); ++i) {
        const auto& s = wl.samples[i];
        CHECK(s.tau > prev_tau);  // strictly ordered samples
        prev_tau = s.tau;
        CHECK(std::isfinite(s.t));
        CHECK(std::isfinite(s.x));
        CHECK(std::isfinite(s.theta));
        CHECK(std::isfinite(s.A));
        // causality: theta finite means |v| = |tanh theta| < 1; as a double
        // v only saturates to 1 deep in the post-exit runaway
        CHECK(std::abs(s.v()) <= 1.0);
        if (s.tau <= exit->state.tau) CHECK(std::abs(s.v()) < 1.0);
        if (i > 0) CHECK(s.A < 0.0);  // strict negativity after the first step
        CHECK(std::abs(s.A) >= prev_absA * (1.0 - 1e-12));  // monotone magnitude
        prev_absA = std::abs(s.A);
        if (i > 0 && s.tau <= turn->state.tau)
            CHECK(s.v() < wl.samples[i - 1].v());  // slowing until the turn
    }

    // coordinate time moves strictly forward
    for (std::size_t i = 1; i < wl.samples.size(); ++i)
        CHECK(wl.samples[i].t > wl.samples[i - 1].t);
}

TEST_CASE("ReachR1 event and light-cone causality on the inbound leg") {
    auto cfg = deep();
    cfg.r1 = 1.5;
    const auto wl = integrate(cfg);
    CHECK(wl.outcome == Outcome::TurnedAndEscaped);

    const Event* r1ev = wl.find_event(EventKind::ReachR1);
    const Event* turn = wl.find_event(EventKind::Turn);
    REQUIRE(r1ev != nullptr);
    REQUIRE(turn != nullptr);
    CHECK(std::abs(r1ev->state.x + 1.5) < 1e-10);
    CHECK(r1ev->state.tau < turn->state.tau);
    CHECK(r1ev->state.theta > 0.0);

    // the x=-r2 crossing happens earlier (farther out); no superluminal gap
    const double r2 = 1.75;
    const auto c2 = inbound_crossing(wl, cfg.field, -r2);
    REQUIRE(c2.has_value());
    CHECK(std::abs(c2->x + r2) < 1e-9);
    CHECK(c2->tau < r1ev->state.tau);
    CHECK(r1ev->state.t - c2->t >= (r2 - 1.5) * (1.0 - 1e-9));
}

TEST_CASE("no crossing is reported when the turn is shallower") {
    const auto cfg = canonical();
    const auto wl = integrate(cfg);
    CHECK_FALSE(inbound_crossing(wl, cfg.field, -5.0).has_value());
}

TEST_CASE("Volterra quadrature reproduces the ODE acceleration") {
    const auto cfg = canonical();
    const auto wl = integrate(cfg);
    const Event* exit = wl.find_event(EventKind::Exit);
    REQUIRE(exit != nullptr);

    CHECK(volterra_accel(wl, cfg.field, 0.0) == 0.0);

    const auto oracle = volterra_accel_samples(wl, cfg.field);
    REQUIRE(oracle.size() == wl.samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < wl.samples.size(); ++i) {
        if (wl.samples[i].tau > exit->state.tau) break;
        if (wl.samples[i].tau > 0.0) CHECK(oracle[i] < 0.0);  // strictly negative
        const double rel = std::abs(wl.samples[i].A - oracle[i]) /
                           std::max(std::abs(oracle[i]), 1e-12);
        worst = std::max(worst, rel);
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("Volterra oracle vanishes without a field") {
    SimConfig cfg;
    cfg.field = zero_field(4.0);
    cfg.v0 = 0.3;
    cfg.tau_max = 3.0;
    const auto wl = integrate(cfg);
    const auto oracle = volterra_accel_samples(wl, cfg.field);
    for (double a : oracle) CHECK(a == 0.0);
    CHECK(volterra_accel(wl, cfg.field, 1.5) == 0.0);
    CHECK_THROWS_AS(volterra_accel(wl, cfg.field, 7.0), std::out_of_range);
}

TEST_CASE("post-exit runaway grows at unit rate") {
    auto cfg = canonical();
    cfg.post_exit_tau = 5.0;
    const auto wl = integrate(cfg);
    CHECK(std::abs(fit_runaway_rate(wl) - 1.0) <= 1e-6);
    CHECK(std::abs(post_exit_ratio(wl) - std::exp(1.0)) <= 1e-6 * std::exp(1.0));

    // the probe sample sits exactly one unit of proper time past Exit
    const Event* exit = wl.find_event(EventKind::Exit);
    bool probe = false;
    for (const auto& s : wl.samples)
        if (std::abs(s.tau - (exit->state.tau + 1.0)) <= 1e-12) probe = true;
    CHECK(probe);
}

TEST_CASE("runaway diagnostics require an Exit event") {
    SimConfig cfg;
    cfg.field = zero_field(2.0);
    cfg.v0 = 0.3;
    cfg.tau_max = 1.0;
    const auto wl = integrate(cfg);
    CHECK_THROWS_AS(fit_runaway_rate(wl), std::invalid_argument);
    CHECK_THROWS_AS(post_exit_ratio(wl), std::invalid_argument);
}

TEST_CASE("rapidity saturation caps the runaway without overflow") {
    const auto wl = integrate(canonical());  // default post_exit_tau = 10 is enough
    CHECK(wl.outcome == Outcome::TurnedAndEscaped);
    CHECK(wl.find_event(EventKind::RunawayCap) != nullptr);
    for (const auto& s : wl.samples) {
        CHECK(std::isfinite(s.t));
        CHECK(std::isfinite(s.x));
        CHECK(std::isfinite(s.A));
    }
}

TEST_CASE("zero field with a long horizon runs into the collision guard") {
    SimConfig cfg;
    cfg.field = zero_field(2.0);
    cfg.v0 = 0.6;
    const auto wl = integrate(cfg);
    CHECK(wl.outcome == Outcome::CollisionGuard);
    const Event* g = wl.find_event(EventKind::CollisionGuard);
    REQUIRE(g != nullptr);
    CHECK(std::abs(g->state.x + cfg.collision_eps * 2.0) < 1e-10);
    CHECK(wl.samples.back().x < 0.0);
}

TEST_CASE("absurd tolerances surface as an integration failure") {
    auto cfg = canonical();
    cfg.rel_tol = 1e-30;
    cfg.abs_tol = 1e-300;
    CHECK_THROWS_AS(integrate(cfg), IntegrationError);
}

TEST_CASE("config validation") {
    auto cfg = canonical();
    cfg.v0 = 1.5;
    CHECK_THROWS_AS(integrate(cfg), std::invalid_argument);
    cfg = canonical();
    cfg.v0 = 0.0;
    CHECK_THROWS_AS(integrate(cfg), std::invalid_argument);
    cfg = canonical();
    cfg.collision_eps = 2.0;
    CHECK_THROWS_AS(integrate(cfg), std::invalid_argument);
    cfg = canonical();
    cfg.r1 = 20.0;  // outside (0, r0)
    CHECK_THROWS_AS(integrate(cfg), std::invalid_argument);
}

TEST_CASE("coordinate acceleration matches central differences of v(t)") {
    auto cfg = canonical();
    cfg.post_exit_tau = 5.0;
    cfg.max_step = 0.002;
    const auto wl = integrate(cfg);
    const auto check = lemma1_residual(wl);
    CHECK(check.triples > 100);
    CHECK(check.max_rel_err < 1e-4);
}
