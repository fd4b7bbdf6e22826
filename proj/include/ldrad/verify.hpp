#pragma once

// Canonical verification suite: re-checks the proven guarantees on a fixed
// grid of cutoff Coulomb runs and emits a machine-readable report. Every
// input is hard-coded or derived from a fixed RNG seed, and floats are
// serialized through the deterministic JSON dump, so two invocations of the
// same binary produce byte-identical reports.
//
// The per-run predicates take a finished Worldline, so tests can feed them
// hand-built counterexamples (for instance a sign-flipped field) and watch
// them fail.

#include "ldrad/bounds.hpp"
#include "ldrad/field.hpp"
#include "ldrad/integrator.hpp"
#include "ldrad/kinematics.hpp"
#include "ldrad/serialize.hpp"
#include "ldrad/sweep.hpp"

#include "json.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ldrad {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;  // measured diagnostic behind the verdict
};

// Largest post-entry A; the sign theorem wants it strictly negative.
inline double worst_post_entry_accel(const Worldline& wl) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < wl.samples.size(); ++i)
        worst = std::max(worst, wl.samples[i].A);
    return worst;
}

inline bool verify_sign(const Worldline& wl) { return worst_post_entry_accel(wl) < 0.0; }

// Largest relative drop of |A| between consecutive samples (0 when |A| is
// nondecreasing throughout).
inline double worst_accel_backslide(const Worldline& wl) {
    double worst = 0.0;
    for (std::size_t i = 1; i < wl.samples.size(); ++i) {
        const double prev = std::abs(wl.samples[i - 1].A);
        const double cur = std::abs(wl.samples[i].A);
        if (cur < prev && prev > 0.0) worst = std::max(worst, (prev - cur) / prev);
    }
    return worst;
}

inline bool verify_monotone_accel(const Worldline& wl, double tol = 1e-12) {
    return worst_accel_backslide(wl) <= tol;
}

inline bool verify_turned_and_escaped(const Worldline& wl, double r0) {
    if (wl.outcome != Outcome::TurnedAndEscaped) return false;
    const Event* turn = wl.find_event(EventKind::Turn);
    return turn && turn->state.x > -r0 && turn->state.x < 0.0;
}

struct VerifyGridCase {
    double q2 = 0.0;
    double r0 = 0.0;
    double v0 = 0.0;
    std::string outcome;
    double x_turn = std::numeric_limits<double>::quiet_NaN();
    double runaway_rate = std::numeric_limits<double>::quiet_NaN();
    std::vector<VerifyCheck> checks;
    bool pass = true;
};

struct VerifyBlock {
    std::string name;
    std::vector<VerifyCheck> checks;
    bool pass = true;
};

struct VerifyReport {
    bool quick = false;
    std::vector<VerifyGridCase> grid;
    std::vector<VerifyBlock> blocks;

    std::size_t cases() const { return grid.size() + blocks.size(); }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : grid) n += !c.pass;
        for (const auto& b : blocks) n += !b.pass;
        return n;
    }

    ordered_json to_json() const {
        ordered_json doc;
        doc["quick"] = quick;
        doc["grid"] = ordered_json::array();
        for (const auto& c : grid) {
            ordered_json rec;
            rec["Q2"] = c.q2;
            rec["r0"] = c.r0;
            rec["v0"] = c.v0;
            rec["outcome"] = c.outcome;
            rec["x_turn"] = c.x_turn;
            rec["runaway_rate"] = c.runaway_rate;
            rec["checks"] = ordered_json::array();
            for (const auto& ck : c.checks) {
                ordered_json e;
                e["name"] = ck.name;
                e["pass"] = ck.pass;
                e["value"] = ck.value;
                rec["checks"].push_back(e);
            }
            rec["pass"] = c.pass;
            doc["grid"].push_back(rec);
        }
        for (const auto& b : blocks) {
            ordered_json rec;
            rec["checks"] = ordered_json::array();
            for (const auto& ck : b.checks) {
                ordered_json e;
                e["name"] = ck.name;
                e["pass"] = ck.pass;
                e["value"] = ck.value;
                rec["checks"].push_back(e);
            }
            rec["pass"] = b.pass;
            doc[b.name] = rec;
        }
        ordered_json summary;
        summary["cases"] = cases();
        summary["failures"] = failures();
        doc["summary"] = summary;
        return doc;
    }
};

namespace detail {

inline void seal(VerifyGridCase& c) {
    for (const auto& ck : c.checks) c.pass = c.pass && ck.pass;
}

inline void seal(VerifyBlock& b) {
    for (const auto& ck : b.checks) b.pass = b.pass && ck.pass;
}

// NaN-safe: a NaN slack must count as a failure, so compare negated.
inline bool at_least(double value, double floor_) { return !(value < floor_) && std::isfinite(value); }

}  // namespace detail

inline VerifyReport run_verify(bool quick) {
    VerifyReport rep;
    rep.quick = quick;

    const std::vector<double> q2s = quick ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 2.0};
    const std::vector<double> r0s = quick ? std::vector<double>{2.0, 10.0} : std::vector<double>{2.0, 10.0, 100.0};
    const std::vector<double> v0s = quick ? std::vector<double>{0.1, 0.5} : std::vector<double>{0.01, 0.1, 0.5, 0.9};

    for (double q2 : q2s)
        for (double r0 : r0s)
            for (double v0 : v0s) {
                SimConfig cfg;
                cfg.field = FieldModel::cutoff_coulomb(q2, r0);
                cfg.v0 = v0;
                const Worldline wl = integrate(cfg);

                VerifyGridCase c;
                c.q2 = q2;
                c.r0 = r0;
                c.v0 = v0;
                c.outcome = to_string(wl.outcome);
                if (const Event* turn = wl.find_event(EventKind::Turn)) c.x_turn = turn->state.x;
                if (wl.find_event(EventKind::Exit)) c.runaway_rate = fit_runaway_rate(wl);

                const double worst_A = worst_post_entry_accel(wl);
                c.checks.push_back({"sign", worst_A < 0.0, worst_A});
                const double backslide = worst_accel_backslide(wl);
                c.checks.push_back({"monotone_accel", backslide <= 1e-12, backslide});
                c.checks.push_back({"turned_and_escaped", verify_turned_and_escaped(wl, r0), c.x_turn});
                const double slack = min_bound_slack_of(wl, cfg.field, v0);
                c.checks.push_back({"bound_slack", detail::at_least(slack, -1e-8), slack});
                detail::seal(c);
                rep.grid.push_back(std::move(c));
            }

    {
        VerifyBlock b;
        b.name = "theorem1";
        std::mt19937 rng(0x1d5eedu);
        std::uniform_real_distribution<double> uq2(0.3, 3.0), ur0(2.0, 50.0), ufrac(0.05, 0.5);
        const int triples = quick ? 3 : 10;
        for (int i = 0; i < triples; ++i) {
            const double q2 = uq2(rng);
            const double r0 = ur0(rng);
            const double r1 = r0 * ufrac(rng);
            const auto best = theorem1_max_velocity(FieldModel::cutoff_coulomb(q2, r0), r1);
            SimConfig cfg;
            cfg.field = FieldModel::cutoff_coulomb(q2, r0);
            cfg.v0 = 0.9 * best.v0_star;
            cfg.r1 = r1;
            const Worldline wl = integrate(cfg);
            const Event* turn = wl.find_event(EventKind::Turn);
            // turn strictly left of -r1: the electron never gets closer than
            // r1 to the source
            const double margin = turn ? -r1 - turn->state.x : -1.0;
            b.checks.push_back({"turn_before_r1_" + std::to_string(i), turn && margin > 0.0, margin});
        }
        detail::seal(b);
        rep.blocks.push_back(std::move(b));
    }

    {
        VerifyBlock b;
        b.name = "theorem2";
        const std::vector<std::pair<double, double>> combos =
            quick ? std::vector<std::pair<double, double>>{{0.1, 0.5}, {0.1, 1.0}}
                  : std::vector<std::pair<double, double>>{{0.05, 0.5}, {0.05, 1.0}, {0.1, 0.5},
                                                          {0.1, 1.0},  {0.3, 0.5},  {0.3, 1.0}};
        int i = 0;
        for (const auto& [v0, r1] : combos) {
            const double r0 = theorem2_min_cutoff(v0, r1, 1.0);
            SimConfig cfg;
            cfg.field = FieldModel::cutoff_coulomb(1.0, r0);
            cfg.v0 = v0;
            cfg.r1 = r1;
            const Worldline wl = integrate(cfg);
            const Event* turn = wl.find_event(EventKind::Turn);
            const double margin = turn ? -r1 - turn->state.x : -1.0;
            b.checks.push_back({"turn_before_r1_" + std::to_string(i++), turn && margin > 0.0, margin});
        }
        detail::seal(b);
        rep.blocks.push_back(std::move(b));
    }

    {
        VerifyBlock b;
        b.name = "oracle";
        const std::vector<std::array<double, 3>> configs =
            quick ? std::vector<std::array<double, 3>>{{1.0, 10.0, 0.05}, {0.5, 2.0, 0.1}}
                  : std::vector<std::array<double, 3>>{{1.0, 10.0, 0.05},
                                                       {1.0, 10.0, 0.5},
                                                       {0.5, 2.0, 0.1},
                                                       {2.0, 2.0, 0.3},
                                                       {1.0, 100.0, 0.9}};
        int i = 0;
        for (const auto& [q2, r0, v0] : configs) {
            SimConfig cfg;
            cfg.field = FieldModel::cutoff_coulomb(q2, r0);
            cfg.v0 = v0;
            const Worldline wl = integrate(cfg);
            const std::vector<double> quad = volterra_accel_samples(wl, cfg.field);
            const Event* ex = wl.find_event(EventKind::Exit);
            double worst = 0.0;
            for (std::size_t k = 0; k < wl.samples.size(); ++k) {
                if (ex && wl.samples[k].tau > ex->state.tau) break;
                const double diff = std::abs(wl.samples[k].A - quad[k]);
                worst = std::max(worst, diff / std::max(std::abs(wl.samples[k].A), 1e-12));
            }
            b.checks.push_back({"volterra_rel_err_" + std::to_string(i++), worst <= 1e-6, worst});
        }
        detail::seal(b);
        rep.blocks.push_back(std::move(b));
    }

    {
        VerifyBlock b;
        b.name = "runaway";
        const std::vector<std::array<double, 3>> configs =
            quick ? std::vector<std::array<double, 3>>{{1.0, 10.0, 0.05}, {0.5, 5.0, 0.1}}
                  : std::vector<std::array<double, 3>>{{1.0, 10.0, 0.05},
                                                       {0.5, 5.0, 0.1},
                                                       {1.0, 5.0, 0.2},
                                                       {2.0, 10.0, 0.3},
                                                       {0.5, 2.0, 0.05}};
        int i = 0;
        for (const auto& [q2, r0, v0] : configs) {
            SimConfig cfg;
            cfg.field = FieldModel::cutoff_coulomb(q2, r0);
            cfg.v0 = v0;
            cfg.post_exit_tau = 5.0;
            const Worldline wl = integrate(cfg);
            const double rate = fit_runaway_rate(wl);
            const double ratio = post_exit_ratio(wl);
            b.checks.push_back(
                {"rate_dev_" + std::to_string(i), std::abs(rate - 1.0) <= 1e-6, std::abs(rate - 1.0)});
            b.checks.push_back({"ratio_dev_" + std::to_string(i),
                                std::abs(ratio - std::exp(1.0)) <= 1e-6,
                                std::abs(ratio - std::exp(1.0))});
            ++i;
        }
        detail::seal(b);
        rep.blocks.push_back(std::move(b));
    }

    {
        VerifyBlock b;
        b.name = "kinematics";
        double worst_identity = 0.0;
        for (double theta = -10.0; theta <= 10.0 + 1e-12; theta += 0.01) {
            const KinematicState ks = KinematicState::from_rapidity(theta);
            worst_identity = std::max(worst_identity, std::abs(ks.norm_u() - 1.0));
            worst_identity = std::max(worst_identity, std::abs(ks.norm_w() + 1.0));
            worst_identity = std::max(worst_identity, std::abs(ks.dot_uw()));
        }
        b.checks.push_back({"four_vector_identities", worst_identity <= 1e-9, worst_identity});

        SimConfig cfg;
        cfg.field = FieldModel::cutoff_coulomb(1.0, 10.0);
        cfg.v0 = 0.05;
        cfg.post_exit_tau = 5.0;
        cfg.max_step = 0.002;
        const Worldline wl = integrate(cfg);
        const Lemma1Check l1 = lemma1_residual(wl);
        b.checks.push_back({"coord_accel_fd", l1.triples > 100 && l1.max_rel_err < 1e-4, l1.max_rel_err});
        detail::seal(b);
        rep.blocks.push_back(std::move(b));
    }

    return rep;
}

}  // namespace ldrad
