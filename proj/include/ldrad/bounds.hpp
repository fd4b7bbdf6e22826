#pragma once

// Analytic lower bounds on the radiated deceleration and the turn guarantees
// they imply, plus slack measurements against simulated worldlines.
//
// The chain is: the field impulse K̄ accumulated between entry and an
// intermediate radius −r2 forces |A| ≥ K̄/(v0 γ0) there, hence a coordinate
// deceleration ≥ (1−v0²)² K̄ / v0 acting over a width of at least (r2 − r1).
// Requiring the implied velocity loss to exceed v0 yields a threshold
// v0* = sqrt(c/(1+c)) with c = K̄ (r2 − r1); entering slower than v0*
// guarantees a turn before −r1. The cutoff Coulomb case admits a matching
// pointwise bound and a closed log-condition for the minimum cutoff radius.

#include "ldrad/field.hpp"
#include "ldrad/integrator.hpp"
#include "ldrad/kinematics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldrad {

enum class BoundKind {
    Lemma2Proper,
    Lemma2Coord,
    Lemma3Pointwise,
    ContraThreshold,
    Theorem2Cutoff,
};

inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::Lemma2Proper: return "Lemma2Proper";
        case BoundKind::Lemma2Coord: return "Lemma2Coord";
        case BoundKind::Lemma3Pointwise: return "Lemma3Pointwise";
        case BoundKind::ContraThreshold: return "ContraThreshold";
        case BoundKind::Theorem2Cutoff: return "Theorem2Cutoff";
    }
    return "?";
}

// Checkpoint geometry for the bound checks. K is the field impulse ∫|Ē| over
// [−r0, −r2], in the Ē = (3/2)E convention used throughout.
struct BoundQuery {
    double v0 = 0.0;
    double r0 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double K = 0.0;
};

// slack = measured − analytic; a nonnegative slack verifies the bound.
struct BoundReport {
    BoundKind bound_kind = BoundKind::Lemma2Proper;
    double analytic_value = 0.0;
    double measured_value = 0.0;
    double slack = 0.0;
};

namespace detail {

inline void require_velocity(double v0) {
    if (!(v0 > 0.0) || !(v0 < 1.0))
        throw std::domain_error("initial velocity must lie in (0,1)");
}

inline void require_impulse(double K) {
    if (!(K >= 0.0)) throw std::domain_error("field impulse must be nonnegative");
}

}  // namespace detail

// Lower bound on the proper acceleration magnitude |A| when the particle
// reaches −r2, given the impulse K accumulated since entry.
inline double lemma2_proper_bound(double v0, double K) {
    detail::require_velocity(v0);
    detail::require_impulse(K);
    return K / celerity_of(v0);
}

// Same bound transported to coordinate acceleration |A_c| = |dv/dt|. The
// factor (1−v0²)² is γ0⁻⁴: one γ0⁻³ from the proper-to-coordinate
// conversion at the worst admissible velocity, one γ0⁻¹ from bounding the
// celerity by v0 γ0.
inline double lemma2_coord_bound(double v0, double K) {
    detail::require_velocity(v0);
    detail::require_impulse(K);
    const double o = 1.0 - v0 * v0;
    return o * o * K / v0;
}

// Largest entry velocity for which the checkpoint pair (r1, r2) forces a turn
// before −r1: the v0 solving v0²/(1−v0²) = K (r2 − r1). Any v0 below the
// returned value makes the guaranteed velocity loss across [−r2, −r1] exceed
// the velocity available, so the particle must turn first.
inline double contra_threshold(double K, double r1, double r2) {
    if (!(K > 0.0)) throw std::domain_error("contradiction threshold needs positive impulse");
    if (!(r1 > 0.0) || !(r2 > r1))
        throw std::domain_error("checkpoint radii must satisfy 0 < r1 < r2");
    const double c = K * (r2 - r1);
    return std::sqrt(c / (1.0 + c));
}

struct Theorem1Result {
    double v0_star = 0.0;  // best guaranteed-turn entry velocity
    double r2_star = 0.0;  // checkpoint radius achieving it
};

// Best checkpoint choice: maximize contra_threshold over r2 ∈ (r1, r0) by
// golden-section search. Any single r2 already gives a sufficient condition;
// optimizing just sharpens the published threshold. For the cutoff Coulomb
// field c(r2) = Q²(1/r2 − 1/r0)(r2 − r1) which peaks at r2 = sqrt(r1 r0).
inline Theorem1Result theorem1_max_velocity(const FieldModel& field, double r1) {
    const HypothesisCheck hc = field.validate_theorem1_hypotheses();
    if (!hc.ok)
        throw std::invalid_argument("field fails the turn-theorem hypotheses: " + hc.diagnostic);
    const double r0 = field.r0();
    if (!(r1 > 0.0) || !(r1 < r0))
        throw std::invalid_argument("inner radius must satisfy 0 < r1 < r0");

    auto threshold = [&](double r2) {
        const double K = field.field_impulse(-r0, -r2);
        if (!(K > 0.0)) return 0.0;  // no impulse crossed yet, no guarantee
        return contra_threshold(K, r1, r2);
    };

    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = r1, b = r0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = threshold(c), fd = threshold(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = threshold(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = threshold(d);
        }
    }
    Theorem1Result out;
    out.r2_star = 0.5 * (a + b);
    out.v0_star = threshold(out.r2_star);
    if (!(out.v0_star > 0.0))
        throw std::invalid_argument("field impulse vanishes on every checkpoint interval");
    return out;
}

// Pointwise lower bound on |A_c| at position x for the cutoff Coulomb field:
// the impulse accrued from entry to x is q2 (−1/x − 1/r0), and the Lemma 2
// coordinate factor carries it to the acceleration.
inline double lemma3_pointwise_bound(double v0, double r0, double x, double q2 = 1.0) {
    detail::require_velocity(v0);
    if (!(r0 > 0.0)) throw std::domain_error("cutoff radius must be positive");
    if (!(x >= -r0) || !(x < 0.0))
        throw std::domain_error("position must lie in [-r0, 0)");
    const double o = 1.0 - v0 * v0;
    return (o * o / v0) * q2 * (-1.0 / x - 1.0 / r0);
}

// Smallest cutoff radius r0 for which the integrated Lemma 3 bound forces a
// velocity loss of at least v0 before −r1:
//
//     ((1−v0²)²/v0²) q2 [ln(r0/r1) − (r0−r1)/r0] ≥ v0.
//
// The left side is 0 at r0 = r1 and increases without bound, so a doubling
// bracket followed by bisection to 1e-10 relative finds the crossing.
inline double theorem2_min_cutoff(double v0, double r1, double q2) {
    detail::require_velocity(v0);
    if (!(r1 > 0.0)) throw std::domain_error("inner radius must be positive");
    if (!(q2 > 0.0)) throw std::domain_error("charge parameter must be positive");
    const double o = 1.0 - v0 * v0;
    const double pref = o * o * q2 / (v0 * v0);
    auto loss = [&](double r0) { return pref * (std::log(r0 / r1) - (r0 - r1) / r0); };

    double hi = 2.0 * r1;
    while (loss(hi) < v0) {
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw std::overflow_error("minimum cutoff exceeds the double range");
    }
    double lo = r1;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        (loss(mid) >= v0 ? hi : lo) = mid;
    }
    return hi;
}

// Measure the Lemma 2 bounds at the −r2 crossing and, for cutoff Coulomb
// fields, the Lemma 3 pointwise bound over the pre-turn samples. Report
// slack = measured − analytic per bound.
inline std::vector<BoundReport> check_bounds_on_worldline(const Worldline& wl,
                                                          const FieldModel& field,
                                                          const BoundQuery& q) {
    detail::require_velocity(q.v0);
    detail::require_impulse(q.K);
    if (!(q.r1 > 0.0) || !(q.r2 > q.r1) || !(q.r0 > q.r2))
        throw std::invalid_argument("bound query needs 0 < r1 < r2 < r0");

    const auto cross = inbound_crossing(wl, field, -q.r2);
    if (!cross)
        throw std::invalid_argument("worldline never crosses x = -r2 on the inbound leg");

    std::vector<BoundReport> out;
    {
        BoundReport rep;
        rep.bound_kind = BoundKind::Lemma2Proper;
        rep.analytic_value = lemma2_proper_bound(q.v0, q.K);
        rep.measured_value = std::abs(cross->A);
        rep.slack = rep.measured_value - rep.analytic_value;
        out.push_back(rep);
    }
    {
        BoundReport rep;
        rep.bound_kind = BoundKind::Lemma2Coord;
        rep.analytic_value = lemma2_coord_bound(q.v0, q.K);
        rep.measured_value = std::abs(cross->coord_accel());
        rep.slack = rep.measured_value - rep.analytic_value;
        out.push_back(rep);
    }
    if (field.kind() == FieldKind::CutoffCoulomb) {
        const Event* turn = wl.find_event(EventKind::Turn);
        const double tau_cap =
            turn ? turn->state.tau : std::numeric_limits<double>::infinity();
        double min_margin = std::numeric_limits<double>::infinity();
        for (const auto& s : wl.samples) {
            if (s.tau > tau_cap) break;
            if (!(s.x >= -q.r0) || !(s.x < 0.0)) continue;
            const double bound = lemma3_pointwise_bound(q.v0, q.r0, s.x, field.q2());
            min_margin = std::min(min_margin, std::abs(s.coord_accel()) - bound);
        }
        BoundReport rep;
        rep.bound_kind = BoundKind::Lemma3Pointwise;
        rep.analytic_value = 0.0;
        rep.measured_value = min_margin;
        rep.slack = min_margin;
        out.push_back(rep);
    }
    return out;
}

}  // namespace ldrad
