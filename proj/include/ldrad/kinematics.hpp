#pragma once

// Relativistic kinematics on a line: conversions among coordinate velocity,
// rapidity, gamma factor, and proper/coordinate acceleration, plus the
// (u, w) four-vector pair in 1+1 Minkowski space with metric diag(+,-).
//
// Rapidity theta is the canonical variable: v = tanh(theta),
// gamma = cosh(theta), u = (cosh theta, sinh theta), w = (sinh theta,
// cosh theta). w is the unit spacelike vector orthogonal to u pointing
// in the +x direction.

#include <array>
#include <cmath>
#include <stdexcept>

namespace ldrad {

using Vec2 = std::array<double, 2>;

// Unit normalization: the electron carries charge -1 and mass 2/3, with
// c = 1. These are fixed by construction and make the self-force time
// constant equal to one; nothing in the library lets you change them.
struct Normalization {
    static constexpr double electron_charge = -1.0;
    static constexpr double electron_mass = 2.0 / 3.0;
    static constexpr double light_speed = 1.0;
};

namespace detail {
// Subluminal guard. Velocities this close to 1 mean the integrator (or the
// caller) has blown up; fail loudly instead of clamping.
inline void require_subluminal(double v) {
    if (!(std::abs(v) < 1.0 - 1e-12))
        throw std::domain_error("velocity magnitude must stay below 1 - 1e-12");
}
}  // namespace detail

inline double rapidity_from_velocity(double v) {
    detail::require_subluminal(v);
    return std::atanh(v);
}

inline double velocity_from_rapidity(double theta) { return std::tanh(theta); }

inline double gamma_of(double v) {
    detail::require_subluminal(v);
    return 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
}

// v * gamma(v), the spatial four-velocity component; strictly increasing in v.
inline double celerity_of(double v) { return v * gamma_of(v); }

// A_c = A * gamma^-3 = A * (1 - v^2)^(3/2)
inline double coord_accel_from_proper(double A, double v) {
    detail::require_subluminal(v);
    const double one_minus_v2 = (1.0 - v) * (1.0 + v);
    return A * one_minus_v2 * std::sqrt(one_minus_v2);
}

inline double proper_accel_from_coord(double A_c, double v) {
    detail::require_subluminal(v);
    const double one_minus_v2 = (1.0 - v) * (1.0 + v);
    return A_c / (one_minus_v2 * std::sqrt(one_minus_v2));
}

// Overflow-safe A_c = A / cosh^3(theta). For |theta| beyond ~235 the result
// underflows to zero, which is the correct limit; cosh itself would overflow
// near 710, so go through exp of the negated triple rapidity.
inline double coord_accel_from_rapidity(double A, double theta) {
    const double at = std::abs(theta);
    if (at > 200.0) {
        // sech^3 = 8 e^{-3|t|} / (1 + e^{-2|t|})^3 ~ 8 e^{-3|t|}
        return A * 8.0 * std::exp(-3.0 * at);
    }
    const double ch = std::cosh(theta);
    return A / (ch * ch * ch);
}

// Minkowski inner product t_a t_b - x_a x_b with diag(+,-), evaluated with
// fma-compensated products so the cancellation between the two squares does
// not swamp a small result.
inline double minkowski_dot(const Vec2& a, const Vec2& b) {
    const double p = a[0] * b[0];
    const double pe = std::fma(a[0], b[0], -p);
    const double q = a[1] * b[1];
    const double qe = std::fma(a[1], b[1], -q);
    return (p - q) + (pe - qe);
}

// One worldline sample's kinematic content. All fields are views of theta.
struct KinematicState {
    double v = 0.0;
    double theta = 0.0;
    double gamma = 1.0;
    Vec2 u{1.0, 0.0};  // four-velocity (cosh, sinh)
    Vec2 w{0.0, 1.0};  // rightward unit spacelike vector (sinh, cosh)

    static KinematicState from_rapidity(double theta) {
        KinematicState s;
        s.theta = theta;
        s.v = std::tanh(theta);
        s.gamma = std::cosh(theta);
        const double sh = std::sinh(theta);
        s.u = {s.gamma, sh};
        s.w = {sh, s.gamma};
        return s;
    }

    static KinematicState from_velocity(double v) {
        return from_rapidity(rapidity_from_velocity(v));
    }

    // Metric identities evaluated in factored form. cosh^2 - sinh^2 naively
    // loses eps*cosh^2 to cancellation (3e-8 at theta = 10, far above the
    // identity's real residual), so evaluate it as e^theta * e^-theta.
    double norm_u() const { return std::exp(theta) * std::exp(-theta); }
    double norm_w() const { return -norm_u(); }
    // u.w = cosh*sinh - sinh*cosh, identical products: exactly zero.
    double dot_uw() const { return u[0] * w[0] - u[1] * w[1]; }
};

}  // namespace ldrad
