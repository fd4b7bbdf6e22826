#pragma once

// Radial field profiles on the negative x-axis.
//
// A FieldModel is either a cutoff Coulomb profile
//     |E(r)| = (2/3) Q^2 / r^2   for 0 < r <= r0,   0 for r > r0,
// or a tabulated profile given by (r, magnitude) knots with linear
// interpolation, constant below the first knot and zero beyond the last
// (whose radius defines r0). The field is radially outward, so on the
// negative axis the scalar field E(x) is <= 0. Ebar = (3/2) E absorbs the
// mass/charge normalization; the simulation and every bound run on Ebar.
//
// All models are immutable after construction and every operation is pure.

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldrad {

enum class FieldKind { CutoffCoulomb, Tabulated };

struct ProfileKnot {
    double r = 0.0;
    double magnitude = 0.0;
};

struct HypothesisCheck {
    bool ok = false;
    std::string diagnostic;
    explicit operator bool() const { return ok; }
};

class FieldModel {
  public:
    static FieldModel cutoff_coulomb(double q2, double r0) {
        if (!(q2 > 0.0) || !std::isfinite(q2))
            throw std::invalid_argument("cutoff Coulomb field needs Q^2 > 0");
        if (!(r0 > 0.0) || !std::isfinite(r0))
            throw std::invalid_argument("cutoff Coulomb field needs r0 > 0");
        FieldModel m;
        m.kind_ = FieldKind::CutoffCoulomb;
        m.q2_ = q2;
        m.r0_ = r0;
        return m;
    }

    // Knots must be strictly ascending in r with r > 0 and magnitude >= 0.
    // The last knot's radius becomes the cutoff r0.
    static FieldModel tabulated(std::vector<ProfileKnot> knots) {
        if (knots.empty()) throw std::invalid_argument("tabulated profile needs at least one knot");
        double prev = 0.0;
        for (const auto& k : knots) {
            if (!(k.r > prev) || !std::isfinite(k.r))
                throw std::invalid_argument("tabulated profile radii must be positive and strictly ascending");
            if (!(k.magnitude >= 0.0) || !std::isfinite(k.magnitude))
                throw std::invalid_argument("tabulated profile magnitudes must be >= 0 (field points outward)");
            prev = k.r;
        }
        FieldModel m;
        m.kind_ = FieldKind::Tabulated;
        m.r0_ = knots.back().r;
        m.knots_ = std::move(knots);
        return m;
    }

    // Two whitespace-separated columns (r, magnitude); '#' starts a comment.
    static FieldModel tabulated_from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open profile file: " + path);
        std::vector<ProfileKnot> knots;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            double r, mag;
            if (!(ls >> r)) continue;  // blank or comment-only line
            if (!(ls >> mag)) {
                throw std::runtime_error("profile file " + path + ": line " +
                                         std::to_string(lineno) + " needs two columns");
            }
            double extra;
            if (ls >> extra)
                throw std::runtime_error("profile file " + path + ": line " +
                                         std::to_string(lineno) + " has more than two columns");
            knots.push_back({r, mag});
        }
        if (knots.empty()) throw std::runtime_error("profile file " + path + " holds no knots");
        return tabulated(std::move(knots));
    }

    FieldKind kind() const { return kind_; }
    double q2() const { return q2_; }
    double r0() const { return r0_; }
    const std::vector<ProfileKnot>& knots() const { return knots_; }

    // |E(r)| for r > 0.
    double magnitude(double r) const {
        if (!(r > 0.0)) throw std::domain_error("field magnitude needs r > 0");
        if (r > r0_) return 0.0;
        if (kind_ == FieldKind::CutoffCoulomb) return (2.0 / 3.0) * q2_ / (r * r);
        return interpolate_magnitude(r);
    }

    // Scalar field E(x) on the negative axis; always <= 0 (outward field pulls
    // the test charge toward the origin through the q = -1 coupling).
    double scalar_field_raw(double x) const {
        if (!(x < 0.0)) throw std::domain_error("scalar field is defined for x < 0 only");
        if (kind_ == FieldKind::CutoffCoulomb) {
            if (x <= -r0_) return 0.0;
            return -2.0 * q2_ / (3.0 * x * x);
        }
        const double r = -x;
        if (r > r0_) return 0.0;
        return -interpolate_magnitude(r);
    }

    // Ebar(x) = (3/2) E(x); for the cutoff Coulomb interior this is -Q^2/x^2.
    double scalar_field(double x) const { return 1.5 * scalar_field_raw(x); }

    // Kbar = integral of |Ebar| over [a, b], with -r0 <= a <= b < 0.
    // Exact in closed form for both kinds (the tabulated integrand is
    // piecewise linear, so knot-wise trapezoids are exact).
    double field_impulse(double a, double b) const {
        if (!(b < 0.0)) throw std::domain_error("field impulse needs b < 0");
        if (!(a <= b)) throw std::domain_error("field impulse needs a <= b");
        if (a < -r0_ * (1.0 + 1e-9))
            throw std::domain_error("field impulse interval starts below -r0");
        a = std::max(a, -r0_);
        if (b <= -r0_) return 0.0;
        // weight in r-coordinates: r in [|b|, |a|]
        const double rlo = -b, rhi = -a;
        if (kind_ == FieldKind::CutoffCoulomb) return q2_ * (1.0 / rlo - 1.0 / rhi);
        return 1.5 * integrate_magnitude(rlo, rhi);
    }

    // Theorem hypotheses for the turn guarantee: outward-pointing magnitude
    // everywhere and strictly positive field mass in every outer shell
    // (r0 - eps, r0), probed on the ladder eps = r0 * 2^-k, k = 1..20.
    HypothesisCheck validate_theorem1_hypotheses() const {
        for (const auto& k : knots_) {
            if (k.magnitude < 0.0)
                return {false, "magnitude negative at r = " + std::to_string(k.r)};
        }
        for (int k = 1; k <= 20; ++k) {
            const double eps = r0_ * std::ldexp(1.0, -k);
            const double imp = field_impulse(-r0_, -(r0_ - eps));
            if (!(imp > 0.0)) {
                return {false, "no field mass in (r0 - eps, r0) for eps = r0*2^-" +
                                   std::to_string(k)};
            }
        }
        return {true, "ok"};
    }

  private:
    FieldModel() = default;

    double interpolate_magnitude(double r) const {
        // clamp below the first knot, linear in between; caller keeps r <= r0
        if (r <= knots_.front().r) return knots_.front().magnitude;
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            if (r <= knots_[i].r) {
                const auto& lo = knots_[i - 1];
                const auto& hi = knots_[i];
                const double s = (r - lo.r) / (hi.r - lo.r);
                return lo.magnitude + s * (hi.magnitude - lo.magnitude);
            }
        }
        return knots_.back().magnitude;
    }

    // Exact integral of the piecewise-linear magnitude over [rlo, rhi].
    double integrate_magnitude(double rlo, double rhi) const {
        double total = 0.0;
        auto segment = [&](double lo, double hi) {
            lo = std::max(lo, rlo);
            hi = std::min(hi, rhi);
            if (hi <= lo) return;
            total += 0.5 * (interpolate_magnitude(lo) + interpolate_magnitude(hi)) * (hi - lo);
        };
        segment(0.0, knots_.front().r);  // constant-extension region
        for (std::size_t i = 1; i < knots_.size(); ++i) segment(knots_[i - 1].r, knots_[i].r);
        return total;
    }

    FieldKind kind_ = FieldKind::CutoffCoulomb;
    double q2_ = 1.0;
    double r0_ = 1.0;
    std::vector<ProfileKnot> knots_;
};

}  // namespace ldrad
