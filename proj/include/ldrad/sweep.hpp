#pragma once

// Cartesian parameter sweeps over {v0, r0, Q2, r1} driven by a JSON spec:
//
//     {"axes":  {"v0": [0.01, 0.1],
//                "r0": {"min": 2, "max": 50, "count": 4, "spacing": "log"}},
//      "fixed": {"Q2": 1.0},
//      "output_dir": "runs/demo"}
//
// Each parameter appears at most once, as an axis or as a fixed value; v0 is
// required, r0 and Q2 are required unless the field comes from a tabulated
// profile, and r1 is optional (no inner checkpoint when absent). Rows come
// out in odometer order over the axes as declared, first axis slowest, so
// output is deterministic by construction. Cases are independent; a failed
// case is recorded in its row and never aborts the sweep.

#include "ldrad/bounds.hpp"
#include "ldrad/field.hpp"
#include "ldrad/integrator.hpp"
#include "ldrad/serialize.hpp"

#include "json.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldrad {

// Malformed spec document; the CLI maps this to a usage error.
struct SweepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::vector<std::pair<std::string, std::vector<double>>> axes;  // declaration order
    std::map<std::string, double> fixed;
    std::string output_dir;

    static SweepSpec parse(const ordered_json& doc);
    static SweepSpec parse_file(const std::string& path);
};

namespace detail {

inline bool known_sweep_param(const std::string& name) {
    return name == "v0" || name == "r0" || name == "Q2" || name == "r1";
}

inline std::vector<double> expand_axis(const std::string& name, const ordered_json& val) {
    std::vector<double> values;
    if (val.is_array()) {
        if (val.empty()) throw SweepError("axis " + name + " has no values");
        for (const auto& v : val) {
            if (!v.is_number()) throw SweepError("axis " + name + " holds a non-numeric value");
            values.push_back(v.get<double>());
        }
        return values;
    }
    if (!val.is_object())
        throw SweepError("axis " + name + " must be a value list or a range object");
    for (const char* key : {"min", "max", "count", "spacing"})
        if (!val.contains(key))
            throw SweepError("axis " + name + " range needs min, max, count, spacing");
    if (!val["min"].is_number() || !val["max"].is_number())
        throw SweepError("axis " + name + " range bounds must be numeric");
    if (!val["count"].is_number_integer() || val["count"].get<long long>() < 1)
        throw SweepError("axis " + name + " count must be a positive integer");
    const std::string spacing = val["spacing"].is_string() ? val["spacing"].get<std::string>() : "";
    if (spacing != "linear" && spacing != "log")
        throw SweepError("axis " + name + " spacing must be linear or log");
    const double lo = val["min"].get<double>();
    const double hi = val["max"].get<double>();
    const long long n = val["count"].get<long long>();
    if (spacing == "log" && (!(lo > 0.0) || !(hi > 0.0)))
        throw SweepError("axis " + name + " log spacing needs positive bounds");
    for (long long i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        values.push_back(spacing == "linear" ? lo + (hi - lo) * f
                                             : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * f));
    }
    return values;
}

}  // namespace detail

inline SweepSpec SweepSpec::parse(const ordered_json& doc) {
    if (!doc.is_object()) throw SweepError("spec must be a JSON object");
    for (const auto& item : doc.items()) {
        const std::string& key = item.key();
        if (key != "axes" && key != "fixed" && key != "output_dir")
            throw SweepError("unknown spec key: " + key);
    }
    if (!doc.contains("axes") || !doc["axes"].is_object() || doc["axes"].empty())
        throw SweepError("spec needs a nonempty axes object");

    SweepSpec spec;
    auto seen = [&](const std::string& name) {
        if (spec.fixed.count(name)) return true;
        for (const auto& ax : spec.axes)
            if (ax.first == name) return true;
        return false;
    };
    for (const auto& item : doc["axes"].items()) {
        if (!detail::known_sweep_param(item.key()))
            throw SweepError("unknown sweep parameter: " + item.key());
        if (seen(item.key())) throw SweepError("parameter declared twice: " + item.key());
        spec.axes.emplace_back(item.key(), detail::expand_axis(item.key(), item.value()));
    }
    if (doc.contains("fixed")) {
        if (!doc["fixed"].is_object()) throw SweepError("fixed must be an object");
        for (const auto& item : doc["fixed"].items()) {
            if (!detail::known_sweep_param(item.key()))
                throw SweepError("unknown sweep parameter: " + item.key());
            if (seen(item.key())) throw SweepError("parameter declared twice: " + item.key());
            if (!item.value().is_number())
                throw SweepError("fixed parameter " + item.key() + " must be numeric");
            spec.fixed[item.key()] = item.value().get<double>();
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) throw SweepError("output_dir must be a string");
        spec.output_dir = doc["output_dir"].get<std::string>();
    }
    return spec;
}

inline SweepSpec SweepSpec::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SweepError("cannot open spec file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw SweepError(std::string("spec is not valid JSON: ") + e.what());
    }
    return parse(doc);
}

struct SweepRow {
    double v0 = std::numeric_limits<double>::quiet_NaN();
    double r0 = std::numeric_limits<double>::quiet_NaN();
    double q2 = std::numeric_limits<double>::quiet_NaN();
    double r1 = 0.0;  // 0 means no inner checkpoint was set
    std::string outcome;
    double x_turn = std::numeric_limits<double>::quiet_NaN();
    double tau_turn = std::numeric_limits<double>::quiet_NaN();
    double t_turn = std::numeric_limits<double>::quiet_NaN();
    double v_turn = std::numeric_limits<double>::quiet_NaN();
    double runaway_rate = std::numeric_limits<double>::quiet_NaN();
    double min_bound_slack = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t successes = 0;
};

inline std::string sweep_csv(const SweepResult& result) {
    std::string out = "v0,r0,Q2,r1,outcome,x_turn,tau_turn,t_turn,v_turn,runaway_rate,min_bound_slack\n";
    for (const SweepRow& row : result.rows) {
        out += format_float(row.v0);
        out += ',';
        out += format_float(row.r0);
        out += ',';
        out += format_float(row.q2);
        out += ',';
        out += format_float(row.r1);
        out += ',';
        out += row.outcome;
        out += ',';
        out += format_float(row.x_turn);
        out += ',';
        out += format_float(row.tau_turn);
        out += ',';
        out += format_float(row.t_turn);
        out += ',';
        out += format_float(row.v_turn);
        out += ',';
        out += format_float(row.runaway_rate);
        out += ',';
        out += format_float(row.min_bound_slack);
        out += '\n';
    }
    return out;
}

// Minimum slack across the Lemma 2 and Lemma 3 checks with the checkpoint
// pair r1 = |x_turn|, r2 = (r0 + r1)/2; NaN when the run has no turn or the
// field is not the cutoff Coulomb profile.
inline double min_bound_slack_of(const Worldline& wl, const FieldModel& field, double v0) {
    if (field.kind() != FieldKind::CutoffCoulomb) return std::numeric_limits<double>::quiet_NaN();
    const Event* turn = wl.find_event(EventKind::Turn);
    if (!turn) return std::numeric_limits<double>::quiet_NaN();
    BoundQuery q;
    q.v0 = v0;
    q.r0 = field.r0();
    q.r1 = -turn->state.x;
    q.r2 = 0.5 * (q.r0 + q.r1);
    q.K = field.field_impulse(-q.r0, -q.r2);
    double worst = std::numeric_limits<double>::infinity();
    for (const BoundReport& rep : check_bounds_on_worldline(wl, field, q))
        worst = std::min(worst, rep.slack);
    return worst;
}

inline SweepResult run_sweep(const SweepSpec& spec,
                             const std::optional<FieldModel>& profile = std::nullopt) {
    auto provided = [&](const std::string& name) {
        if (spec.fixed.count(name)) return true;
        for (const auto& ax : spec.axes)
            if (ax.first == name) return true;
        return false;
    };
    if (!provided("v0")) throw SweepError("sweep needs v0 as an axis or fixed value");
    if (profile) {
        if (provided("r0") || provided("Q2"))
            throw SweepError("a tabulated profile fixes the field; r0 and Q2 cannot be swept");
    } else {
        if (!provided("r0") || !provided("Q2"))
            throw SweepError("sweep needs r0 and Q2 unless a profile is given");
    }

    SweepResult result;
    std::vector<std::size_t> idx(spec.axes.size(), 0);
    while (true) {
        std::map<std::string, double> params = spec.fixed;
        for (std::size_t a = 0; a < spec.axes.size(); ++a)
            params[spec.axes[a].first] = spec.axes[a].second[idx[a]];

        SweepRow row;
        row.v0 = params.at("v0");
        row.r0 = profile ? profile->r0() : params.at("r0");
        row.q2 = profile ? 0.0 : params.at("Q2");
        row.r1 = params.count("r1") ? params.at("r1") : 0.0;
        try {
            SimConfig cfg;
            cfg.field = profile ? *profile : FieldModel::cutoff_coulomb(row.q2, row.r0);
            cfg.v0 = row.v0;
            if (params.count("r1")) cfg.r1 = params.at("r1");
            const Worldline wl = integrate(cfg);
            row.outcome = to_string(wl.outcome);
            if (const Event* turn = wl.find_event(EventKind::Turn)) {
                row.x_turn = turn->state.x;
                row.tau_turn = turn->state.tau;
                row.t_turn = turn->state.t;
                row.v_turn = turn->state.v();
            }
            if (wl.find_event(EventKind::Exit)) {
                try {
                    row.runaway_rate = fit_runaway_rate(wl);
                } catch (const std::invalid_argument&) {
                }
            }
            row.min_bound_slack = min_bound_slack_of(wl, cfg.field, cfg.v0);
            row.ok = true;
            ++result.successes;
        } catch (const IntegrationError&) {
            row.outcome = "IntegrationFailure";
        } catch (const std::invalid_argument&) {
            row.outcome = "InvalidCase";
        } catch (const std::domain_error&) {
            row.outcome = "InvalidCase";
        }
        result.rows.push_back(std::move(row));

        std::size_t a = spec.axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < spec.axes[a].second.size()) break;
            idx[a] = 0;
            if (a == 0) return result;
        }
        if (spec.axes.empty()) return result;
    }
}

}  // namespace ldrad
