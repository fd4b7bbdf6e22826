#pragma once

// CSV and JSON views of worldlines, events, and bound reports. Floats are
// printed as %.16e (17 significant digits, scientific), which round-trips
// every double and keeps repeated runs byte-identical; JSON documents use
// insertion-ordered keys for the same reason.

#include "ldrad/bounds.hpp"
#include "ldrad/field.hpp"
#include "ldrad/integrator.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldrad {

using ordered_json = nlohmann::ordered_json;

inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// One row per sample: tau,t,x,v,theta,A,Ac,Ebar with Ē evaluated at the
// sample position (zero outside the cutoff).
inline std::string worldline_csv(const Worldline& wl, const FieldModel& field) {
    std::string out = "tau,t,x,v,theta,A,Ac,Ebar\n";
    for (const SimState& s : wl.samples) {
        out += format_float(s.tau);
        out += ',';
        out += format_float(s.t);
        out += ',';
        out += format_float(s.x);
        out += ',';
        out += format_float(s.v());
        out += ',';
        out += format_float(s.theta);
        out += ',';
        out += format_float(s.A);
        out += ',';
        out += format_float(s.coord_accel());
        out += ',';
        out += format_float(s.x < 0.0 ? field.scalar_field(s.x) : 0.0);
        out += '\n';
    }
    return out;
}

inline ordered_json events_json(const Worldline& wl) {
    ordered_json doc;
    doc["outcome"] = to_string(wl.outcome);
    doc["events"] = ordered_json::array();
    for (const Event& e : wl.events) {
        ordered_json rec;
        rec["kind"] = to_string(e.kind);
        rec["tau"] = e.state.tau;
        rec["t"] = e.state.t;
        rec["x"] = e.state.x;
        rec["v"] = e.state.v();
        rec["A"] = e.state.A;
        doc["events"].push_back(rec);
    }
    return doc;
}

inline std::string bound_reports_csv(const std::vector<BoundReport>& reports) {
    std::string out = "bound_kind,analytic,measured,slack\n";
    for (const BoundReport& rep : reports) {
        out += to_string(rep.bound_kind);
        out += ',';
        out += format_float(rep.analytic_value);
        out += ',';
        out += format_float(rep.measured_value);
        out += ',';
        out += format_float(rep.slack);
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace ldrad
