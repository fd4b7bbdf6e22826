// Command-line front end: single runs, parameter sweeps, analytic bounds,
// and the verification suite. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 numerical failure.

#include "ldrad/ldrad.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunFlags {
    double q2 = 1.0;
    double r0 = 10.0;
    double v0 = 0.05;
    double rel_tol = 1e-10;
    double tau_max = 50.0;
    double post_exit_tau = 10.0;
    std::optional<double> r1;
    std::string out = ".";
    std::string profile;
};

void add_field_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--q2", f.q2, "charge-squared parameter of the cutoff Coulomb field");
    cmd->add_option("--r0", f.r0, "cutoff radius (entry at x = -r0)");
    cmd->add_option("--profile", f.profile, "tabulated field profile file (overrides --q2/--r0)");
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    add_field_flags(cmd, f);
    cmd->add_option("--v0", f.v0, "entry velocity in (0,1)");
    cmd->add_option("--r1", f.r1, "inner checkpoint radius (records a ReachR1 event)");
    cmd->add_option("--rel-tol", f.rel_tol, "integrator relative tolerance");
    cmd->add_option("--tau-max", f.tau_max, "proper-time horizon");
    cmd->add_option("--post-exit-tau", f.post_exit_tau, "proper time to follow past the exit");
    cmd->add_option("--out", f.out, "output directory");
}

ldrad::FieldModel make_field(const RunFlags& f) {
    if (!f.profile.empty()) return ldrad::FieldModel::tabulated_from_file(f.profile);
    return ldrad::FieldModel::cutoff_coulomb(f.q2, f.r0);
}

void write_out(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    ldrad::write_text_file((std::filesystem::path(dir) / name).string(), content);
}

int cmd_simulate(const RunFlags& f) {
    ldrad::SimConfig cfg;
    cfg.field = make_field(f);
    cfg.v0 = f.v0;
    cfg.rel_tol = f.rel_tol;
    cfg.tau_max = f.tau_max;
    cfg.post_exit_tau = f.post_exit_tau;
    cfg.r1 = f.r1;
    const ldrad::Worldline wl = ldrad::integrate(cfg);

    write_out(f.out, "worldline.csv", ldrad::worldline_csv(wl, cfg.field));
    write_out(f.out, "events.json", ldrad::events_json(wl).dump(2) + "\n");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double x_turn = nan, v_turn = nan, rate = nan;
    if (const ldrad::Event* turn = wl.find_event(ldrad::EventKind::Turn)) {
        x_turn = turn->state.x;
        v_turn = turn->state.v();
    }
    if (wl.find_event(ldrad::EventKind::Exit)) {
        try {
            rate = ldrad::fit_runaway_rate(wl);
        } catch (const std::invalid_argument&) {
        }
    }
    std::printf("outcome=%s x_turn=%s v_turn=%s runaway_rate=%s\n", ldrad::to_string(wl.outcome),
                ldrad::format_float(x_turn).c_str(), ldrad::format_float(v_turn).c_str(),
                ldrad::format_float(rate).c_str());
    return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_flag,
              const std::string& profile_path) {
    const ldrad::SweepSpec spec = ldrad::SweepSpec::parse_file(spec_path);
    std::optional<ldrad::FieldModel> profile;
    if (!profile_path.empty()) profile = ldrad::FieldModel::tabulated_from_file(profile_path);
    const ldrad::SweepResult result = ldrad::run_sweep(spec, profile);

    std::string dir = !out_flag.empty() ? out_flag
                      : !spec.output_dir.empty() ? spec.output_dir
                                                 : std::string(".");
    write_out(dir, "sweep.csv", ldrad::sweep_csv(result));
    std::printf("sweep: %zu cases, %zu succeeded\n", result.rows.size(), result.successes);
    return result.successes > 0 ? kExitOk : kExitNumerical;
}

void print_table(const std::vector<std::pair<std::string, double>>& rows) {
    for (const auto& [name, value] : rows)
        std::printf("%-10s %s\n", name.c_str(), ldrad::format_float(value).c_str());
}

void maybe_write_reports(const std::string& out, const std::vector<ldrad::BoundReport>& reports) {
    if (out.empty()) return;
    write_out(out, "bounds.csv", ldrad::bound_reports_csv(reports));
}

int cmd_bounds_theorem1(const RunFlags& f) {
    const auto field = make_field(f);
    if (!f.r1) throw std::domain_error("theorem1 needs --r1");
    const auto best = ldrad::theorem1_max_velocity(field, *f.r1);
    print_table({{"v0_star", best.v0_star}, {"r2_star", best.r2_star}});
    ldrad::BoundReport rep;
    rep.bound_kind = ldrad::BoundKind::ContraThreshold;
    rep.analytic_value = best.v0_star;
    rep.measured_value = std::numeric_limits<double>::quiet_NaN();
    rep.slack = std::numeric_limits<double>::quiet_NaN();
    maybe_write_reports(f.out, {rep});
    return kExitOk;
}

int cmd_bounds_theorem2(double v0, double r1, double q2, const std::string& out) {
    const double r0 = ldrad::theorem2_min_cutoff(v0, r1, q2);
    print_table({{"min_r0", r0}});
    ldrad::BoundReport rep;
    rep.bound_kind = ldrad::BoundKind::Theorem2Cutoff;
    rep.analytic_value = r0;
    rep.measured_value = std::numeric_limits<double>::quiet_NaN();
    rep.slack = std::numeric_limits<double>::quiet_NaN();
    maybe_write_reports(out, {rep});
    return kExitOk;
}

int cmd_bounds_lemma2(double v0, double k, const std::string& out) {
    const double proper = ldrad::lemma2_proper_bound(v0, k);
    const double coord = ldrad::lemma2_coord_bound(v0, k);
    print_table({{"proper", proper}, {"coord", coord}});
    std::vector<ldrad::BoundReport> reports(2);
    reports[0].bound_kind = ldrad::BoundKind::Lemma2Proper;
    reports[0].analytic_value = proper;
    reports[0].measured_value = std::numeric_limits<double>::quiet_NaN();
    reports[0].slack = std::numeric_limits<double>::quiet_NaN();
    reports[1].bound_kind = ldrad::BoundKind::Lemma2Coord;
    reports[1].analytic_value = coord;
    reports[1].measured_value = std::numeric_limits<double>::quiet_NaN();
    reports[1].slack = std::numeric_limits<double>::quiet_NaN();
    maybe_write_reports(out, reports);
    return kExitOk;
}

int cmd_bounds_lemma3(double v0, double r0, double x, double q2, const std::string& out) {
    const double bound = ldrad::lemma3_pointwise_bound(v0, r0, x, q2);
    print_table({{"bound", bound}});
    ldrad::BoundReport rep;
    rep.bound_kind = ldrad::BoundKind::Lemma3Pointwise;
    rep.analytic_value = bound;
    rep.measured_value = std::numeric_limits<double>::quiet_NaN();
    rep.slack = std::numeric_limits<double>::quiet_NaN();
    maybe_write_reports(out, {rep});
    return kExitOk;
}

int cmd_verify(bool quick, const std::string& out) {
    const ldrad::VerifyReport rep = ldrad::run_verify(quick);
    write_out(out, "verify.json", rep.to_json().dump(2) + "\n");
    std::printf("verify: %zu cases, %zu failures\n", rep.cases(), rep.failures());
    return rep.failures() == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial Lorentz-Dirac trajectories in a cutoff field"};
    app.require_subcommand(1);

    RunFlags sim_flags;
    CLI::App* sim = app.add_subcommand("simulate", "integrate one trajectory");
    add_run_flags(sim, sim_flags);

    std::string sweep_spec, sweep_out, sweep_profile;
    CLI::App* sweep = app.add_subcommand("sweep", "run a Cartesian parameter sweep");
    sweep->add_option("spec", sweep_spec, "JSON sweep spec file")->required();
    sweep->add_option("--out", sweep_out, "output directory (overrides spec output_dir)");
    sweep->add_option("--profile", sweep_profile, "tabulated field profile file");

    CLI::App* bounds = app.add_subcommand("bounds", "print analytic bounds and thresholds");
    bounds->require_subcommand(1);

    RunFlags t1_flags;
    t1_flags.out.clear();  // bounds subcommands write a CSV only when --out is given
    CLI::App* b_t1 = bounds->add_subcommand("theorem1", "best guaranteed-turn entry velocity");
    add_field_flags(b_t1, t1_flags);
    b_t1->add_option("--r1", t1_flags.r1, "inner radius the turn must precede")->required();
    b_t1->add_option("--out", t1_flags.out, "write bounds.csv to this directory");

    double t2_v0 = 0.1, t2_r1 = 1.0, t2_q2 = 1.0;
    std::string t2_out;
    CLI::App* b_t2 = bounds->add_subcommand("theorem2", "minimum cutoff radius for a guaranteed turn");
    b_t2->add_option("--v0", t2_v0, "entry velocity")->required();
    b_t2->add_option("--r1", t2_r1, "inner radius the turn must precede")->required();
    b_t2->add_option("--q2", t2_q2, "charge-squared parameter");
    b_t2->add_option("--out", t2_out, "write bounds.csv to this directory");

    double l2_v0 = 0.5, l2_k = 0.0;
    std::string l2_out;
    CLI::App* b_l2 = bounds->add_subcommand("lemma2", "acceleration lower bounds from the impulse");
    b_l2->add_option("--v0", l2_v0, "entry velocity")->required();
    b_l2->add_option("--k", l2_k, "field impulse over the crossed interval")->required();
    b_l2->add_option("--out", l2_out, "write bounds.csv to this directory");

    double l3_v0 = 0.5, l3_r0 = 10.0, l3_x = -1.0, l3_q2 = 1.0;
    std::string l3_out;
    CLI::App* b_l3 = bounds->add_subcommand("lemma3", "pointwise coordinate-acceleration bound");
    b_l3->add_option("--v0", l3_v0, "entry velocity")->required();
    b_l3->add_option("--r0", l3_r0, "cutoff radius")->required();
    b_l3->add_option("--x", l3_x, "position in [-r0, 0)")->required();
    b_l3->add_option("--q2", l3_q2, "charge-squared parameter");
    b_l3->add_option("--out", l3_out, "write bounds.csv to this directory");

    bool quick = false;
    std::string verify_out = ".";
    CLI::App* ver = app.add_subcommand("verify", "run the theorem verification suite");
    ver->add_flag("--quick", quick, "run the reduced grid");
    ver->add_option("--out", verify_out, "output directory for verify.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out, sweep_profile);
        if (bounds->parsed()) {
            if (b_t1->parsed()) return cmd_bounds_theorem1(t1_flags);
            if (b_t2->parsed()) return cmd_bounds_theorem2(t2_v0, t2_r1, t2_q2, t2_out);
            if (b_l2->parsed()) return cmd_bounds_lemma2(l2_v0, l2_k, l2_out);
            if (b_l3->parsed()) return cmd_bounds_lemma3(l3_v0, l3_r0, l3_x, l3_q2, l3_out);
        }
        if (ver->parsed()) return cmd_verify(quick, verify_out);
    } catch (const ldrad::IntegrationError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const ldrad::SweepError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
