// Integrates one slow entry into a cutoff Coulomb field and prints where the
// electron turns around.

#include "ldrad/ldrad.hpp"

#include <cstdio>

int main() {
    using namespace ldrad;

    SimConfig cfg;
    cfg.field = FieldModel::cutoff_coulomb(1.0, 10.0);
    cfg.v0 = 0.05;

    const Worldline wl = integrate(cfg);
    std::printf("outcome       %s\n", to_string(wl.outcome));
    if (const Event* turn = wl.find_event(EventKind::Turn))
        std::printf("turn          x = %.12g at tau = %.12g\n", turn->state.x, turn->state.tau);
    if (const Event* exit_ev = wl.find_event(EventKind::Exit))
        std::printf("exit          t = %.12g, v = %.12g\n", exit_ev->state.t, exit_ev->state.v());
    std::printf("runaway rate  %.12g (the vacuum value is exactly 1)\n", fit_runaway_rate(wl));
    return 0;
}
