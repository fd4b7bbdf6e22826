// Tabulates the guaranteed-turn velocity threshold against the protected
// inner radius for a fixed cutoff Coulomb field.

#include "ldrad/ldrad.hpp"

#include <cstdio>

int main() {
    using namespace ldrad;

    const FieldModel field = FieldModel::cutoff_coulomb(1.0, 10.0);
    std::printf("#   r1     v0_star      r2_star\n");
    for (double r1 = 0.5; r1 < 5.0 + 1e-9; r1 += 0.5) {
        const Theorem1Result best = theorem1_max_velocity(field, r1);
        std::printf("%6.2f  %.8f  %10.6f\n", r1, best.v0_star, best.r2_star);
    }
    return 0;
}
