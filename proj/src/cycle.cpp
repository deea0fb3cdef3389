#include "stirlingq/cycle.hpp"

#include <cmath>
#include <string>

#include "stirlingq/errors.hpp"

namespace stirlingq {

namespace {

void require_ratio(double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
        throw ConfigError("temperature ratio T_h/T_c must be finite and >= 1, got " + std::to_string(r));
    }
}

}  // namespace

CycleResult run_cycle(const CycleInput& input) {
    require_ratio(input.r);
    input.ctrl.validate();
    const double r = input.r;

    const StageSpectrum free = stage_spectrum(input.medium, Stage::FreeHot);
    const StageSpectrum barrier = stage_spectrum(input.medium, Stage::BarrierHot);

    const PartitionMoments z1 = partition_moments(free, r, input.ctrl);
    const PartitionMoments z2 = partition_moments(barrier, r, input.ctrl);
    const PartitionMoments z3 = partition_moments(barrier, 1.0, input.ctrl);
    const PartitionMoments z4 = partition_moments(free, 1.0, input.ctrl);

    CycleResult c{};
    c.U1 = z1.mean_energy;
    c.U2 = z2.mean_energy;
    c.U3 = z3.mean_energy;
    c.U4 = z4.mean_energy;

    c.W12 = r * (z2.ln_z - z1.ln_z);
    c.W34 = z4.ln_z - z3.ln_z;
    c.Q12 = (c.U2 - c.U1) + c.W12;
    c.Q23 = c.U3 - c.U2;
    c.Q34 = (c.U4 - c.U3) + c.W34;
    c.Q41 = c.U1 - c.U4;
    // Stages 1/4 and 2/3 share a ground level, so the ground energies cancel
    // exactly in the net work and the input heat; form both from excess sums.
    const double hot_excess = r * (z2.ln_z_excess - z1.ln_z_excess);
    c.W_net = hot_excess + (z4.ln_z_excess - z3.ln_z_excess);
    c.Q_in = (z2.mean_excitation - z4.mean_excitation) + hot_excess;
    c.engine_regime = c.W_net > 0.0 && c.Q_in > 0.0;
    if (c.engine_regime) c.eta = c.W_net / c.Q_in;
    return c;
}

double carnot(double r) {
    require_ratio(r);
    return 1.0 - 1.0 / r;
}

}  // namespace stirlingq
