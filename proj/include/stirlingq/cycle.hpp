// cycle.hpp: the four strokes of the quantum Stirling cycle.
//
//   1 -> 2  barrier inserted at the hot bath   (isothermal, tau = r)
//   2 -> 3  hot bath swapped for the cold one  (isochoric)
//   3 -> 4  barrier removed at the cold bath   (isothermal, tau = 1)
//   4 -> 1  cold bath swapped for the hot one  (isochoric)

#pragma once

#include <optional>

#include "stirlingq/spectra.hpp"

namespace stirlingq {

struct CycleInput {
    Medium medium;
    double r;  // T_h / T_c, at least 1
    SeriesControl ctrl{};
};

// All heats and works in k_B T_c; heats count as absorbed when positive.
struct CycleResult {
    double Q12;
    double Q23;
    double Q34;
    double Q41;
    double W12;
    double W34;
    double W_net;
    double Q_in;
    // Present only in the engine regime (W_net > 0 and Q_in > 0).
    std::optional<double> eta;
    bool engine_regime;

    // Internal energies of the four corners, kept for diagnostics.
    double U1, U2, U3, U4;
};

CycleResult run_cycle(const CycleInput& input);

// 1 - 1/r.
double carnot(double r);

}  // namespace stirlingq
