// thermo.hpp: canonical-ensemble quantities per particle, built on ln Z.

#pragma once

#include "stirlingq/spectra.hpp"

namespace stirlingq {

// Energies in k_B T_c, entropy and heat capacity in k_B.
struct ThermoPoint {
    double tau;
    double lnZ;
    double U;
    double S;
    double F;
    double C;
};

ThermoPoint thermo_point(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl);

struct HeatCapacityPeak {
    double tau_star;
    double C_max;
};

// Peak of C(tau) for one box segment of reduced length ell. The grid scan covers
// tau in [1e-3, 1e3] / ell^2 before golden-section refinement.
HeatCapacityPeak pib_heat_capacity_max(double ell, const SeriesControl& ctrl,
                                       Wavelength wavelength = Wavelength::Thermal);

}  // namespace stirlingq
