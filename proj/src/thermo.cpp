#include "stirlingq/thermo.hpp"

#include <cmath>
#include <vector>

#include "stirlingq/errors.hpp"
#include "stirlingq/scalar_search.hpp"

namespace stirlingq {

ThermoPoint thermo_point(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl) {
    const PartitionMoments m = partition_moments(spectrum, tau, ctrl);
    ThermoPoint p{};
    p.tau = tau;
    p.lnZ = m.ln_z;
    p.U = m.mean_energy;
    p.S = m.ln_z + m.mean_energy / tau;
    p.F = -tau * m.ln_z;
    p.C = m.energy_variance / (tau * tau);
    return p;
}

HeatCapacityPeak pib_heat_capacity_max(double ell, const SeriesControl& ctrl, Wavelength wavelength) {
    if (!(ell > 0.0) || !std::isfinite(ell)) throw ConfigError("ell must be positive");
    const StageSpectrum segment(
        {Ladder{Ladder::Shape::Quadratic, 0.0, box_level_constant(ell, wavelength), 1}}, ClosedForm::PibTheta);
    const auto heat_capacity = [&](double tau) { return thermo_point(segment, tau, ctrl).C; };

    const double scale = 1.0 / (ell * ell);
    const std::vector<double> grid = geometric_grid(1e-3 * scale, 1e3 * scale, 400);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double tau : grid) values.push_back(heat_capacity(tau));
    const int i = argmax_finite(values);
    if (i <= 0 || i + 1 >= static_cast<int>(grid.size())) {
        throw AnalysisError("heat capacity maximum not bracketed inside the tau scan");
    }
    // 1e-8 in units of the peak location keeps tau_star * ell^2 scale free
    const GoldenResult g = golden_section_max(heat_capacity, grid[i - 1], grid[i + 1], 1e-8 * grid[i]);
    return HeatCapacityPeak{g.x, g.value};
}

}  // namespace stirlingq
