// analysis.hpp: limits, optimizers over T_h/T_c, zero-work lengths and sweeps.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stirlingq/cycle.hpp"

namespace stirlingq {

// (r - 1) ln 2: scaled oscillator work once hbar*omega >> k_B T_h.
double ho_low_temp_work(double r);

// ln((1 + e^m)/2) - m/2: scaled oscillator work as T_h/T_c -> infinity.
double ho_hot_limit_work(double m);

// (r - 1) ln(B + 1) for symmetric boxes; exactly 0 for an asymmetric split,
// whose ground state is non-degenerate.
double pib_low_temp_work(double r, int barriers, bool asymmetric = false);

struct OptimizeResult {
    double r_star;
    double value;
    std::pair<double, double> bracket;
    int iterations;
};

// Scan r geometrically over [1 + 1e-6, 1e4] (200 points), then golden-section
// to |dr| <= 1e-6. Throws AnalysisError when the best scan point is on the
// boundary (monotone profile).
OptimizeResult maximize_efficiency(const Medium& medium, const SeriesControl& ctrl);
OptimizeResult maximize_work(const Medium& medium, const SeriesControl& ctrl);

// Smallest box half-length at which W_net changes sign from positive, found by
// scanning ell in [1e-3, 5] and bisecting to 1e-6.
double zero_work_length(double r, int barriers, double asym_d, const SeriesControl& ctrl,
                        Wavelength wavelength = Wavelength::Thermal);

enum class SweepParam { R, U, Ell, Barriers, D };
enum class Quantity { W_net, Eta, EtaOverCarnot, Q12, Q23, Q34, Q41, Q_in };

std::string_view to_string(SweepParam p);
std::string_view to_string(Quantity q);
std::optional<SweepParam> parse_sweep_param(std::string_view name);
std::optional<Quantity> parse_quantity(std::string_view name);

struct SweepSpec {
    Medium medium;  // fixed values for every non-swept parameter
    double r{2.0};
    SweepParam param{SweepParam::R};
    std::vector<double> grid;
    std::vector<Quantity> quantities{Quantity::W_net, Quantity::Eta};

    // Throws ConfigError unless the grid is strictly monotone with >= 2 points.
    void validate() const;
};

struct SweepRow {
    double value;
    // One entry per requested quantity; empty where undefined (eta outside the
    // engine regime) or where the point failed.
    std::vector<std::optional<double>> quantities;
    bool engine_regime;
    std::optional<std::string> error;
};

std::optional<double> quantity_of(const CycleResult& c, Quantity q, double r);

std::vector<SweepRow> sweep(const SweepSpec& spec, const SeriesControl& ctrl);

}  // namespace stirlingq
