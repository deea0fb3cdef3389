#include "stirlingq/analysis.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "stirlingq/errors.hpp"
#include "stirlingq/scalar_search.hpp"

namespace stirlingq {

namespace {

constexpr double kRatioLo = 1.0 + 1e-6;
constexpr double kRatioHi = 1e4;
constexpr int kRatioPoints = 200;
constexpr double kRatioTol = 1e-6;

constexpr double kEllLo = 1e-3;
constexpr double kEllHi = 5.0;
constexpr int kEllPoints = 400;
constexpr double kEllTol = 1e-6;
// Work below this is treated as indistinguishable from zero when looking for
// the positive-work region (asymmetric boxes vanish there to rounding level).
constexpr double kPositiveWork = 1e-9;

OptimizeResult maximize_over_ratio(const std::function<double(double)>& objective, const char* what) {
    const std::vector<double> grid = geometric_grid(kRatioLo, kRatioHi, kRatioPoints);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double r : grid) values.push_back(objective(r));
    const int i = argmax_finite(values);
    if (i < 0) throw AnalysisError(std::string(what) + ": no engine-regime point in the T_h/T_c scan");
    if (i == 0) {
        throw AnalysisError(std::string(what) + ": monotone profile, maximum at lower boundary T_h/T_c = " +
                            std::to_string(grid.front()));
    }
    if (i + 1 == static_cast<int>(grid.size())) {
        throw AnalysisError(std::string(what) + ": monotone profile, maximum at upper boundary T_h/T_c = " +
                            std::to_string(grid.back()));
    }
    const double lo = grid[i - 1];
    const double hi = grid[i + 1];
    const GoldenResult g = golden_section_max(objective, lo, hi, kRatioTol);
    return OptimizeResult{g.x, g.value, {lo, hi}, g.iterations};
}

double work_at(const Medium& m, double r, const SeriesControl& ctrl) { return run_cycle({m, r, ctrl}).W_net; }

struct QuantityName {
    Quantity q;
    std::string_view name;
};

constexpr std::array<QuantityName, 8> kQuantityNames{{
    {Quantity::W_net, "W_net"},
    {Quantity::Eta, "eta"},
    {Quantity::EtaOverCarnot, "eta_over_carnot"},
    {Quantity::Q12, "Q12"},
    {Quantity::Q23, "Q23"},
    {Quantity::Q34, "Q34"},
    {Quantity::Q41, "Q41"},
    {Quantity::Q_in, "Q_in"},
}};

struct ParamName {
    SweepParam p;
    std::string_view name;
};

constexpr std::array<ParamName, 5> kParamNames{{
    {SweepParam::R, "r"},
    {SweepParam::U, "u"},
    {SweepParam::Ell, "ell"},
    {SweepParam::Barriers, "B"},
    {SweepParam::D, "d"},
}};

int as_barrier_count(double v) {
    if (!(v >= 1.0) || std::floor(v) != v || v > 1e6) {
        throw ConfigError("barrier count must be a positive integer, got " + std::to_string(v));
    }
    return static_cast<int>(v);
}

}  // namespace

double ho_low_temp_work(double r) {
    if (!(r >= 1.0)) throw ConfigError("T_h/T_c must be >= 1");
    return (r - 1.0) * std::numbers::ln2;
}

double ho_hot_limit_work(double m) {
    if (!(m > 0.0)) throw ConfigError("oscillator frequency multiple m must be positive");
    // ln((1 + e^m)/2) = m + log1p(e^{-m}) - ln 2
    return m / 2.0 + std::log1p(std::exp(-m)) - std::numbers::ln2;
}

double pib_low_temp_work(double r, int barriers, bool asymmetric) {
    if (!(r >= 1.0)) throw ConfigError("T_h/T_c must be >= 1");
    if (barriers < 1) throw ConfigError("barrier count must be at least one");
    if (asymmetric) return 0.0;
    return (r - 1.0) * std::log(static_cast<double>(barriers) + 1.0);
}

OptimizeResult maximize_efficiency(const Medium& medium, const SeriesControl& ctrl) {
    return maximize_over_ratio(
        [&](double r) {
            const CycleResult c = run_cycle({medium, r, ctrl});
            return c.eta ? *c.eta : -std::numeric_limits<double>::infinity();
        },
        "efficiency");
}

OptimizeResult maximize_work(const Medium& medium, const SeriesControl& ctrl) {
    return maximize_over_ratio([&](double r) { return work_at(medium, r, ctrl); }, "work");
}

double zero_work_length(double r, int barriers, double asym_d, const SeriesControl& ctrl, Wavelength wavelength) {
    if (!(r > 1.0)) throw ConfigError("zero-work length needs T_h/T_c > 1");
    const Medium base = Medium::box(1.0, barriers, asym_d, wavelength);
    const auto work = [&](double ell) { return work_at(base.with_ell(ell), r, ctrl); };

    const std::vector<double> grid = geometric_grid(kEllLo, kEllHi, kEllPoints);
    bool seen_positive = false;
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = work(grid[i]);
        if (seen_positive && w <= 0.0) {
            return bisect(work, prev, grid[i], kEllTol).x;
        }
        if (w > kPositiveWork) seen_positive = true;
        prev = grid[i];
    }
    throw AnalysisError("no positive-to-negative work crossing for ell in [1e-3, 5]");
}

std::string_view to_string(SweepParam p) {
    for (const auto& n : kParamNames) {
        if (n.p == p) return n.name;
    }
    return "?";
}

std::string_view to_string(Quantity q) {
    for (const auto& n : kQuantityNames) {
        if (n.q == q) return n.name;
    }
    return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
    for (const auto& n : kParamNames) {
        if (n.name == name) return n.p;
    }
    return std::nullopt;
}

std::optional<Quantity> parse_quantity(std::string_view name) {
    for (const auto& n : kQuantityNames) {
        if (n.name == name) return n.q;
    }
    return std::nullopt;
}

void SweepSpec::validate() const {
    if (grid.size() < 2) throw ConfigError("sweep grid needs at least two points");
    const bool increasing = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool ok = increasing ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
        if (!ok) throw ConfigError("sweep grid must be strictly monotone");
    }
    if (quantities.empty()) throw ConfigError("sweep needs at least one quantity");
}

std::optional<double> quantity_of(const CycleResult& c, Quantity q, double r) {
    switch (q) {
        case Quantity::W_net: return c.W_net;
        case Quantity::Eta: return c.eta;
        case Quantity::EtaOverCarnot:
            if (!c.eta || !(r > 1.0)) return std::nullopt;
            return *c.eta / carnot(r);
        case Quantity::Q12: return c.Q12;
        case Quantity::Q23: return c.Q23;
        case Quantity::Q34: return c.Q34;
        case Quantity::Q41: return c.Q41;
        case Quantity::Q_in: return c.Q_in;
    }
    return std::nullopt;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const SeriesControl& ctrl) {
    spec.validate();
    ctrl.validate();

    // Build every point first so configuration mistakes fail the whole sweep.
    std::vector<CycleInput> inputs;
    inputs.reserve(spec.grid.size());
    for (double v : spec.grid) {
        CycleInput in{spec.medium, spec.r, ctrl};
        switch (spec.param) {
            case SweepParam::R: in.r = v; break;
            case SweepParam::U: in.medium = spec.medium.with_u(v); break;
            case SweepParam::Ell: in.medium = spec.medium.with_ell(v); break;
            case SweepParam::Barriers: in.medium = spec.medium.with_barriers(as_barrier_count(v)); break;
            case SweepParam::D: in.medium = spec.medium.with_asym_d(v); break;
        }
        if (!(in.r >= 1.0)) throw ConfigError("T_h/T_c must be >= 1 at every sweep point");
        inputs.push_back(in);
    }

    std::vector<SweepRow> rows;
    rows.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        SweepRow row{spec.grid[i], {}, false, std::nullopt};
        try {
            const CycleResult c = run_cycle(inputs[i]);
            row.engine_regime = c.engine_regime;
            for (Quantity q : spec.quantities) row.quantities.push_back(quantity_of(c, q, inputs[i].r));
        } catch (const ConvergenceError& e) {
            row.quantities.assign(spec.quantities.size(), std::nullopt);
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace stirlingq
