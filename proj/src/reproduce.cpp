#include "stirlingq/reproduce.hpp"

#include <string>
#include <utility>

#include "stirlingq/analysis.hpp"
#include "stirlingq/errors.hpp"
#include "stirlingq/scalar_search.hpp"

namespace stirlingq {

namespace {

struct Curve {
    std::string label;
    Medium medium;
    double r;
};

struct Fixed {
    std::string name;
    double value;
};

CsvTable curve_table(SweepParam x, const std::vector<double>& grid, const std::vector<Curve>& curves,
                     const std::vector<Quantity>& quantities, const std::vector<Fixed>& fixed,
                     const SeriesControl& ctrl) {
    std::vector<std::vector<SweepRow>> results;
    results.reserve(curves.size());
    for (const auto& c : curves) {
        results.push_back(sweep(SweepSpec{c.medium, c.r, x, grid, quantities}, ctrl));
    }

    CsvTable t;
    t.header.emplace_back(to_string(x));
    for (const auto& f : fixed) t.header.push_back(f.name);
    for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
        for (const auto& c : curves) {
            std::string col(to_string(quantities[qi]));
            if (!c.label.empty()) col += "_" + c.label;
            t.header.push_back(std::move(col));
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{format_number(grid[i])};
        for (const auto& f : fixed) row.push_back(format_number(f.value));
        for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
            for (std::size_t ci = 0; ci < curves.size(); ++ci) {
                const SweepRow& sr = results[ci][i];
                if (sr.error) {
                    throw ConvergenceError("curve " + curves[ci].label + " at " + std::string(to_string(x)) + "=" +
                                               format_number(grid[i]) + ": " + *sr.error,
                                           0.0, 0);
                }
                row.push_back(format_cell(sr.quantities[qi]));
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

std::vector<Curve> box_lengths(double r, double d) {
    std::vector<Curve> out;
    for (int k : {3, 4, 5}) {
        out.push_back({"ell1_" + std::to_string(k), Medium::box(1.0 / k, 1, d), r});
    }
    return out;
}

CsvTable efficiency_table(const char* param, const std::vector<std::pair<double, Medium>>& rows, const char* which,
                          const SeriesControl& ctrl) {
    CsvTable t;
    t.header = {param, "r_star", "eta_max", "eta_carnot"};
    for (const auto& [value, medium] : rows) {
        OptimizeResult opt{};
        try {
            opt = maximize_efficiency(medium, ctrl);
        } catch (const AnalysisError& e) {
            throw AnalysisError(std::string(which) + " row " + param + "=" + format_number(value) + ": " + e.what());
        }
        t.add_row({format_number(value), format_number(opt.r_star), format_number(opt.value),
                   format_number(carnot(opt.r_star))});
    }
    return t;
}

}  // namespace

CsvTable efficiency_table_ho(const SeriesControl& ctrl) {
    std::vector<std::pair<double, Medium>> rows;
    for (double u : {5.0, 10.0, 15.0, 50.0, 150.0, 350.0}) rows.emplace_back(u, Medium::harmonic(u));
    return efficiency_table("u", rows, "table1", ctrl);
}

CsvTable efficiency_table_pib(const SeriesControl& ctrl) {
    std::vector<std::pair<double, Medium>> rows;
    for (int k : {3, 4, 5, 10, 20}) rows.emplace_back(1.0 / k, Medium::box(1.0 / k));
    return efficiency_table("ell", rows, "table2", ctrl);
}

CsvTable figure_table(int figure, const FigureOptions& opts, const SeriesControl& ctrl) {
    const int n = opts.points;
    if (n < 2) throw ConfigError("figures need at least two points");
    using Q = Quantity;
    switch (figure) {
        case 2: {  // oscillator work and efficiency against frequency
            std::vector<Curve> curves;
            for (int r : {2, 3, 4}) curves.push_back({"r" + std::to_string(r), Medium::harmonic(1.0), double(r)});
            return curve_table(SweepParam::U, linear_grid(0.1, 20.0, n), curves, {Q::W_net, Q::Eta}, {}, ctrl);
        }
        case 3: {  // oscillator work and efficiency against T_h/T_c
            std::vector<Curve> curves;
            for (int u : {5, 10, 15}) curves.push_back({"u" + std::to_string(u), Medium::harmonic(u), 1.0});
            return curve_table(SweepParam::R, linear_grid(1.0, 20.0, n), curves, {Q::W_net, Q::Eta}, {}, ctrl);
        }
        case 4: {  // oscillator normalized efficiency
            std::vector<Curve> curves;
            for (int u : {5, 10, 15}) curves.push_back({"u" + std::to_string(u), Medium::harmonic(u), 1.0});
            return curve_table(SweepParam::R, linear_grid(1.001, 20.0, n), curves, {Q::EtaOverCarnot}, {}, ctrl);
        }
        case 5: {  // heat decomposition at u = 5
            return curve_table(SweepParam::R, linear_grid(1.0, 10.0, n), {{"", Medium::harmonic(5.0), 1.0}},
                               {Q::Q12, Q::Q23, Q::Q34, Q::Q41, Q::Q_in, Q::W_net}, {{"u", 5.0}}, ctrl);
        }
        case 6: {  // box against half-length, single symmetric barrier
            std::vector<Curve> curves;
            for (int r : {2, 3, 4}) curves.push_back({"r" + std::to_string(r), Medium::box(0.5), double(r)});
            return curve_table(SweepParam::Ell, linear_grid(0.01, 1.5, n), curves, {Q::W_net, Q::Eta}, {}, ctrl);
        }
        case 7: {  // box against T_h/T_c, including normalized efficiency
            return curve_table(SweepParam::R, linear_grid(1.0, 30.0, n), box_lengths(1.0, 1.0),
                               {Q::W_net, Q::Eta, Q::EtaOverCarnot}, {}, ctrl);
        }
        case 8: {  // multiple symmetric barriers at T_h/T_c = 2
            if (opts.barrier_counts.empty()) throw ConfigError("figure 8 needs at least one barrier count");
            std::vector<Curve> curves;
            for (int b : opts.barrier_counts) curves.push_back({"B" + std::to_string(b), Medium::box(0.5, b), 2.0});
            return curve_table(SweepParam::Ell, linear_grid(0.01, 1.5, n), curves, {Q::W_net, Q::Eta},
                               {{"r", 2.0}}, ctrl);
        }
        case 9: {  // asymmetric split ratios at T_h/T_c = 2
            std::vector<Curve> curves;
            for (double d : {1.0, 0.95, 0.9, 0.8}) {
                curves.push_back({"d" + format_number(d), Medium::box(0.5, 1, d), 2.0});
            }
            return curve_table(SweepParam::Ell, linear_grid(0.01, 1.5, n), curves, {Q::W_net, Q::Eta},
                               {{"r", 2.0}}, ctrl);
        }
        case 10: {  // asymmetric d = 0.95 against T_h/T_c
            return curve_table(SweepParam::R, linear_grid(1.0, 30.0, n), box_lengths(1.0, 0.95),
                               {Q::W_net, Q::Eta}, {{"d", 0.95}}, ctrl);
        }
        default:
            throw ConfigError("figure must be one of 2..10, got " + std::to_string(figure));
    }
}

}  // namespace stirlingq
