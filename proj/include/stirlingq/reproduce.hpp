// reproduce.hpp: regenerate the maximum-efficiency tables and per-figure curve data.

#pragma once

#include <vector>

#include "stirlingq/csv.hpp"
#include "stirlingq/spectra.hpp"

namespace stirlingq {

// Oscillator rows u = 5, 10, 15, 50, 150, 350: u, r_star, eta_max, eta_carnot.
CsvTable efficiency_table_ho(const SeriesControl& ctrl);
// Box rows ell = 1/3, 1/4, 1/5, 1/10, 1/20: ell, r_star, eta_max, eta_carnot.
CsvTable efficiency_table_pib(const SeriesControl& ctrl);

struct FigureOptions {
    int points{200};
    std::vector<int> barrier_counts{1, 2, 3};  // figure 8 curves
};

// Figures 2-10; throws ConfigError for any other number.
CsvTable figure_table(int figure, const FigureOptions& opts, const SeriesControl& ctrl);

}  // namespace stirlingq
