// scalar_search.hpp: bracketing scans, golden-section maximization and bisection.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace stirlingq {

std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> geometric_grid(double lo, double hi, int count);

struct GoldenResult {
    double x;
    double value;
    int iterations;
};

// Maximizes a unimodal f on [lo, hi] until the bracket is narrower than x_tol.
GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double x_tol);

// Index of the largest finite sample; -1 when none is finite.
int argmax_finite(std::span<const double> values);

struct BisectResult {
    double x;
    int iterations;
};

// Root of f on [lo, hi] given f(lo) and f(hi) of opposite sign (or zero).
BisectResult bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol);

}  // namespace stirlingq
