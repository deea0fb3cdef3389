#include "stirlingq/scalar_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stirlingq/errors.hpp"

namespace stirlingq {

std::vector<double> linear_grid(double lo, double hi, int count) {
    if (count < 2) throw ConfigError("grid needs at least two points");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    g.back() = hi;
    return g;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (count < 2) throw ConfigError("grid needs at least two points");
    if (!(lo > 0.0 && hi > 0.0)) throw ConfigError("geometric grid needs positive bounds");
    std::vector<double> g(static_cast<std::size_t>(count));
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < count; ++i) g[i] = lo * std::exp(ratio * i / (count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

GoldenResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    while (b - a > x_tol && it < 500) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    const double x = fc >= fd ? c : d;
    return GoldenResult{x, std::max(fc, fd), it};
}

int argmax_finite(std::span<const double> values) {
    int best = -1;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::isfinite(values[i]) && values[i] > best_v) {
            best_v = values[i];
            best = static_cast<int>(i);
        }
    }
    return best;
}

BisectResult bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return {lo, 0};
    if (fhi == 0.0) return {hi, 0};
    if (std::signbit(flo) == std::signbit(fhi)) throw AnalysisError("bisection bracket has no sign change");
    int it = 0;
    while (hi - lo > x_tol && it < 200) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, it + 1};
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        ++it;
    }
    return BisectResult{0.5 * (lo + hi), it};
}

}  // namespace stirlingq
