#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stirlingq/analysis.hpp"
#include "stirlingq/errors.hpp"
#include "stirlingq/scalar_search.hpp"

using namespace stirlingq;

namespace {
const SeriesControl kCtrl{};
CycleResult cycle(const Medium& m, double r) { return run_cycle({m, r, kCtrl}); }
}  // namespace

TEST_CASE("limit formulas") {
    CHECK(ho_low_temp_work(2.0) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    CHECK(ho_low_temp_work(1.0) == 0.0);
    // ln((1+e^m)/2) - m/2, mpmath
    CHECK(ho_hot_limit_work(5.0) == doctest::Approx(1.81356816792917276).epsilon(1e-14));
    CHECK(ho_hot_limit_work(10.0) == doctest::Approx(4.30689821833927156).epsilon(1e-14));
    CHECK(ho_hot_limit_work(1e-8) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ho_hot_limit_work(800.0) == doctest::Approx(400.0 - std::numbers::ln2));
    CHECK(pib_low_temp_work(2.0, 1) == doctest::Approx(std::numbers::ln2));
    CHECK(pib_low_temp_work(2.0, 2) == doctest::Approx(1.0986122886681097));
    CHECK(pib_low_temp_work(3.0, 1, true) == 0.0);
    CHECK_THROWS_AS(ho_low_temp_work(0.5), ConfigError);
    CHECK_THROWS_AS(pib_low_temp_work(2.0, 0), ConfigError);
}

TEST_CASE("cycles converge to the limit formulas") {
    CHECK(cycle(Medium::harmonic(50.0), 2.0).W_net == doctest::Approx(ho_low_temp_work(2.0)).epsilon(1e-3));
    CHECK(std::abs(cycle(Medium::harmonic(5.0), 1e4).W_net - ho_hot_limit_work(5.0)) < 1e-2);
    CHECK(std::abs(cycle(Medium::harmonic(10.0), 1e5).W_net - ho_hot_limit_work(10.0)) < 1e-2);
    CHECK(std::abs(cycle(Medium::box(0.05), 2.0).W_net - pib_low_temp_work(2.0, 1)) < 1e-3);
    CHECK(std::abs(cycle(Medium::box(0.02, 1, 0.8), 2.0).W_net) < 1e-6);
}

TEST_CASE("efficiency maxima") {
    const OptimizeResult ho5 = maximize_efficiency(Medium::harmonic(5.0), kCtrl);
    CHECK(ho5.r_star == doctest::Approx(2.66).epsilon(0.01));
    CHECK(ho5.value == doctest::Approx(0.47).epsilon(0.01 / 0.47));
    CHECK(ho5.bracket.first < ho5.r_star);
    CHECK(ho5.r_star < ho5.bracket.second);

    const OptimizeResult ho50 = maximize_efficiency(Medium::harmonic(50.0), kCtrl);
    CHECK(ho50.r_star == doctest::Approx(14.57).epsilon(0.01));
    CHECK(ho50.value == doctest::Approx(0.92).epsilon(0.01 / 0.92));

    const OptimizeResult pib5 = maximize_efficiency(Medium::box(0.2), kCtrl);
    CHECK(pib5.r_star == doctest::Approx(8.488).epsilon(0.005));
    CHECK(pib5.value == doctest::Approx(0.833).epsilon(0.002));
    CHECK(pib5.bracket.second - pib5.bracket.first > 0.0);
}

TEST_CASE("work maxima") {
    CHECK_THROWS_AS(maximize_work(Medium::harmonic(5.0), kCtrl), AnalysisError);
    try {
        (void)maximize_work(Medium::harmonic(5.0), kCtrl);
    } catch (const AnalysisError& e) {
        CHECK(std::string(e.what()).find("upper boundary") != std::string::npos);
    }
    const OptimizeResult w3 = maximize_work(Medium::box(1.0 / 3.0), kCtrl);
    const double w_star = cycle(Medium::box(1.0 / 3.0), w3.r_star).W_net;
    CHECK(w_star == doctest::Approx(w3.value).epsilon(1e-12));
    CHECK(w_star > cycle(Medium::box(1.0 / 3.0), w3.r_star + 1.0).W_net);
    CHECK(w_star > cycle(Medium::box(1.0 / 3.0), w3.r_star - 1.0).W_net);
    const OptimizeResult w4 = maximize_work(Medium::box(0.25), kCtrl);
    CHECK(w4.r_star > w3.r_star);
}

TEST_CASE("zero-work half-length") {
    const double l2 = zero_work_length(2.0, 1, 1.0, kCtrl);
    CHECK(l2 == doctest::Approx(0.65).epsilon(0.01 / 0.65));
    CHECK(std::abs(cycle(Medium::box(l2), 2.0).W_net) < 1e-6);
    CHECK(zero_work_length(3.0, 1, 1.0, kCtrl) < l2);
    CHECK(zero_work_length(2.0, 2, 1.0, kCtrl) > l2);
    CHECK_THROWS_AS(zero_work_length(1.0, 1, 1.0, kCtrl), ConfigError);
    // the plain wavelength rescales ell by sqrt(pi)
    CHECK(zero_work_length(2.0, 1, 1.0, kCtrl, Wavelength::Plain) ==
          doctest::Approx(l2 / std::sqrt(std::numbers::pi)).epsilon(1e-5));
}

TEST_CASE("normalized efficiency near equal baths") {
    for (double u : {5.0, 10.0, 15.0}) {
        const CycleResult c = cycle(Medium::harmonic(u), 1.001);
        REQUIRE(c.eta);
        CHECK(*c.eta / carnot(1.001) >= 0.99);
    }
    for (double ell : {1.0 / 3, 1.0 / 4, 1.0 / 5}) {
        const CycleResult c = cycle(Medium::box(ell), 1.001);
        REQUIRE(c.eta);
        CHECK(*c.eta / carnot(1.001) >= 0.99);
        CHECK(*c.eta / carnot(1.001) <= 1.0);
    }
}

TEST_CASE("efficiency decays at large ratios and curves cross") {
    const CycleResult hot = cycle(Medium::harmonic(5.0), 1e3);
    CHECK((!hot.eta || *hot.eta < 0.05));
    CHECK(*cycle(Medium::harmonic(5.0), 3.0).eta > *cycle(Medium::harmonic(5.0), 4.0).eta);
    CHECK(*cycle(Medium::harmonic(10.0), 4.0).eta > *cycle(Medium::harmonic(10.0), 2.0).eta);
}

TEST_CASE("low-temperature box efficiency does not depend on the barrier count") {
    const double e1 = *cycle(Medium::box(0.05, 1), 2.0).eta;
    const double e3 = *cycle(Medium::box(0.05, 3), 2.0).eta;
    CHECK(std::abs(e1 - e3) <= 1e-3);
}

TEST_CASE("oscillator frequency sweep rises monotonically toward (r-1) ln 2") {
    const SweepSpec spec{Medium::harmonic(1.0), 2.0, SweepParam::U, linear_grid(0.1, 20.0, 100),
                         {Quantity::W_net, Quantity::Eta}};
    const auto rows = sweep(spec, kCtrl);
    REQUIRE(rows.size() == 100);
    double prev = 0.0;
    for (const auto& row : rows) {
        CHECK_FALSE(row.error);
        const double w = *row.quantities[0];
        CHECK(w > prev);
        CHECK(w < ho_low_temp_work(2.0));
        prev = w;
    }
    CHECK(prev == doctest::Approx(ho_low_temp_work(2.0)).epsilon(1e-3));
}

TEST_CASE("box length sweep: work and efficiency vanish together") {
    const SweepSpec spec{Medium::box(0.5), 2.0, SweepParam::Ell, linear_grid(0.05, 1.2, 116),
                         {Quantity::W_net, Quantity::Eta}};
    const auto rows = sweep(spec, kCtrl);
    std::size_t first_non_positive = rows.size(), first_no_eta = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (first_non_positive == rows.size() && *rows[i].quantities[0] <= 0.0) first_non_positive = i;
        if (first_no_eta == rows.size() && !rows[i].quantities[1]) first_no_eta = i;
    }
    CHECK(first_non_positive < rows.size());
    CHECK(first_non_positive == first_no_eta);
    // efficiency decays to zero on approach
    CHECK(*rows[first_non_positive - 1].quantities[1] < 0.05);
}

TEST_CASE("asymmetric split: work has an interior maximum in ell") {
    const SweepSpec spec{Medium::box(0.5, 1, 0.95), 2.0, SweepParam::Ell, geometric_grid(0.01, 1.5, 200),
                         {Quantity::W_net}};
    const auto rows = sweep(spec, kCtrl);
    std::vector<double> w;
    for (const auto& r : rows) w.push_back(*r.quantities[0]);
    const int i = argmax_finite(w);
    CHECK(i > 0);
    CHECK(i + 1 < static_cast<int>(w.size()));
    CHECK(w[i] > w.front() + 0.1);
    CHECK(w[i] > 0.0);
}

TEST_CASE("sweep over barrier count and ratio") {
    const SweepSpec b{Medium::box(0.05), 2.0, SweepParam::Barriers, {1, 2, 3, 4}, {Quantity::W_net}};
    const auto rows = sweep(b, kCtrl);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(*rows[i].quantities[0] == doctest::Approx(std::log(double(i) + 2.0)).epsilon(1e-3));
    }
    const SweepSpec frac{Medium::box(0.05), 2.0, SweepParam::Barriers, {1, 1.5}, {Quantity::W_net}};
    CHECK_THROWS_AS(sweep(frac, kCtrl), ConfigError);

    const SweepSpec rs{Medium::harmonic(5.0), 1.0, SweepParam::R, {1.0, 2.0, 3.0},
                       {Quantity::Eta, Quantity::EtaOverCarnot, Quantity::Q_in}};
    const auto rr = sweep(rs, kCtrl);
    CHECK_FALSE(rr[0].quantities[0]);
    CHECK_FALSE(rr[0].engine_regime);
    CHECK(*rr[1].quantities[1] == doctest::Approx(*rr[1].quantities[0] / 0.5));
    CHECK(rr[2].engine_regime);
}

TEST_CASE("sweep spec validation") {
    CHECK_THROWS_AS(sweep(SweepSpec{Medium::harmonic(1.0), 2.0, SweepParam::U, {1.0}, {Quantity::W_net}}, kCtrl),
                    ConfigError);
    CHECK_THROWS_AS(sweep(SweepSpec{Medium::harmonic(1.0), 2.0, SweepParam::U, {1.0, 3.0, 2.0}, {Quantity::W_net}}, kCtrl),
                    ConfigError);
    CHECK_THROWS_AS(sweep(SweepSpec{Medium::harmonic(1.0), 2.0, SweepParam::Ell, {0.1, 0.2}, {Quantity::W_net}}, kCtrl),
                    ConfigError);
    CHECK_NOTHROW(sweep(SweepSpec{Medium::harmonic(1.0), 2.0, SweepParam::U, {3.0, 2.0}, {Quantity::W_net}}, kCtrl));
}

TEST_CASE("names round-trip") {
    for (Quantity q : {Quantity::W_net, Quantity::Eta, Quantity::EtaOverCarnot, Quantity::Q12, Quantity::Q23,
                       Quantity::Q34, Quantity::Q41, Quantity::Q_in}) {
        CHECK(parse_quantity(to_string(q)) == q);
    }
    for (SweepParam p : {SweepParam::R, SweepParam::U, SweepParam::Ell, SweepParam::Barriers, SweepParam::D}) {
        CHECK(parse_sweep_param(to_string(p)) == p);
    }
    CHECK_FALSE(parse_quantity("W"));
}
