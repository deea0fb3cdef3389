#include "stirlingq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "stirlingq/errors.hpp"

namespace stirlingq {

namespace {

constexpr double kMergeTol = 1e-12;
// Below this exponent the box theta series converges slowly; switch to the
// modular-transformed series.
constexpr double kModularThreshold = 0.5;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_tau(double tau) {
    if (!positive_finite(tau)) {
        throw ConfigError("reduced temperature must be positive and finite, got " + std::to_string(tau));
    }
}

// Moments of one ladder (or a whole spectrum) at fixed beta, relative to its
// lowest level e0: ln_x = ln sum g e^{-beta (E - e0)}, mean_x = <E> - e0.
struct Moments {
    double e0;
    double ln_x;
    double mean_x;
    double var;
    std::int64_t terms;
};

Moments linear_closed_form(const Ladder& l, double beta) {
    const double x = beta * l.scale;
    const double q = std::exp(-x);
    const double one_minus_q = -std::expm1(-x);
    Moments m{};
    m.e0 = l.offset;
    m.ln_x = std::log(static_cast<double>(l.degeneracy)) - std::log(one_minus_q);
    m.mean_x = l.scale * q / one_minus_q;
    m.var = l.scale * l.scale * q / (one_minus_q * one_minus_q);
    m.terms = 1;
    return m;
}

// Sums over n >= 1 of exp(-s n^2) weighted by 1, k, k^2 with k = n^2 - 1,
// shifted so the n = 1 term is exactly 1. r0 = 1 + excited.
struct ShiftedThetaSums {
    double r0;
    double excited;
    double r1;
    double r2;
    std::int64_t terms;
};

ShiftedThetaSums shifted_theta_sums(double s, const SeriesControl& ctrl) {
    ShiftedThetaSums out{1.0, 0.0, 0.0, 0.0, 1};
    for (std::int64_t n = 2;; ++n) {
        if (out.terms >= ctrl.max_terms) {
            throw ConvergenceError("theta series did not converge", out.r0, out.terms);
        }
        const double k = static_cast<double>(n * n - 1);
        const double t0 = std::exp(-s * k);
        out.excited += t0;
        out.r0 = 1.0 + out.excited;
        out.r1 += t0 * k;
        out.r2 += t0 * k * k;
        ++out.terms;
        if (t0 == 0.0 ||
            (t0 < ctrl.rel_tol * out.r0 && t0 * k < ctrl.rel_tol * out.r1 && t0 * k * k < ctrl.rel_tol * out.r2)) {
            break;
        }
    }
    return out;
}

// theta_3(0, e^{-s}) and its first two s-derivatives via the modular identity
// theta_3(0, e^{-s}) = sqrt(pi/s) * theta_3(0, e^{-pi^2/s}).
struct ThetaDerivs {
    double value;
    double d1;
    double d2;
    std::int64_t terms;
};

ThetaDerivs modular_theta(double s, const SeriesControl& ctrl) {
    constexpr double pi = std::numbers::pi;
    const double t = pi * pi / s;
    // T(t) = sum_{k>=1} e^{-t k^2} and its t-derivatives.
    double tail = 0.0, tail_d1 = 0.0, tail_d2 = 0.0;
    std::int64_t terms = 0;
    for (std::int64_t k = 1;; ++k) {
        if (terms >= ctrl.max_terms) {
            throw ConvergenceError("modular theta series did not converge", tail, terms);
        }
        const double k2 = static_cast<double>(k * k);
        const double w = std::exp(-t * k2);
        tail += w;
        tail_d1 -= k2 * w;
        tail_d2 += k2 * k2 * w;
        ++terms;
        if (w == 0.0 || (k >= 2 && w * k2 * k2 < ctrl.rel_tol * tail_d2)) break;
    }
    const double a = std::sqrt(pi / s);
    const double a_d1 = -a / (2.0 * s);
    const double a_d2 = 3.0 * a / (4.0 * s * s);
    const double t_s = -t / s;
    const double t_ss = 2.0 * t / (s * s);
    ThetaDerivs out{};
    out.value = a * (1.0 + 2.0 * tail);
    out.d1 = a_d1 * (1.0 + 2.0 * tail) + 2.0 * a * tail_d1 * t_s;
    out.d2 = a_d2 * (1.0 + 2.0 * tail) + 4.0 * a_d1 * tail_d1 * t_s +
             2.0 * a * (tail_d2 * t_s * t_s + tail_d1 * t_ss);
    out.terms = terms;
    return out;
}

Moments quadratic_closed_form(const Ladder& l, double beta, const SeriesControl& ctrl) {
    const double c = l.scale;
    const double s = beta * c;
    const double ln_g = std::log(static_cast<double>(l.degeneracy));
    Moments m{};
    m.e0 = c;
    if (s >= kModularThreshold) {
        const ShiftedThetaSums r = shifted_theta_sums(s, ctrl);
        const double mean_k = r.r1 / r.r0;
        m.ln_x = ln_g + std::log1p(r.excited);
        m.mean_x = c * mean_k;
        m.var = c * c * std::max(0.0, r.r2 / r.r0 - mean_k * mean_k);
        m.terms = r.terms;
    } else {
        // S(s) = sum_{n>=1} e^{-s n^2} = (theta - 1) / 2.
        const ThetaDerivs th = modular_theta(s, ctrl);
        const double half_sum = 0.5 * (th.value - 1.0);
        const double mean_n2 = -0.5 * th.d1 / half_sum;
        const double mean_n4 = 0.5 * th.d2 / half_sum;
        m.ln_x = ln_g + std::log(half_sum) + s;
        m.mean_x = c * (mean_n2 - 1.0);
        m.var = c * c * std::max(0.0, mean_n4 - mean_n2 * mean_n2);
        m.terms = th.terms;
    }
    return m;
}

// Combine independent level families: Z = sum_i Z_i.
Moments combine(std::span<const Moments> parts, double beta) {
    Moments out{};
    out.e0 = std::numeric_limits<double>::infinity();
    for (const auto& p : parts) out.e0 = std::min(out.e0, p.e0);
    // log weight of each part relative to the common ground
    std::vector<double> ln_w;
    double ln_max = -std::numeric_limits<double>::infinity();
    for (const auto& p : parts) {
        ln_w.push_back(p.ln_x - beta * (p.e0 - out.e0));
        ln_max = std::max(ln_max, ln_w.back());
    }
    // log1p keeps exponentially small excited families visible
    double rest = 0.0;
    bool max_seen = false;
    for (double w : ln_w) {
        if (!max_seen && w == ln_max) {
            max_seen = true;
            continue;
        }
        rest += std::exp(w - ln_max);
    }
    out.ln_x = ln_max + std::log1p(rest);
    out.terms = 0;
    double mean = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        mean += std::exp(ln_w[i] - out.ln_x) * (parts[i].mean_x + (parts[i].e0 - out.e0));
        out.terms += parts[i].terms;
    }
    double var = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const double dev = parts[i].mean_x + (parts[i].e0 - out.e0) - mean;
        var += std::exp(ln_w[i] - out.ln_x) * (parts[i].var + dev * dev);
    }
    out.mean_x = mean;
    out.var = var;
    return out;
}

// Merged, energy-ordered walk over all ladders of a spectrum.
class LevelStream {
public:
    explicit LevelStream(std::span<const Ladder> ladders)
        : ladders_(ladders), next_(ladders.size(), 0) {}

    Level next() {
        double e_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ladders_.size(); ++i) {
            e_min = std::min(e_min, ladders_[i].energy(next_[i]));
        }
        Level lvl{e_min, 0};
        for (std::size_t i = 0; i < ladders_.size(); ++i) {
            const double e = ladders_[i].energy(next_[i]);
            if (std::abs(e - e_min) <= kMergeTol * std::max(1.0, std::abs(e_min))) {
                lvl.degeneracy += ladders_[i].degeneracy;
                ++next_[i];
            }
        }
        return lvl;
    }

private:
    std::span<const Ladder> ladders_;
    std::vector<std::int64_t> next_;
};

// Direct Boltzmann sum with the ground energy factored out. At least the
// ground and first excited level are always included.
Moments direct_sum(const StageSpectrum& spectrum, double beta, const SeriesControl& ctrl) {
    LevelStream stream(spectrum.ladders());
    const Level ground = stream.next();
    const double e0 = ground.energy;
    const double g0 = static_cast<double>(ground.degeneracy);
    double m0 = g0;
    double excited = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    std::int64_t terms = 1;
    while (true) {
        if (terms >= ctrl.max_terms) {
            throw ConvergenceError("partition sum did not converge within " + std::to_string(ctrl.max_terms) +
                                       " terms",
                                   m0, terms);
        }
        const Level lvl = stream.next();
        const double de = lvl.energy - e0;
        const double t0 = static_cast<double>(lvl.degeneracy) * std::exp(-beta * de);
        const double t1 = t0 * de;
        const double t2 = t1 * de;
        excited += t0;
        m0 = g0 + excited;
        m1 += t1;
        m2 += t2;
        ++terms;
        if (t0 < ctrl.rel_tol * m0 && t1 <= ctrl.rel_tol * m1 && t2 <= ctrl.rel_tol * m2) break;
    }
    const double mean_shift = m1 / m0;
    Moments out{};
    out.e0 = e0;
    out.ln_x = std::log(g0) + std::log1p(excited / g0);
    out.mean_x = mean_shift;
    out.var = std::max(0.0, m2 / m0 - mean_shift * mean_shift);
    out.terms = terms;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-6)) {
        throw ConfigError("series rel_tol must lie in (0, 1e-6], got " + std::to_string(rel_tol));
    }
    if (max_terms < 1000) {
        throw ConfigError("series max_terms must be at least 1000, got " + std::to_string(max_terms));
    }
}

SeriesControl SeriesControl::from_environment() {
    SeriesControl ctrl;
    if (const char* env = std::getenv("STIRLINGQ_MAX_TERMS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0') {
            throw ConfigError(std::string("STIRLINGQ_MAX_TERMS is not an integer: ") + env);
        }
        ctrl.max_terms = v;
    }
    ctrl.validate();
    return ctrl;
}

Medium::Medium(MediumKind kind, double u, double ell, int barriers, double asym_d, Wavelength wavelength)
    : kind_(kind), u_(u), ell_(ell), barriers_(barriers), asym_d_(asym_d), wavelength_(wavelength) {}

Medium Medium::harmonic(double u) {
    if (!positive_finite(u)) throw ConfigError("oscillator frequency u must be positive, got " + std::to_string(u));
    return Medium(MediumKind::HarmonicOscillator, u, 0.0, 1, 1.0, Wavelength::Thermal);
}

Medium Medium::box(double ell, int barriers, double asym_d, Wavelength wavelength) {
    if (!positive_finite(ell)) throw ConfigError("box half-length ell must be positive, got " + std::to_string(ell));
    if (barriers < 1) throw ConfigError("box needs at least one barrier, got " + std::to_string(barriers));
    if (!positive_finite(asym_d)) throw ConfigError("asymmetry ratio d must be positive, got " + std::to_string(asym_d));
    const double d = asym_d > 1.0 ? 1.0 / asym_d : asym_d;
    if (d != 1.0 && barriers > 1) {
        throw ConfigError("asymmetric insertion is only defined for a single barrier");
    }
    return Medium(MediumKind::ParticleInBox, 0.0, ell, barriers, d, wavelength);
}

Medium Medium::with_u(double u) const {
    if (kind_ != MediumKind::HarmonicOscillator) throw ConfigError("u applies only to the harmonic oscillator");
    return harmonic(u);
}

Medium Medium::with_ell(double ell) const {
    if (kind_ != MediumKind::ParticleInBox) throw ConfigError("ell applies only to the particle in a box");
    return box(ell, barriers_, asym_d_, wavelength_);
}

Medium Medium::with_barriers(int barriers) const {
    if (kind_ != MediumKind::ParticleInBox) {
        if (barriers != 1) throw ConfigError("the harmonic oscillator supports exactly one barrier");
        return *this;
    }
    return box(ell_, barriers, asym_d_, wavelength_);
}

Medium Medium::with_asym_d(double d) const {
    if (kind_ != MediumKind::ParticleInBox) throw ConfigError("d applies only to the particle in a box");
    return box(ell_, barriers_, d, wavelength_);
}

double Ladder::energy(std::int64_t k) const noexcept {
    const double x = static_cast<double>(k);
    if (shape == Shape::Linear) return offset + scale * x;
    return scale * (x + 1.0) * (x + 1.0);
}

StageSpectrum::StageSpectrum(std::vector<Ladder> ladders, ClosedForm closed_form)
    : ladders_(std::move(ladders)), closed_form_(closed_form) {
    if (ladders_.empty()) throw ConfigError("spectrum needs at least one ladder");
    for (const auto& l : ladders_) {
        if (!positive_finite(l.scale) || l.degeneracy < 1 || !std::isfinite(l.offset)) {
            throw ConfigError("ladder must have positive spacing and degeneracy");
        }
    }
}

StageSpectrum StageSpectrum::as_series() const { return StageSpectrum(ladders_, ClosedForm::None); }

std::vector<Level> StageSpectrum::levels(std::size_t count) const {
    LevelStream stream(ladders_);
    std::vector<Level> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
    return out;
}

double StageSpectrum::ground_energy() const { return levels(1).front().energy; }

std::int64_t StageSpectrum::ground_degeneracy() const { return levels(1).front().degeneracy; }

double box_level_constant(double reduced_length, Wavelength wavelength) {
    // pi^2 hbar^2 / (2 m L^2 k_B T_c) = lambda^2 / (4 L^2) for lambda = h / sqrt(2 m k_B T_c);
    // the thermal wavelength carries an extra 1/pi in lambda^2.
    const double base = 1.0 / (4.0 * reduced_length * reduced_length);
    return wavelength == Wavelength::Thermal ? std::numbers::pi * base : base;
}

StageSpectrum ho_free_spectrum(double u) {
    return StageSpectrum({Ladder{Ladder::Shape::Linear, 0.5 * u, u, 1}}, ClosedForm::HoFree);
}

StageSpectrum ho_barrier_spectrum(double u) {
    // (n + 1/2) u for odd n only, each two-fold: (2n + 3/2) u, n = 0, 1, ...
    return StageSpectrum({Ladder{Ladder::Shape::Linear, 1.5 * u, 2.0 * u, 2}}, ClosedForm::HoBarrier);
}

StageSpectrum box_free_spectrum(double ell, Wavelength wavelength) {
    return StageSpectrum({Ladder{Ladder::Shape::Quadratic, 0.0, box_level_constant(2.0 * ell, wavelength), 1}},
                         ClosedForm::PibTheta);
}

StageSpectrum box_single_barrier_spectrum(double ell, Wavelength wavelength) {
    // Only even quantum numbers of the full box survive, each two-fold: (2n)^2 c_{2a}.
    const double c_full = box_level_constant(2.0 * ell, wavelength);
    return StageSpectrum({Ladder{Ladder::Shape::Quadratic, 0.0, 4.0 * c_full, 2}}, ClosedForm::PibTheta);
}

StageSpectrum box_multi_barrier_spectrum(double ell, int barriers, Wavelength wavelength) {
    if (barriers < 1) throw ConfigError("barrier count must be at least one");
    const int compartments = barriers + 1;
    const double c = box_level_constant(2.0 * ell / compartments, wavelength);
    return StageSpectrum({Ladder{Ladder::Shape::Quadratic, 0.0, c, compartments}}, ClosedForm::PibTheta);
}

StageSpectrum box_asymmetric_spectrum(double ell, double d, Wavelength wavelength) {
    if (!positive_finite(d)) throw ConfigError("asymmetry ratio d must be positive");
    const double x = 2.0 * ell * d / (1.0 + d);
    const double y = 2.0 * ell / (1.0 + d);
    std::vector<Ladder> parts{
        Ladder{Ladder::Shape::Quadratic, 0.0, box_level_constant(x, wavelength), 1},
        Ladder{Ladder::Shape::Quadratic, 0.0, box_level_constant(y, wavelength), 1},
    };
    // Larger compartment first: it holds the ground state.
    std::sort(parts.begin(), parts.end(), [](const Ladder& a, const Ladder& b) { return a.scale < b.scale; });
    return StageSpectrum(std::move(parts), ClosedForm::PibThetaSum);
}

StageSpectrum stage_spectrum(const Medium& medium, Stage stage) {
    if (medium.kind() == MediumKind::HarmonicOscillator) {
        if (medium.barriers() != 1) throw ConfigError("the harmonic oscillator supports exactly one barrier");
        return has_barrier(stage) ? ho_barrier_spectrum(medium.u()) : ho_free_spectrum(medium.u());
    }
    if (medium.is_asymmetric() && medium.barriers() > 1) {
        throw ConfigError("asymmetric insertion is only defined for a single barrier");
    }
    if (!has_barrier(stage)) return box_free_spectrum(medium.ell(), medium.wavelength());
    if (medium.is_asymmetric()) return box_asymmetric_spectrum(medium.ell(), medium.asym_d(), medium.wavelength());
    if (medium.barriers() == 1) return box_single_barrier_spectrum(medium.ell(), medium.wavelength());
    return box_multi_barrier_spectrum(medium.ell(), medium.barriers(), medium.wavelength());
}

PartitionMoments partition_moments(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl) {
    require_tau(tau);
    const double beta = 1.0 / tau;
    Moments m{};
    if (spectrum.closed_form() == ClosedForm::None) {
        m = direct_sum(spectrum, beta, ctrl);
    } else {
        std::vector<Moments> parts;
        parts.reserve(spectrum.ladders().size());
        for (const auto& l : spectrum.ladders()) {
            parts.push_back(l.shape == Ladder::Shape::Linear ? linear_closed_form(l, beta)
                                                             : quadratic_closed_form(l, beta, ctrl));
        }
        m = parts.size() == 1 ? parts.front() : combine(parts, beta);
    }
    return PartitionMoments{m.ln_x - beta * m.e0, m.e0 + m.mean_x, m.var, m.terms, m.e0, m.ln_x, m.mean_x};
}

double ln_partition(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl) {
    return partition_moments(spectrum, tau, ctrl).ln_z;
}

double dlnZ_dbeta(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl) {
    return -partition_moments(spectrum, tau, ctrl).mean_energy;
}

double d2lnZ_dbeta2(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl) {
    return partition_moments(spectrum, tau, ctrl).energy_variance;
}

double theta3(double s, const SeriesControl& ctrl) {
    if (!positive_finite(s)) throw ConfigError("theta3 needs a positive exponent");
    if (s < kModularThreshold) return modular_theta(s, ctrl).value;
    const ShiftedThetaSums r = shifted_theta_sums(s, ctrl);
    return 1.0 + 2.0 * std::exp(-s) * r.r0;
}

}  // namespace stirlingq
