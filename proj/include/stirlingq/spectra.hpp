// spectra.hpp: working media, per-stage energy spectra and canonical partition sums.
//
// Everything is in reduced units: energies in k_B T_c, temperatures as tau = T/T_c,
// beta in 1/(k_B T_c). The harmonic oscillator is parameterized by u = hbar*omega/(k_B T_c),
// the box by its half-length ell = a/lambda.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stirlingq {

// Truncation policy for every series summation in the library.
struct SeriesControl {
    double rel_tol{1e-14};
    std::int64_t max_terms{200000};

    // Throws ConfigError unless 0 < rel_tol <= 1e-6 and max_terms >= 1000.
    void validate() const;

    // Defaults, with max_terms taken from STIRLINGQ_MAX_TERMS when that is set.
    static SeriesControl from_environment();
};

enum class MediumKind { HarmonicOscillator, ParticleInBox };

// Length scale that a/lambda is measured in.
//   Thermal: lambda = h / sqrt(2 pi m k_B T_c)  -> box level constant pi / (4 L^2)
//   Plain:   lambda = h / sqrt(2 m k_B T_c)     -> box level constant 1 / (4 L^2)
// Thermal is the convention the published efficiency tables correspond to.
enum class Wavelength { Thermal, Plain };

class Medium {
public:
    static Medium harmonic(double u);
    // d and 1/d describe the same split; d > 1 is stored as 1/d.
    static Medium box(double ell, int barriers = 1, double asym_d = 1.0,
                      Wavelength wavelength = Wavelength::Thermal);

    MediumKind kind() const noexcept { return kind_; }
    double u() const noexcept { return u_; }
    double ell() const noexcept { return ell_; }
    int barriers() const noexcept { return barriers_; }
    double asym_d() const noexcept { return asym_d_; }
    Wavelength wavelength() const noexcept { return wavelength_; }
    bool is_asymmetric() const noexcept { return asym_d_ != 1.0; }

    // Validated copies with one parameter replaced.
    Medium with_u(double u) const;
    Medium with_ell(double ell) const;
    Medium with_barriers(int barriers) const;
    Medium with_asym_d(double d) const;

private:
    Medium(MediumKind kind, double u, double ell, int barriers, double asym_d, Wavelength wavelength);

    MediumKind kind_;
    double u_;
    double ell_;
    int barriers_;
    double asym_d_;
    Wavelength wavelength_;
};

// Four corners of the Stirling cycle. The spectrum depends only on whether the
// barrier is in; the bath temperature is applied at evaluation time.
enum class Stage { FreeHot, BarrierHot, BarrierCold, FreeCold };

constexpr bool has_barrier(Stage s) noexcept {
    return s == Stage::BarrierHot || s == Stage::BarrierCold;
}

enum class ClosedForm { None, HoFree, HoBarrier, PibTheta, PibThetaSum };

struct Level {
    double energy;
    std::int64_t degeneracy;
};

// An infinite family of levels sharing one degeneracy.
//   Linear:    E_k = offset + scale * k,  k = 0, 1, 2, ...
//   Quadratic: E_k = scale * (k + 1)^2,   k = 0, 1, 2, ...   (box quantum number n = k + 1)
struct Ladder {
    enum class Shape { Linear, Quadratic };

    Shape shape;
    double offset;
    double scale;
    std::int64_t degeneracy;

    double energy(std::int64_t k) const noexcept;
};

class StageSpectrum {
public:
    StageSpectrum(std::vector<Ladder> ladders, ClosedForm closed_form);

    std::span<const Ladder> ladders() const noexcept { return ladders_; }
    ClosedForm closed_form() const noexcept { return closed_form_; }

    // Same levels with the closed-form tag dropped, forcing direct summation.
    StageSpectrum as_series() const;

    // First `count` distinct levels in increasing energy; coincident energies
    // from different ladders are merged and their degeneracies added.
    std::vector<Level> levels(std::size_t count) const;

    double ground_energy() const;
    std::int64_t ground_degeneracy() const;

private:
    std::vector<Ladder> ladders_;
    ClosedForm closed_form_;
};

// Level constant c in E_n = c n^2 for a box segment of reduced length L/lambda.
double box_level_constant(double reduced_length, Wavelength wavelength);

StageSpectrum ho_free_spectrum(double u);
StageSpectrum ho_barrier_spectrum(double u);
StageSpectrum box_free_spectrum(double ell, Wavelength wavelength);
StageSpectrum box_single_barrier_spectrum(double ell, Wavelength wavelength);
StageSpectrum box_multi_barrier_spectrum(double ell, int barriers, Wavelength wavelength);
StageSpectrum box_asymmetric_spectrum(double ell, double d, Wavelength wavelength);

StageSpectrum stage_spectrum(const Medium& medium, Stage stage);

// ln Z together with the first two beta-derivatives:
//   d lnZ / d beta   = -mean_energy
//   d2 lnZ / d beta2 =  energy_variance
struct PartitionMoments {
    double ln_z;
    double mean_energy;
    double energy_variance;
    std::int64_t terms;
    // Same sums relative to the ground level, free of the large -E0/tau part:
    // ln_z = ln_z_excess - E0/tau and mean_energy = ground_energy + mean_excitation.
    double ground_energy;
    double ln_z_excess;
    double mean_excitation;
};

PartitionMoments partition_moments(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl);

double ln_partition(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl);
double dlnZ_dbeta(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl);
double d2lnZ_dbeta2(const StageSpectrum& spectrum, double tau, const SeriesControl& ctrl);

// Jacobi theta_3(0, q) for q = exp(-s), s > 0.
double theta3(double s, const SeriesControl& ctrl);

}  // namespace stirlingq
