#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace hvq::earlyq {

/// Charge convention: Gaussian-style formulas (e^2 carries energy*length)
/// need the (4 pi eps0)^-1 factor squared when e is in coulombs.
enum class UnitSystem { si, natural };

/// Constants bundle threaded through every formula so results can be
/// evaluated in SI or in a natural system where h = c = k_B = 1.
struct PhysicalConstants {
    double h;          // Planck constant
    double hbar;       // h / 2 pi, stored so callers never re-derive it
    double c;          // speed of light
    double k_B;        // Boltzmann constant
    double m_e;        // electron mass
    double e;          // elementary charge
    UnitSystem system;

    static PhysicalConstants si();
    // h = c = k_B = m_e = e = 1 (so hbar = 1 / 2 pi).
    static PhysicalConstants natural();
};

/// Spectral energy density of blackbody radiation at frequency nu and
/// temperature T: (8 pi / c^3) h nu^3 / (exp(h nu / k_B T) - 1).
double planck_density(double nu, double T, const PhysicalConstants& k);

/// Classical limit (8 pi / c^3) nu^2 k_B T.
double rayleigh_jeans_density(double nu, double T, const PhysicalConstants& k);

/// Wien ansatz a nu^3 exp(-b nu / T) with caller-chosen a, b.
double wien_density(double nu, double T, double a, double b);

/// Planck's mean resonator energy h nu / (exp(h nu / k_B T) - 1), evaluated
/// in closed form.
double avg_oscillator_energy(double nu, double T, const PhysicalConstants& k);

/// Same quantity from the truncated sums sum_n n E0 e^{-n x} / sum_n e^{-n x}
/// with E0 = h nu, x = h nu / k_B T and n = 0..n_max.
double avg_oscillator_energy_truncated(double nu, double T,
                                       const PhysicalConstants& k,
                                       std::size_t n_max);

/// Max kinetic energy h nu - phi of a photoelectron, or nothing when the
/// frequency is at or below the threshold phi / h.
std::optional<double> photoelectron_energy(double nu, double work_function,
                                           const PhysicalConstants& k);

/// Stopping potential in volts for the same process.
std::optional<double> stopping_potential(double nu, double work_function,
                                         const PhysicalConstants& k);

/// Hydrogen-like level E_n = -2 pi^2 m_e e^4 k_C^2 Z^2 / (h^2 n^2), n >= 1.
double bohr_level(unsigned n, const PhysicalConstants& k, unsigned Z = 1);

/// Photon frequency for the n -> m transition (n > m), from h nu = E_n - E_m.
double emission_frequency(unsigned n, unsigned m, const PhysicalConstants& k,
                          unsigned Z = 1);

double de_broglie_wavelength(double momentum, const PhysicalConstants& k);

/// Diffraction maxima sin(theta_n) = n h / (L p) for a periodic structure of
/// length L; returns the angles theta_n for orders n = 1..n_max, stopping at
/// the last physical order (n h <= L p).
std::vector<double> duane_maxima(double length, double momentum,
                                 std::size_t n_max, const PhysicalConstants& k);

/// S = k_B ln W.
double boltzmann_entropy(double multiplicity, const PhysicalConstants& k);

}  // namespace hvq::earlyq
