#include "hvq/earlyq.hpp"

#include <cmath>
#include <numbers>

#include "hvq/errors.hpp"

namespace hvq::earlyq {

namespace {
constexpr double kPi = std::numbers::pi;
}

PhysicalConstants PhysicalConstants::si() {
    PhysicalConstants k;
    k.h = 6.62607015e-34;
    k.hbar = k.h / (2.0 * kPi);
    k.c = 299792458.0;
    k.k_B = 1.380649e-23;
    k.m_e = 9.1093837015e-31;
    k.e = 1.602176634e-19;
    k.system = UnitSystem::si;
    return k;
}

PhysicalConstants PhysicalConstants::natural() {
    PhysicalConstants k;
    k.h = 1.0;
    k.hbar = 1.0 / (2.0 * kPi);
    k.c = 1.0;
    k.k_B = 1.0;
    k.m_e = 1.0;
    k.e = 1.0;
    k.system = UnitSystem::natural;
    return k;
}

// e^2 with the Gaussian energy*length dimension; coulombs need 1/(4 pi eps0).
static double charge_squared(const PhysicalConstants& k) {
    if (k.system == UnitSystem::si) {
        const double eps0 = 8.8541878128e-12;
        return k.e * k.e / (4.0 * kPi * eps0);
    }
    return k.e * k.e;
}

double planck_density(double nu, double T, const PhysicalConstants& k) {
    if (nu <= 0.0 || T <= 0.0) throw InvalidParameter("nu and T must be positive");
    const double x = k.h * nu / (k.k_B * T);
    // expm1 keeps the classical limit x -> 0 accurate.
    return 8.0 * kPi / (k.c * k.c * k.c) * k.h * nu * nu * nu / std::expm1(x);
}

double rayleigh_jeans_density(double nu, double T, const PhysicalConstants& k) {
    if (nu <= 0.0 || T <= 0.0) throw InvalidParameter("nu and T must be positive");
    return 8.0 * kPi / (k.c * k.c * k.c) * nu * nu * k.k_B * T;
}

double wien_density(double nu, double T, double a, double b) {
    if (nu <= 0.0 || T <= 0.0) throw InvalidParameter("nu and T must be positive");
    return a * nu * nu * nu * std::exp(-b * nu / T);
}

double avg_oscillator_energy(double nu, double T, const PhysicalConstants& k) {
    if (nu <= 0.0 || T <= 0.0) throw InvalidParameter("nu and T must be positive");
    const double x = k.h * nu / (k.k_B * T);
    return k.h * nu / std::expm1(x);
}

double avg_oscillator_energy_truncated(double nu, double T,
                                       const PhysicalConstants& k,
                                       std::size_t n_max) {
    if (nu <= 0.0 || T <= 0.0) throw InvalidParameter("nu and T must be positive");
    if (n_max == 0) throw InvalidParameter("need at least one excited level");
    const double x = k.h * nu / (k.k_B * T);
    double num = 0.0, den = 0.0;
    // Summed from the smallest Boltzmann weight up so the truncated result
    // agrees with the closed form to machine precision once e^{-n x} dies.
    for (std::size_t n = n_max + 1; n-- > 0;) {
        const double w = std::exp(-static_cast<double>(n) * x);
        num += static_cast<double>(n) * w;
        den += w;
    }
    return k.h * nu * num / den;
}

std::optional<double> photoelectron_energy(double nu, double work_function,
                                           const PhysicalConstants& k) {
    if (nu <= 0.0) throw InvalidParameter("nu must be positive");
    if (work_function < 0.0) throw InvalidParameter("work function must be >= 0");
    const double energy = k.h * nu - work_function;
    if (energy <= 0.0) return std::nullopt;
    return energy;
}

std::optional<double> stopping_potential(double nu, double work_function,
                                         const PhysicalConstants& k) {
    const auto energy = photoelectron_energy(nu, work_function, k);
    if (!energy) return std::nullopt;
    return *energy / k.e;
}

double bohr_level(unsigned n, const PhysicalConstants& k, unsigned Z) {
    if (n == 0) throw InvalidParameter("principal quantum number starts at 1");
    if (Z == 0) throw InvalidParameter("nuclear charge must be >= 1");
    const double e2 = charge_squared(k);
    const double nd = static_cast<double>(n);
    const double Zd = static_cast<double>(Z);
    return -2.0 * kPi * kPi * k.m_e * e2 * e2 * Zd * Zd / (k.h * k.h * nd * nd);
}

double emission_frequency(unsigned n, unsigned m, const PhysicalConstants& k,
                          unsigned Z) {
    if (m == 0 || n <= m)
        throw InvalidParameter("emission requires n > m >= 1");
    return (bohr_level(n, k, Z) - bohr_level(m, k, Z)) / k.h;
}

double de_broglie_wavelength(double momentum, const PhysicalConstants& k) {
    if (momentum <= 0.0) throw InvalidParameter("momentum must be positive");
    return k.h / momentum;
}

std::vector<double> duane_maxima(double length, double momentum,
                                 std::size_t n_max, const PhysicalConstants& k) {
    if (momentum <= 0.0 || length <= 0.0)
        throw InvalidParameter("momentum and length must be positive");
    std::vector<double> angles;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double s = static_cast<double>(n) * k.h / (length * momentum);
        if (s > 1.0) break;
        angles.push_back(std::asin(s));
    }
    return angles;
}

double boltzmann_entropy(double multiplicity, const PhysicalConstants& k) {
    if (multiplicity < 1.0)
        throw InvalidParameter("multiplicity must be >= 1");
    return k.k_B * std::log(multiplicity);
}

}  // namespace hvq::earlyq
