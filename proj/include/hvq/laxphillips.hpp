#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hvq::laxphillips {

// Uniform spatial grid on [-length/2, length/2), node i at -length/2 + i*spacing.
// n must be a power of two so the spectral propagator can use a radix-2 transform.
struct SpatialGrid {
    std::size_t n = 0;
    double length = 0.0;

    double spacing() const { return length / static_cast<double>(n); }
    double node(std::size_t i) const {
        return -0.5 * length + static_cast<double>(i) * spacing();
    }
};

// Identifies the trajectory a state belongs to.  Two packets may be superposed
// only when their tags compare equal, i.e. they arose from the same initial
// conditions (possibly evolved for different durations).
struct TrajectoryTag {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma = 0.0;
    double t0 = 0.0;

    bool operator==(const TrajectoryTag&) const = default;
};

struct Wavepacket {
    SpatialGrid grid;
    Eigen::VectorXcd amplitudes;  // size grid.n, sum |psi_i|^2 * spacing = 1
    double mass = 1.0;
    double hbar = 1.0;
    double time = 0.0;            // evolution time reached so far
    TrajectoryTag tag;
};

enum class Classification { incoming, zero, outgoing };

struct TrajectoryPoint {
    double t = 0.0;
    double expect_R = 0.0;    // Re<psi| q p |psi>
    double expect_T = 0.0;    // t - t0; NaN until time_expectation fills it
    double expect_q = 0.0;
    double expect_p = 0.0;
    double norm = 0.0;
    Classification classification = Classification::zero;
};

struct EvolutionResult {
    std::vector<TrajectoryPoint> trajectory;  // steps + 1 points, one per step boundary
    Wavepacket final_state;
};

// Minimal-uncertainty Gaussian centred at x0 with mean momentum p0, sampled on
// the grid and renormalised so the discrete norm is exactly one.  Throws
// GridTooSmall when 6*sigma >= length (the tails would wrap around) and
// BandLimitExceeded when |p0| >= pi*hbar/spacing (the carrier would alias).
// t0 stamps the trajectory tag; the packet itself is taken at that time.
Wavepacket gaussian_packet(double x0, double p0, double sigma, const SpatialGrid& grid,
                           double t0 = 0.0, double mass = 1.0, double hbar = 1.0);

double norm(const Wavepacket& psi);
double expect_q(const Wavepacket& psi);
double expect_p(const Wavepacket& psi);
double expect_p_squared(const Wavepacket& psi);

// Re<psi| q p |psi>, the dilation generator up to the symmetrised ordering:
// Re<q p> equals <(qp + pq)/2> because the commutator contributes only the
// imaginary part.  Position acts on the grid, momentum acts spectrally.
double expect_R(const Wavepacket& psi);

// Sign of expect_R with a dead band of tol_R around zero.
Classification classify(const Wavepacket& psi, double tol_R = 1e-9);

// Free propagation by `steps` steps of dt via the exact spectral factor
// exp(-i hbar k^2 dt / 2m) per mode.  The returned trajectory holds steps + 1
// points (the initial one included); expect_T is NaN throughout because the
// zero crossing of expect_R is only known once the whole series exists.
EvolutionResult evolve_free(const Wavepacket& psi, double dt, std::size_t steps);

// Linear-interpolated time at which expect_R crosses zero.  Throws NoCrossing
// when the series never changes sign (and never touches zero).
double crossing_time(const std::vector<TrajectoryPoint>& trajectory);

// Copy of the trajectory with expect_T = t - t0 filled in, t0 from
// crossing_time.  The operator T is conjugate to R only on trajectories that
// actually cross, hence the same NoCrossing contract.
std::vector<TrajectoryPoint> time_expectation(std::vector<TrajectoryPoint> trajectory);

// c1*psi1 + c2*psi2, renormalised.  Throws TagMismatch when the packets do not
// share a trajectory tag, DimensionMismatch when grids or units differ, and
// ZeroAmplitude when the combination cancels to numerical zero.
Wavepacket superpose(const Wavepacket& psi1, const Wavepacket& psi2,
                     std::complex<double> c1, std::complex<double> c2);

struct OscillatorPoint {
    double t = 0.0;
    double expect_q = 0.0;
    double expect_p = 0.0;
    double phase = 0.0;      // unwrapped atan2(<q>, <p>/(m*omega)); grows as omega*t
    double tan_half = 0.0;   // tan(phase/2), sweeps -inf..inf once per period
};

// Classical-moment trajectory of a coherent oscillator state with unit mass:
// <q>(t) = q0 cos(omega t) + (p0/omega) sin(omega t) and the matching <p>.
// Throws ZeroAmplitude when q0 = p0 = 0 (the phase is undefined at the
// origin) and InvalidParameter when omega <= 0 or t_grid is empty.
std::vector<OscillatorPoint> oscillator_trajectory(double omega, double q0, double p0,
                                                   const std::vector<double>& t_grid);

// Doorway-mediated decay network.  Index layout over the full Hilbert space:
//   [0, M)                 in channel, M discretised modes
//   [M, M + n_ch + 1)      theta block: doorway first, then one internal
//                          level per out channel
//   [M + n_ch + 1 + c*M, ...)  out channel c, M modes each
// The in modes couple to the doorway, the doorway couples to each internal
// level, and internal level c couples to the modes of out channel c.  Per-mode
// couplings are g*sqrt(spacing) so the decay rate of a level into its channel
// is 2*pi*g^2 independent of the discretisation.
struct ResonanceParams {
    std::size_t n_channels = 1;
    std::size_t modes_per_channel = 256;   // at least 64
    double bandwidth = 16.0;               // each continuum spans [-W/2, W/2]
    double doorway_energy = 0.0;
    double in_coupling = 0.0;              // density g_in, in modes -> doorway
    std::vector<double> internal_energies; // size n_channels
    std::vector<double> internal_couplings;// doorway -> internal level, size n_channels
    std::vector<double> channel_couplings; // density g_c, level c -> out channel c
};

struct ResonanceSystem {
    ResonanceParams params;
    Eigen::MatrixXd hamiltonian;  // real symmetric
    double mode_spacing = 0.0;    // bandwidth / modes_per_channel

    std::size_t dim() const { return static_cast<std::size_t>(hamiltonian.rows()); }
    std::size_t theta_offset() const { return params.modes_per_channel; }
    std::size_t theta_dim() const { return params.n_channels + 1; }
    std::size_t out_offset(std::size_t channel) const {
        return theta_offset() + theta_dim() + channel * params.modes_per_channel;
    }
};

ResonanceSystem build_resonance(const ResonanceParams& params);

// Normalised in-channel state with a Gaussian energy envelope of width
// `energy_width` centred on `energy_center` (defaults: doorway energy,
// bandwidth/10).
Eigen::VectorXcd in_packet(const ResonanceSystem& system, double energy_center,
                           double energy_width);
Eigen::VectorXcd in_packet(const ResonanceSystem& system);

// Unit vector on theta level `index` (0 = doorway, 1..n_channels = internal).
Eigen::VectorXcd theta_unit(const ResonanceSystem& system, std::size_t index);

struct ResonanceHistory {
    std::vector<double> t;
    std::vector<double> p_in;
    std::vector<double> p_theta;
    std::vector<std::vector<double>> p_out;  // [time][channel]
    std::vector<double> branching;           // out-channel shares at the final time
};

// Spectral evolution of `initial` under the system Hamiltonian, sampling
// subspace occupations on t_grid.  Throws NonHermitian when the stored matrix
// has been tampered with, DimensionMismatch on a wrong-sized initial vector,
// and InvalidParameter on an empty grid or zero initial norm.
ResonanceHistory resonance_evolve(const ResonanceSystem& system,
                                  const Eigen::VectorXcd& initial,
                                  const std::vector<double>& t_grid);

struct DecayFit {
    double rate = 0.0;          // P_theta ~ exp(-rate * t) on the fit window
    double log_residual = 0.0;  // max |fit - log P| / (log-range of the window)
    std::size_t window_begin = 0;
    std::size_t window_end = 0;  // one past the last fitted sample
};

// Least-squares line through log P_theta on the decaying flank where P_theta
// lies in [0.1, 0.9] of its peak.  Throws NoCrossing when the history never
// develops a decaying flank with at least three samples.
DecayFit fit_theta_decay(const ResonanceHistory& history);

// CSV emitters.  Trajectory: t,expect_R,expect_T,expect_q,expect_p,norm,
// classification.  Resonance: t,P_in,P_theta,P_out_1..P_out_N.
std::string to_csv(const std::vector<TrajectoryPoint>& trajectory);
std::string to_csv(const ResonanceHistory& history);
std::string to_csv(const std::vector<OscillatorPoint>& trajectory);

}  // namespace hvq::laxphillips
