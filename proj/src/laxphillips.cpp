#include "hvq/laxphillips.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "hvq/errors.hpp"

namespace hvq::laxphillips {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_grid(const SpatialGrid& grid) {
    if (!is_power_of_two(grid.n)) {
        throw InvalidParameter("grid size must be a power of two and at least 2");
    }
    if (!(grid.length > 0.0)) {
        throw InvalidParameter("grid length must be positive");
    }
}

// Momentum of spectral mode j in FFT index order: k_j = 2*pi*j'/L with
// j' = j for j < n/2 and j' = j - n above.
double mode_momentum(std::size_t j, const SpatialGrid& grid, double hbar) {
    const auto n = static_cast<std::ptrdiff_t>(grid.n);
    auto shifted = static_cast<std::ptrdiff_t>(j);
    if (shifted >= n / 2) shifted -= n;
    return hbar * kTwoPi * static_cast<double>(shifted) / grid.length;
}

Eigen::VectorXcd forward_fft(const Eigen::VectorXcd& v) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd out(v.size());
    fft.fwd(out, v);
    return out;
}

Eigen::VectorXcd inverse_fft(const Eigen::VectorXcd& v) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd out(v.size());
    fft.inv(out, v);
    return out;
}

double squared_weight(const Wavepacket& psi) {
    return psi.amplitudes.squaredNorm() * psi.grid.spacing();
}

std::string classification_label(Classification c) {
    switch (c) {
        case Classification::incoming: return "In";
        case Classification::zero: return "Zero";
        case Classification::outgoing: return "Out";
    }
    return "Zero";
}

std::string format_double(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

TrajectoryPoint make_point(const Wavepacket& psi, double t) {
    TrajectoryPoint pt;
    pt.t = t;
    pt.expect_R = expect_R(psi);
    pt.expect_T = std::numeric_limits<double>::quiet_NaN();
    pt.expect_q = expect_q(psi);
    pt.expect_p = expect_p(psi);
    pt.norm = norm(psi);
    pt.classification = classify(psi);
    return pt;
}

}  // namespace

Wavepacket gaussian_packet(double x0, double p0, double sigma, const SpatialGrid& grid,
                           double t0, double mass, double hbar) {
    check_grid(grid);
    if (!(sigma > 0.0)) throw InvalidParameter("sigma must be positive");
    if (!(mass > 0.0)) throw InvalidParameter("mass must be positive");
    if (!(hbar > 0.0)) throw InvalidParameter("hbar must be positive");
    if (6.0 * sigma >= grid.length) {
        throw GridTooSmall("packet width 6*sigma does not fit in the grid length");
    }
    const double p_limit = std::numbers::pi * hbar / grid.spacing();
    if (std::abs(p0) >= p_limit) {
        throw BandLimitExceeded("carrier momentum reaches the grid Nyquist limit");
    }

    Wavepacket psi;
    psi.grid = grid;
    psi.mass = mass;
    psi.hbar = hbar;
    psi.time = t0;
    psi.tag = TrajectoryTag{x0, p0, sigma, t0};
    psi.amplitudes.resize(static_cast<Eigen::Index>(grid.n));
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double dx = grid.node(i) - x0;
        const double envelope = std::exp(-dx * dx / (4.0 * sigma * sigma));
        const double phase = p0 * dx / hbar;
        psi.amplitudes[static_cast<Eigen::Index>(i)] =
            envelope * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    psi.amplitudes /= std::sqrt(squared_weight(psi));
    return psi;
}

double norm(const Wavepacket& psi) { return std::sqrt(squared_weight(psi)); }

double expect_q(const Wavepacket& psi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.grid.n; ++i) {
        acc += psi.grid.node(i) * std::norm(psi.amplitudes[static_cast<Eigen::Index>(i)]);
    }
    return acc * psi.grid.spacing() / squared_weight(psi);
}

double expect_p(const Wavepacket& psi) {
    const Eigen::VectorXcd hat = forward_fft(psi.amplitudes);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < psi.grid.n; ++j) {
        const double w = std::norm(hat[static_cast<Eigen::Index>(j)]);
        num += mode_momentum(j, psi.grid, psi.hbar) * w;
        den += w;
    }
    return num / den;
}

double expect_p_squared(const Wavepacket& psi) {
    const Eigen::VectorXcd hat = forward_fft(psi.amplitudes);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < psi.grid.n; ++j) {
        const double w = std::norm(hat[static_cast<Eigen::Index>(j)]);
        const double p = mode_momentum(j, psi.grid, psi.hbar);
        num += p * p * w;
        den += w;
    }
    return num / den;
}

double expect_R(const Wavepacket& psi) {
    Eigen::VectorXcd hat = forward_fft(psi.amplitudes);
    for (std::size_t j = 0; j < psi.grid.n; ++j) {
        hat[static_cast<Eigen::Index>(j)] *= mode_momentum(j, psi.grid, psi.hbar);
    }
    const Eigen::VectorXcd p_psi = inverse_fft(hat);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < psi.grid.n; ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        acc += std::conj(psi.amplitudes[idx]) * psi.grid.node(i) * p_psi[idx];
    }
    return acc.real() * psi.grid.spacing() / squared_weight(psi);
}

Classification classify(const Wavepacket& psi, double tol_R) {
    const double r = expect_R(psi);
    if (r < -tol_R) return Classification::incoming;
    if (r > tol_R) return Classification::outgoing;
    return Classification::zero;
}

EvolutionResult evolve_free(const Wavepacket& psi, double dt, std::size_t steps) {
    check_grid(psi.grid);
    if (psi.amplitudes.size() != static_cast<Eigen::Index>(psi.grid.n)) {
        throw DimensionMismatch("amplitude count does not match the grid");
    }
    if (!std::isfinite(dt)) throw InvalidParameter("dt must be finite");

    EvolutionResult result;
    result.trajectory.reserve(steps + 1);
    result.final_state = psi;
    result.trajectory.push_back(make_point(result.final_state, psi.time));

    // One-step spectral factors exp(-i p^2 dt / (2 m hbar)), exact per mode.
    Eigen::VectorXcd factor(static_cast<Eigen::Index>(psi.grid.n));
    for (std::size_t j = 0; j < psi.grid.n; ++j) {
        const double p = mode_momentum(j, psi.grid, psi.hbar);
        const double angle = -p * p * dt / (2.0 * psi.mass * psi.hbar);
        factor[static_cast<Eigen::Index>(j)] =
            std::complex<double>(std::cos(angle), std::sin(angle));
    }

    Eigen::VectorXcd hat = forward_fft(psi.amplitudes);
    for (std::size_t k = 1; k <= steps; ++k) {
        hat = hat.cwiseProduct(factor);
        result.final_state.amplitudes = inverse_fft(hat);
        result.final_state.time = psi.time + static_cast<double>(k) * dt;
        result.trajectory.push_back(make_point(result.final_state, result.final_state.time));
    }
    return result;
}

double crossing_time(const std::vector<TrajectoryPoint>& trajectory) {
    if (trajectory.empty()) throw InvalidParameter("trajectory is empty");
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        if (trajectory[i].expect_R == 0.0) return trajectory[i].t;
        if (i + 1 == trajectory.size()) break;
        const double a = trajectory[i].expect_R;
        const double b = trajectory[i + 1].expect_R;
        if ((a < 0.0) != (b < 0.0)) {
            const double frac = a / (a - b);
            return trajectory[i].t + frac * (trajectory[i + 1].t - trajectory[i].t);
        }
    }
    throw NoCrossing("expect_R does not change sign in the sampled window");
}

std::vector<TrajectoryPoint> time_expectation(std::vector<TrajectoryPoint> trajectory) {
    const double t0 = crossing_time(trajectory);
    for (auto& pt : trajectory) pt.expect_T = pt.t - t0;
    return trajectory;
}

Wavepacket superpose(const Wavepacket& psi1, const Wavepacket& psi2,
                     std::complex<double> c1, std::complex<double> c2) {
    if (!(psi1.tag == psi2.tag)) {
        throw TagMismatch("packets belong to different trajectories");
    }
    if (psi1.grid.n != psi2.grid.n || psi1.grid.length != psi2.grid.length ||
        psi1.mass != psi2.mass || psi1.hbar != psi2.hbar) {
        throw DimensionMismatch("packets live on different grids or units");
    }
    Wavepacket out = psi1;
    out.amplitudes = c1 * psi1.amplitudes + c2 * psi2.amplitudes;
    const double nrm = std::sqrt(squared_weight(out));
    if (nrm <= 1e-12 * (std::abs(c1) + std::abs(c2) + 1e-300)) {
        throw ZeroAmplitude("superposition cancels to numerical zero");
    }
    out.amplitudes /= nrm;
    return out;
}

std::vector<OscillatorPoint> oscillator_trajectory(double omega, double q0, double p0,
                                                   const std::vector<double>& t_grid) {
    if (!(omega > 0.0)) throw InvalidParameter("omega must be positive");
    if (t_grid.empty()) throw InvalidParameter("t_grid is empty");
    if (q0 == 0.0 && p0 == 0.0) {
        throw ZeroAmplitude("phase is undefined for the zero-amplitude trajectory");
    }

    std::vector<OscillatorPoint> series;
    series.reserve(t_grid.size());
    double previous = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        OscillatorPoint pt;
        pt.t = t;
        pt.expect_q = q0 * std::cos(omega * t) + (p0 / omega) * std::sin(omega * t);
        pt.expect_p = p0 * std::cos(omega * t) - q0 * omega * std::sin(omega * t);
        const double raw = std::atan2(pt.expect_q, pt.expect_p / omega);
        if (i == 0) {
            pt.phase = raw;
        } else {
            // Unwrap: the grid is assumed fine enough that the true phase
            // advances by less than pi between samples.
            double delta = raw - std::fmod(previous, kTwoPi);
            delta -= kTwoPi * std::round(delta / kTwoPi);
            pt.phase = previous + delta;
        }
        previous = pt.phase;
        pt.tan_half = std::tan(0.5 * pt.phase);
        series.push_back(pt);
    }
    return series;
}

ResonanceSystem build_resonance(const ResonanceParams& params) {
    if (params.n_channels == 0) throw InvalidParameter("at least one out channel required");
    if (params.modes_per_channel < 64) {
        throw InvalidParameter("continuum discretisation needs at least 64 modes per channel");
    }
    if (!(params.bandwidth > 0.0)) throw InvalidParameter("bandwidth must be positive");
    if (params.internal_energies.size() != params.n_channels ||
        params.internal_couplings.size() != params.n_channels ||
        params.channel_couplings.size() != params.n_channels) {
        throw DimensionMismatch("per-channel parameter vectors must have n_channels entries");
    }

    ResonanceSystem sys;
    sys.params = params;
    const std::size_t m = params.modes_per_channel;
    const std::size_t nc = params.n_channels;
    sys.mode_spacing = params.bandwidth / static_cast<double>(m);
    const double root_spacing = std::sqrt(sys.mode_spacing);

    const std::size_t dim = m + (nc + 1) + nc * m;
    sys.hamiltonian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
    auto& h = sys.hamiltonian;

    // Midpoint energies keep the discretised band symmetric about zero.
    auto mode_energy = [&](std::size_t j) {
        return -0.5 * params.bandwidth +
               (static_cast<double>(j) + 0.5) * sys.mode_spacing;
    };

    const auto doorway = static_cast<Eigen::Index>(sys.theta_offset());
    h(doorway, doorway) = params.doorway_energy;
    for (std::size_t j = 0; j < m; ++j) {
        const auto row = static_cast<Eigen::Index>(j);
        h(row, row) = mode_energy(j);
        h(row, doorway) = params.in_coupling * root_spacing;
        h(doorway, row) = h(row, doorway);
    }
    for (std::size_t c = 0; c < nc; ++c) {
        const auto level = doorway + 1 + static_cast<Eigen::Index>(c);
        h(level, level) = params.internal_energies[c];
        h(doorway, level) = params.internal_couplings[c];
        h(level, doorway) = h(doorway, level);
        for (std::size_t j = 0; j < m; ++j) {
            const auto row = static_cast<Eigen::Index>(sys.out_offset(c) + j);
            h(row, row) = mode_energy(j);
            h(row, level) = params.channel_couplings[c] * root_spacing;
            h(level, row) = h(row, level);
        }
    }
    return sys;
}

Eigen::VectorXcd in_packet(const ResonanceSystem& system, double energy_center,
                           double energy_width) {
    if (!(energy_width > 0.0)) throw InvalidParameter("energy width must be positive");
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(system.dim()));
    const std::size_t m = system.params.modes_per_channel;
    for (std::size_t j = 0; j < m; ++j) {
        const double e = system.hamiltonian(static_cast<Eigen::Index>(j),
                                            static_cast<Eigen::Index>(j));
        const double d = e - energy_center;
        state[static_cast<Eigen::Index>(j)] =
            std::exp(-d * d / (4.0 * energy_width * energy_width));
    }
    const double nrm = state.norm();
    if (nrm <= 0.0) throw ZeroAmplitude("in packet has no support inside the band");
    state /= nrm;
    return state;
}

Eigen::VectorXcd in_packet(const ResonanceSystem& system) {
    return in_packet(system, system.params.doorway_energy, system.params.bandwidth / 10.0);
}

Eigen::VectorXcd theta_unit(const ResonanceSystem& system, std::size_t index) {
    if (index >= system.theta_dim()) {
        throw InvalidParameter("theta index out of range");
    }
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(system.dim()));
    state[static_cast<Eigen::Index>(system.theta_offset() + index)] = 1.0;
    return state;
}

ResonanceHistory resonance_evolve(const ResonanceSystem& system,
                                  const Eigen::VectorXcd& initial,
                                  const std::vector<double>& t_grid) {
    const auto& h = system.hamiltonian;
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw DimensionMismatch("hamiltonian must be square and nonempty");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw NonHermitian("hamiltonian is not symmetric");
    }
    if (initial.size() != h.rows()) {
        throw DimensionMismatch("initial state size does not match the hamiltonian");
    }
    if (t_grid.empty()) throw InvalidParameter("t_grid is empty");
    const double initial_norm = initial.norm();
    if (initial_norm <= 0.0) throw InvalidParameter("initial state has zero norm");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::MatrixXd& vecs = solver.eigenvectors();
    const Eigen::VectorXd& vals = solver.eigenvalues();
    const Eigen::VectorXcd coeffs = vecs.transpose() * (initial / initial_norm);

    const std::size_t m = system.params.modes_per_channel;
    const std::size_t nc = system.params.n_channels;

    ResonanceHistory hist;
    hist.t = t_grid;
    hist.p_in.reserve(t_grid.size());
    hist.p_theta.reserve(t_grid.size());
    hist.p_out.reserve(t_grid.size());

    Eigen::VectorXcd rotated(coeffs.size());
    for (double t : t_grid) {
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
            const double angle = -vals[k] * t;
            rotated[k] = coeffs[k] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        const Eigen::VectorXcd state = vecs * rotated;
        hist.p_in.push_back(
            state.segment(0, static_cast<Eigen::Index>(m)).squaredNorm());
        hist.p_theta.push_back(
            state.segment(static_cast<Eigen::Index>(system.theta_offset()),
                          static_cast<Eigen::Index>(system.theta_dim()))
                .squaredNorm());
        std::vector<double> outs(nc);
        for (std::size_t c = 0; c < nc; ++c) {
            outs[c] = state.segment(static_cast<Eigen::Index>(system.out_offset(c)),
                                    static_cast<Eigen::Index>(m))
                          .squaredNorm();
        }
        hist.p_out.push_back(std::move(outs));
    }

    hist.branching.assign(nc, 0.0);
    const auto& last = hist.p_out.back();
    double total = 0.0;
    for (double v : last) total += v;
    if (total > 0.0) {
        for (std::size_t c = 0; c < nc; ++c) hist.branching[c] = last[c] / total;
    }
    return hist;
}

DecayFit fit_theta_decay(const ResonanceHistory& history) {
    const auto& p = history.p_theta;
    if (p.size() < 3) throw NoCrossing("history too short to fit a decay");
    const std::size_t peak =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    const double p_max = p[peak];
    if (!(p_max > 0.0)) throw NoCrossing("theta occupation never becomes positive");

    std::size_t begin = peak;
    while (begin < p.size() && p[begin] > 0.9 * p_max) ++begin;
    std::size_t end = begin;
    while (end < p.size() && p[end] >= 0.1 * p_max) ++end;
    if (end - begin < 3) throw NoCrossing("decaying flank has fewer than three samples");

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const auto count = static_cast<double>(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        const double y = std::log(p[i]);
        st += history.t[i];
        sy += y;
        stt += history.t[i] * history.t[i];
        sty += history.t[i] * y;
    }
    const double slope = (count * sty - st * sy) / (count * stt - st * st);
    const double intercept = (sy - slope * st) / count;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double worst = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double y = std::log(p[i]);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
        worst = std::max(worst, std::abs(intercept + slope * history.t[i] - y));
    }
    DecayFit fit;
    fit.rate = -slope;
    fit.log_residual = hi > lo ? worst / (hi - lo) : worst;
    fit.window_begin = begin;
    fit.window_end = end;
    return fit;
}

std::string to_csv(const std::vector<TrajectoryPoint>& trajectory) {
    std::ostringstream out;
    out << "t,expect_R,expect_T,expect_q,expect_p,norm,classification\n";
    for (const auto& pt : trajectory) {
        out << format_double(pt.t) << ',' << format_double(pt.expect_R) << ','
            << format_double(pt.expect_T) << ',' << format_double(pt.expect_q) << ','
            << format_double(pt.expect_p) << ',' << format_double(pt.norm) << ','
            << classification_label(pt.classification) << '\n';
    }
    return out.str();
}

std::string to_csv(const ResonanceHistory& history) {
    std::ostringstream out;
    out << "t,P_in,P_theta";
    const std::size_t nc = history.p_out.empty() ? 0 : history.p_out.front().size();
    for (std::size_t c = 1; c <= nc; ++c) out << ",P_out_" << c;
    out << '\n';
    for (std::size_t i = 0; i < history.t.size(); ++i) {
        out << format_double(history.t[i]) << ',' << format_double(history.p_in[i]) << ','
            << format_double(history.p_theta[i]);
        for (double v : history.p_out[i]) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const std::vector<OscillatorPoint>& trajectory) {
    std::ostringstream out;
    out << "t,expect_q,expect_p,phase,tan_half\n";
    for (const auto& pt : trajectory) {
        out << format_double(pt.t) << ',' << format_double(pt.expect_q) << ','
            << format_double(pt.expect_p) << ',' << format_double(pt.phase) << ','
            << format_double(pt.tan_half) << '\n';
    }
    return out.str();
}

}  // namespace hvq::laxphillips
