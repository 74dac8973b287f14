// End-to-end acceptance runner: one line per criterion, nonzero exit when
// any fails.  Tolerances are pinned as constants next to each check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hvq/earlyq.hpp"
#include "hvq/epr.hpp"
#include "hvq/errors.hpp"
#include "hvq/fock.hpp"
#include "hvq/laxphillips.hpp"
#include "hvq/polarization.hpp"
#include "hvq/rng.hpp"

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoRootTwo = 2.0 * std::sqrt(2.0);
const double kTwoRootThree = 2.0 * std::sqrt(3.0);

int failures = 0;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    template <typename T>
    Check& operator<<(const T& value) {
        detail << value;
        return *this;
    }
    void require(bool condition) { ok = ok && condition; }
};

void report(int index, const std::string& label, const Check& check) {
    std::printf("[%s] criterion %d: %s (%s)\n", check.ok ? "PASS" : "FAIL", index,
                label.c_str(), check.detail.str().c_str());
    if (!check.ok) ++failures;
}

void report_error(int index, const std::string& label, const std::exception& err) {
    std::printf("[FAIL] criterion %d: %s (exception: %s)\n", index, label.c_str(),
                err.what());
    ++failures;
}

template <typename Fn>
void run(int index, const std::string& label, Fn&& fn) {
    try {
        Check check;
        fn(check);
        report(index, label, check);
    } catch (const std::exception& err) {
        report_error(index, label, err);
    }
}

struct SlopeFit {
    double slope = 0.0;
    double max_residual = 0.0;
};

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.max_residual =
            std::max(fit.max_residual, std::abs(icpt + fit.slope * x[i] - y[i]));
    }
    return fit;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion_1(Check& c) {
    namespace pol = hvq::polarization;
    const std::size_t grid = 360;
    const auto curve = pol::autocorrelate(pol::ResponseCurve::cos_squared(grid), true);
    double sup = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
        const double alpha = curve.angle(j);
        const double target = 1.0 / 3.0 + 2.0 / 3.0 * std::cos(alpha) * std::cos(alpha);
        sup = std::max(sup, std::abs((*curve.normalized)[j] - target));
    }
    c << "sup_err=" << sup;
    c.require(sup <= 1e-6);

    const auto mismatch = pol::belifante_mismatch(grid);
    c << " dev=" << mismatch.max_deviation << " at=" << mismatch.at_angle;
    c.require(std::abs(mismatch.max_deviation - 1.0 / 3.0) <= 1e-6);
    // The maximum sits where the Malus reference vanishes: alpha = pi/2.
    c.require(std::abs(std::cos(mismatch.at_angle)) <= 1e-6);
}

void criterion_2(Check& c) {
    namespace pol = hvq::polarization;
    const auto witness = pol::fit_response(pol::MalusTarget{1.0 / 3.0}, 360, 2000, 1e-10);
    c << "witness_residual=" << witness.sup_residual;
    c.require(witness.sup_residual <= 1e-4);

    const auto feas = pol::fourier_feasibility(pol::MalusTarget{0.02});
    c << " ratio=" << feas.ratio;
    c.require(!feas.feasible_exact);
    c.require(std::abs(feas.ratio - 0.9608) <= 1e-4);

    double lo = 1e300, hi = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto fit = pol::fit_response(pol::MalusTarget{0.02}, 360, 800, 1e-10, seed);
        lo = std::min(lo, fit.sup_residual);
        hi = std::max(hi, fit.sup_residual);
    }
    c << " restart_spread=[" << lo << "," << hi << "]";
    c.require(hi <= 1.1 * lo);
}

void criterion_3(Check& c) {
    namespace epr = hvq::epr;
    const epr::DetectionModel model{
        hvq::polarization::ResponseCurve::cos_squared(360),
        epr::DetectionMode::f_dependent};
    hvq::RngStream angle_rng(20260814);
    double worst_margin = -1e300;
    for (int k = 0; k < 20; ++k) {
        epr::AngleSettings s;
        s.alpha1 = angle_rng.uniform(0.0, kPi);
        s.alpha2 = angle_rng.uniform(0.0, kPi);
        s.beta1 = angle_rng.uniform(0.0, kPi);
        s.beta2 = angle_rng.uniform(0.0, kPi);
        const auto stats = epr::run_experiment(model, s, 100000,
                                               hvq::split_seed(99, k),
                                               epr::Sampling::counterfactual);
        const double margin = stats.bell_prob_combination -
                              (2.0 + 3.0 * stats.bell_prob_error);
        worst_margin = std::max(worst_margin, margin);
        c.require(margin <= 0.0);
    }
    c << "worst S_prob margin=" << worst_margin;

    const double exact = epr::bell_operator_bound(epr::BoundMode::deterministic, 2, 1, 0);
    c << " enumeration=" << exact;
    c.require(exact == 2.0);
}

void criterion_4(Check& c) {
    namespace epr = hvq::epr;
    const std::vector<double> angles = {0.0, kPi / 4, kPi / 8, 3 * kPi / 8};
    const auto scan = epr::chsh_scan(angles, angles, angles, angles);
    c << "scan_max=" << scan.max_value;
    c.require(std::abs(scan.max_value - kTwoRootTwo) <= 1e-12);

    const auto stats = epr::run_qm_experiment(scan.argmax, 1000000, 424242);
    const double diff = std::abs(stats.chsh_correlator - kTwoRootTwo);
    c << " mc=" << stats.chsh_correlator << " err=" << stats.chsh_error;
    c.require(diff <= 4.0 * stats.chsh_error);
}

void criterion_5(Check& c) {
    namespace epr = hvq::epr;
    const double det = epr::bell_operator_bound(epr::BoundMode::deterministic, 2, 1, 0);
    const double tensor =
        epr::bell_operator_bound(epr::BoundMode::tensor_commuting, 4, 8, 1);
    const double noncomm = epr::bell_operator_bound(epr::BoundMode::noncommuting, 4, 256, 1);
    c << "det=" << det << " tensor=" << tensor << " noncomm=" << noncomm;
    c.require(det == 2.0);
    c.require(std::abs(tensor - kTwoRootTwo) <= 1e-6);
    c.require(noncomm >= 3.40 && noncomm <= kTwoRootThree + 0.05);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const double t = epr::bell_operator_bound(epr::BoundMode::tensor_commuting, 4, 4, seed);
        const double n = epr::bell_operator_bound(epr::BoundMode::noncommuting, 4, 32, seed);
        c.require(det <= t + 1e-9 && t <= n + 1e-9);
    }
}

void criterion_6(Check& c) {
    namespace epr = hvq::epr;
    const epr::AngleSettings settings{0.0, kPi / 4, kPi / 8, 3 * kPi / 8};
    const epr::DetectionModel indep{
        hvq::polarization::ResponseCurve::cos_squared(360),
        epr::DetectionMode::f_independent};
    const auto gap_indep = epr::interchange_gap(indep, settings, 1000000, 51);
    c << "indep_gap=" << gap_indep.gap << " se=" << gap_indep.std_error;
    c.require(std::abs(gap_indep.gap) <= 3.0 * gap_indep.std_error);

    const epr::DetectionModel dep{
        hvq::polarization::ResponseCurve::cos_squared(360),
        epr::DetectionMode::f_dependent};
    const auto gap_dep = epr::interchange_gap(dep, settings, 1000000, 52);
    const auto oracle = epr::interchange_gap_quadrature(dep.response, settings);
    c << " dep_gap=" << gap_dep.gap << " se=" << gap_dep.std_error
      << " oracle=" << oracle.gap;
    c.require(gap_dep.gap > 5.0 * gap_dep.std_error);
    c.require(std::abs(gap_dep.gap - oracle.gap) <= 3.0 * gap_dep.std_error);
}

void criterion_7(Check& c) {
    namespace fock = hvq::fock;
    const double omega = 1.3;
    for (int dim : {2, 8, 16, 64}) {
        const auto phase = fock::sg_phase(dim);
        Eigen::MatrixXcd identity_minus_p0 =
            Eigen::MatrixXcd::Identity(dim, dim);
        identity_minus_p0(0, 0) = 0.0;
        const double isometry =
            (phase.E_dagger * phase.E - identity_minus_p0).norm();
        c.require(isometry == 0.0);
        if (dim >= 3) {
            const auto rep = fock::commutator_report(fock::build_oscillator(dim, omega), phase);
            c.require(rep.lower_interior <= 1e-12 && rep.raise_interior <= 1e-12);
        }
    }
    c << "isometry exact on {2,8,16,64}, interior commutators <=1e-12";

    const auto space = fock::build_doubled(32, omega);
    const int total = 64;
    const double unitary =
        (space.S.adjoint() * space.S -
         Eigen::MatrixXcd::Identity(total, total)).norm();
    c << " S_unitary_defect=" << unitary;
    c.require(unitary == 0.0);

    const auto t_grid = linspace(0.0, 6.0, 241);
    const auto plus = fock::phase_winding(space, +1, t_grid);
    const auto minus = fock::phase_winding(space, -1, t_grid);
    const double slope_plus = fit_line(t_grid, plus).slope;
    const double slope_minus = fit_line(t_grid, minus).slope;
    c << " slopes=" << slope_plus << "," << slope_minus;
    c.require(std::abs(slope_plus + omega) <= 1e-6 * omega);
    c.require(std::abs(slope_minus - omega) <= 1e-6 * omega);

    const auto leak =
        fock::superselection_check(space, linspace(-100.0 / omega, 100.0 / omega, 81));
    c << " leak=" << std::max(leak.max_plus_to_minus, leak.max_minus_to_plus);
    c.require(leak.max_plus_to_minus <= 1e-12 && leak.max_minus_to_plus <= 1e-12);
}

void criterion_8(Check& c) {
    namespace lp = hvq::laxphillips;
    const lp::SpatialGrid grid{2048, 80.0};
    const auto psi = lp::gaussian_packet(-5.0, 2.0, 1.0, grid);
    const auto evo = lp::evolve_free(psi, 0.006, 1000);

    std::vector<double> t, r;
    double norm_drift = 0.0;
    for (const auto& pt : evo.trajectory) {
        t.push_back(pt.t);
        r.push_back(pt.expect_R);
        norm_drift = std::max(norm_drift, std::abs(pt.norm - 1.0));
    }
    const auto fit = fit_line(t, r);
    const double slope_target = 4.25;  // p0^2 + hbar^2/(4 sigma^2), m = 1
    c << "slope=" << fit.slope << " norm_drift=" << norm_drift;
    c.require(std::abs(fit.slope - slope_target) / slope_target <= 1e-6);
    c.require(norm_drift <= 1e-10);

    const double t0 = lp::crossing_time(evo.trajectory);
    c << " t0=" << t0;
    c.require(std::abs(t0 - 40.0 / 17.0) <= 1e-4);

    const auto timed = lp::time_expectation(evo.trajectory);
    const double dT = (timed.back().expect_T - timed.front().expect_T) /
                      (timed.back().t - timed.front().t);
    c.require(std::abs(dT - 1.0) <= 1e-9);

    bool tag_guard = false;
    try {
        (void)lp::superpose(psi, lp::gaussian_packet(-4.0, 2.0, 1.0, grid), 1.0, 1.0);
    } catch (const hvq::TagMismatch&) {
        tag_guard = true;
    }
    c << " tag_guard=" << (tag_guard ? "fires" : "silent");
    c.require(tag_guard);
}

void criterion_9(Check& c) {
    namespace lp = hvq::laxphillips;
    lp::ResonanceParams params;
    params.n_channels = 1;
    params.modes_per_channel = 256;
    params.bandwidth = 16.0;
    params.doorway_energy = 0.0;
    params.in_coupling = 0.0;
    params.internal_energies = {0.0};
    params.internal_couplings = {0.0};
    params.channel_couplings = {0.25};
    const auto sys = lp::build_resonance(params);
    const auto hist =
        lp::resonance_evolve(sys, lp::theta_unit(sys, 1), linspace(0.0, 6.0, 121));

    double sum_err = 0.0;
    for (std::size_t i = 0; i < hist.t.size(); ++i) {
        double total = hist.p_in[i] + hist.p_theta[i];
        for (double v : hist.p_out[i]) total += v;
        sum_err = std::max(sum_err, std::abs(total - 1.0));
    }
    c << "sum_err=" << sum_err;
    c.require(sum_err <= 1e-8);

    const auto level = static_cast<Eigen::Index>(sys.theta_offset() + 1);
    const auto mode = static_cast<Eigen::Index>(sys.out_offset(0));
    const double coupling = sys.hamiltonian(mode, level);
    const double golden = 2.0 * kPi * coupling * coupling / sys.mode_spacing;
    const auto fit = lp::fit_theta_decay(hist);
    c << " rate=" << fit.rate << " golden=" << golden
      << " log_residual=" << fit.log_residual;
    c.require(std::abs(fit.rate - golden) / golden <= 0.20);
    c.require(fit.log_residual <= 0.05);

    lp::ResonanceParams two = params;
    two.n_channels = 2;
    two.in_coupling = 0.15;
    two.internal_energies = {0.0, 0.0};
    two.internal_couplings = {0.5, 0.5};
    two.channel_couplings = {0.25, 0.25};
    const auto sys2 = lp::build_resonance(two);
    const auto hist2 =
        lp::resonance_evolve(sys2, lp::in_packet(sys2), linspace(0.0, 40.0, 201));
    c << " branching=" << hist2.branching[0] << "/" << hist2.branching[1];
    c.require(std::abs(hist2.branching[0] - 0.5) <= 1e-3);
    c.require(std::abs(hist2.branching[1] - 0.5) <= 1e-3);
}

void criterion_10(Check& c) {
    namespace eq = hvq::earlyq;
    const auto k = eq::PhysicalConstants::si();
    double worst_ratio = 0.0;
    for (double x : {1e-4, 1.0, 20.0}) {
        const double temp = 300.0;
        const double nu = x * k.k_B * temp / k.h;
        const double ratio = eq::planck_density(nu, temp, k) /
                             eq::rayleigh_jeans_density(nu, temp, k);
        const double target = x / std::expm1(x);
        worst_ratio = std::max(worst_ratio, std::abs(ratio / target - 1.0));
    }
    c << "ratio_err=" << worst_ratio;
    c.require(worst_ratio <= 1e-12);

    bool ordered = true;
    for (int i = 0; i < 1000; ++i) {
        const double nu = 1e8 * std::pow(1e10, i / 999.0);
        ordered = ordered && eq::planck_density(nu, 300.0, k) <=
                                 eq::rayleigh_jeans_density(nu, 300.0, k) * (1 + 1e-15);
        ordered = ordered && eq::planck_density(nu, 6000.0, k) <=
                                 eq::rayleigh_jeans_density(nu, 6000.0, k) * (1 + 1e-15);
    }
    c << " ordering=" << (ordered ? "holds" : "violated");
    c.require(ordered);

    const double temp = 300.0;
    const double nu = k.k_B * temp / k.h;  // x = 1
    const double closed = eq::avg_oscillator_energy(nu, temp, k);
    const double truncated = eq::avg_oscillator_energy_truncated(nu, temp, k, 200);
    c << " trunc_err=" << std::abs(truncated / closed - 1.0);
    c.require(std::abs(truncated / closed - 1.0) <= 1e-12);

    const double e1_ev = eq::bohr_level(1, k) / k.e;
    c << " E1=" << e1_ev << "eV";
    c.require(std::abs(e1_ev + 13.6) <= 0.005 * 13.6);

    const double balmer = eq::emission_frequency(3, 2, k) / eq::emission_frequency(4, 2, k);
    c << " balmer=" << balmer;
    c.require(std::abs(balmer - 20.0 / 27.0) <= 1e-12);
}

}  // namespace

int main() {
    run(1, "normalized Malus autocorrelation and its epsilon=0 mismatch", criterion_1);
    run(2, "inversion witness, feasibility ratio, restart stability", criterion_2);
    run(3, "counterfactual simulation respects the local bound", criterion_3);
    run(4, "quantum reference reaches 2*sqrt(2) in scan and Monte Carlo", criterion_4);
    run(5, "bound ladder 2, 2*sqrt(2), 2*sqrt(3) with monotone chain", criterion_5);
    run(6, "interchange gap: null when f-independent, resolved when f-dependent",
        criterion_6);
    run(7, "phase operator isometries, winding slopes, superselection", criterion_7);
    run(8, "free packet R-affinity, zero crossing, tag guard", criterion_8);
    run(9, "resonance golden-rule decay and symmetric branching", criterion_9);
    run(10, "blackbody ratios, truncated sums, Bohr levels", criterion_10);

    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
