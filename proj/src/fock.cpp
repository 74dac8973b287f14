#include "hvq/fock.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

#include "hvq/errors.hpp"

namespace hvq::fock {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

double spectral_norm(const MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

// Norm over rows and columns n < D-1 only.
double interior_norm(const MatrixXcd& m) {
    const Eigen::Index d = m.rows() - 1;
    return spectral_norm(m.topLeftCorner(d, d));
}

std::string format_double(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

std::vector<double> unwrap(const std::vector<double>& raw) {
    std::vector<double> out(raw.size());
    if (raw.empty()) return out;
    out[0] = raw[0];
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 1; k < raw.size(); ++k) {
        double delta = raw[k] - raw[k - 1];
        delta -= two_pi * std::round(delta / two_pi);
        out[k] = out[k - 1] + delta;
    }
    return out;
}

}  // namespace

TruncatedOscillator build_oscillator(int dim, double omega) {
    if (dim < 3) throw InvalidParameter("oscillator needs dimension >= 3");
    if (omega < 0.0) throw InvalidParameter("omega must be >= 0");
    TruncatedOscillator osc;
    osc.dim = dim;
    osc.omega = omega;
    osc.a = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        osc.a(n - 1, n) = std::sqrt(static_cast<double>(n));
    osc.a_dagger = osc.a.adjoint();
    osc.N = osc.a_dagger * osc.a;
    osc.H = 0.5 * omega * (osc.a * osc.a_dagger + osc.a_dagger * osc.a);
    return osc;
}

PhaseOperator sg_phase(int dim) {
    if (dim < 2) throw InvalidParameter("phase operator needs dimension >= 2");
    PhaseOperator phase;
    phase.E = MatrixXcd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) phase.E(n, n + 1) = 1.0;
    phase.E_dagger = phase.E.adjoint();
    return phase;
}

CommutatorReport commutator_report(const TruncatedOscillator& osc,
                                   const PhaseOperator& phase) {
    if (osc.H.rows() != phase.E.rows())
        throw DimensionMismatch("oscillator and phase operator dimensions differ");
    const MatrixXcd lower =
        osc.H * phase.E - phase.E * osc.H + osc.omega * phase.E;
    const MatrixXcd raise = osc.H * phase.E_dagger - phase.E_dagger * osc.H -
                            osc.omega * phase.E_dagger;
    CommutatorReport rep;
    rep.lower_interior = interior_norm(lower);
    rep.raise_interior = interior_norm(raise);
    rep.lower_full = spectral_norm(lower);
    rep.raise_full = spectral_norm(raise);
    return rep;
}

DoubledSpace build_doubled(int dim_per_block, double omega) {
    if (dim_per_block < 2)
        throw InvalidParameter("doubled space needs >= 2 levels per block");
    if (omega < 0.0) throw InvalidParameter("omega must be >= 0");
    const int D = dim_per_block;
    const int n2 = 2 * D;
    DoubledSpace sp;
    sp.dim_per_block = D;
    sp.omega = omega;
    sp.J = MatrixXcd::Zero(n2, n2);
    sp.S = MatrixXcd::Zero(n2, n2);
    sp.H2 = MatrixXcd::Zero(n2, n2);
    for (int k = 0; k < n2; ++k) {
        const int m = k - D;
        sp.J(k, k) = m >= 0 ? 1.0 : -1.0;
        const double level = m >= 0 ? static_cast<double>(m)
                                    : static_cast<double>(-m - 1);
        sp.H2(k, k) = omega * (level + 0.5);
    }
    for (int m = -D + 1; m < D; ++m) sp.S(m - 1 + D, m + D) = 1.0;
    sp.S(D - 1 + D, 0) = 1.0;  // cyclic closure m = -D -> D-1
    return sp;
}

SuperselectionReport superselection_check(const DoubledSpace& space,
                                          const std::vector<double>& t_grid) {
    const int D = space.dim_per_block;
    const int n2 = 2 * D;
    SuperselectionReport rep;
    for (double t : t_grid) {
        MatrixXcd u = MatrixXcd::Zero(n2, n2);
        for (int k = 0; k < n2; ++k)
            u(k, k) = std::exp(cplx(0.0, -space.H2(k, k).real() * t));
        // Blocks: k < D is J = -1, k >= D is J = +1.
        rep.max_plus_to_minus = std::max(
            rep.max_plus_to_minus, spectral_norm(u.topRightCorner(D, D)));
        rep.max_minus_to_plus = std::max(
            rep.max_minus_to_plus, spectral_norm(u.bottomLeftCorner(D, D)));
    }
    return rep;
}

std::vector<double> phase_winding(const DoubledSpace& space, int block,
                                  const std::vector<double>& t_grid) {
    const int D = space.dim_per_block;
    VectorXcd psi = VectorXcd::Zero(2 * D);
    const double amp = 1.0 / std::sqrt(2.0);
    if (block == 1) {
        psi(D) = amp;      // m = 0
        psi(D + 1) = amp;  // m = 1
    } else if (block == -1) {
        psi(D - 2) = amp;  // m = -2
        psi(D - 1) = amp;  // m = -1
    } else {
        throw InvalidParameter("block selector must be +1 or -1");
    }
    return phase_winding(space, psi, t_grid);
}

std::vector<double> phase_winding(const DoubledSpace& space,
                                  const VectorXcd& initial,
                                  const std::vector<double>& t_grid) {
    const int D = space.dim_per_block;
    if (initial.size() != 2 * D)
        throw DimensionMismatch("initial vector does not match the space");
    const double scale = initial.cwiseAbs().maxCoeff();
    if (scale <= 0.0) throw InvalidParameter("initial vector is zero");
    std::vector<int> support;
    for (int k = 0; k < 2 * D; ++k)
        if (std::abs(initial(k)) > 1e-12 * scale) support.push_back(k);
    if (support.size() != 2)
        throw InvalidParameter("state must occupy exactly two levels");
    const int lo = support[0], hi = support[1];
    if (hi != lo + 1)
        throw InvalidParameter("the two levels must be m-adjacent");
    if ((lo < D) != (hi < D))
        throw BlockMixture("state spans both superselection blocks");

    const double e_lo = space.H2(lo, lo).real();
    const double e_hi = space.H2(hi, hi).real();
    std::vector<double> raw(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        const cplx upper = initial(hi) * std::exp(cplx(0.0, -e_hi * t));
        const cplx lower = initial(lo) * std::exp(cplx(0.0, -e_lo * t));
        raw[i] = std::arg(upper * std::conj(lower));
    }
    return unwrap(raw);
}

std::vector<DiagnosticRow> diagnostics(int dim, double omega) {
    const TruncatedOscillator osc = build_oscillator(dim, omega);
    const PhaseOperator phase = sg_phase(dim);
    const CommutatorReport rep = commutator_report(osc, phase);
    const MatrixXcd eye = MatrixXcd::Identity(dim, dim);

    MatrixXcd ladder = osc.a * osc.a_dagger - osc.a_dagger * osc.a - eye;
    MatrixXcd ground = phase.E_dagger * phase.E - eye;
    ground(0, 0) += 1.0;  // + |0><0|
    MatrixXcd top = phase.E * phase.E_dagger - eye;
    top(dim - 1, dim - 1) += 1.0;  // + |D-1><D-1|

    std::vector<DiagnosticRow> rows;
    rows.push_back({"ladder_interior", interior_norm(ladder), dim, "-"});
    rows.push_back({"ladder_full", spectral_norm(ladder), dim, "-"});
    rows.push_back({"lower_interior", rep.lower_interior, dim, "-"});
    rows.push_back({"lower_full", rep.lower_full, dim, "-"});
    rows.push_back({"raise_interior", rep.raise_interior, dim, "-"});
    rows.push_back({"raise_full", rep.raise_full, dim, "-"});
    rows.push_back({"isometry_ground", spectral_norm(ground), dim, "-"});
    rows.push_back({"isometry_top", spectral_norm(top), dim, "-"});
    rows.push_back(
        {"isometry_top_defect",
         spectral_norm(phase.E * phase.E_dagger - eye), dim, "-"});

    const DoubledSpace sp = build_doubled(dim, omega);
    const std::vector<double> t_grid{0.0, 0.5, 1.0, 5.0, 10.0};
    const SuperselectionReport sel = superselection_check(sp, t_grid);
    rows.push_back({"leak_plus_to_minus", sel.max_plus_to_minus, 2 * dim, "+1"});
    rows.push_back({"leak_minus_to_plus", sel.max_minus_to_plus, 2 * dim, "-1"});
    return rows;
}

std::string to_csv(const std::vector<DiagnosticRow>& rows) {
    std::ostringstream out;
    out << "check,norm,dimension,block\n";
    for (const DiagnosticRow& r : rows)
        out << r.check << ',' << format_double(r.norm) << ',' << r.dimension
            << ',' << r.block << '\n';
    return out.str();
}

std::string matrix_csv(const Eigen::MatrixXcd& m) {
    std::ostringstream out;
    out << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const cplx z = m(i, j);
            if (z == cplx(0.0, 0.0)) continue;
            out << i << ',' << j << ',' << format_double(z.real()) << ','
                << format_double(z.imag()) << '\n';
        }
    return out.str();
}

}  // namespace hvq::fock
