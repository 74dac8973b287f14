#include "hvq/epr.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "hvq/errors.hpp"

namespace hvq::epr {

namespace {

constexpr double kPi = std::numbers::pi;
// Trials are processed in fixed-size batches, one RNG substream per batch,
// with integer count merging, so a parallel schedule would reproduce the
// sequential result bit for bit.
constexpr std::size_t kBatchSize = std::size_t{1} << 16;

double binomial_error(double p, std::size_t n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

// Integer accumulators for one setting pair. u = x1+x2-x3-x4 and
// v = x1+x2+x3+x4 feed the ratio estimator of the correlator.
struct PairAccum {
    std::int64_t coincidences = 0;
    std::int64_t sum_u = 0;
    std::int64_t sum_u2 = 0;
    std::int64_t sum_v = 0;
    std::int64_t sum_v2 = 0;
    std::int64_t sum_uv = 0;

    void add(bool x1, bool x2, bool x3, bool x4) {
        coincidences += x1;
        const std::int64_t u =
            std::int64_t(x1) + std::int64_t(x2) - std::int64_t(x3) - std::int64_t(x4);
        const std::int64_t v =
            std::int64_t(x1) + std::int64_t(x2) + std::int64_t(x3) + std::int64_t(x4);
        sum_u += u;
        sum_u2 += u * u;
        sum_v += v;
        sum_v2 += v * v;
        sum_uv += u * v;
    }

    PairStats finish(std::size_t n) const {
        PairStats st;
        st.trials = n;
        st.coincidences = static_cast<std::size_t>(coincidences);
        const double dn = static_cast<double>(n);
        st.probability = static_cast<double>(coincidences) / dn;
        st.std_error = binomial_error(st.probability, n);
        const double mu = static_cast<double>(sum_u) / dn;
        const double mv = static_cast<double>(sum_v) / dn;
        if (mv > 0.0) {
            const double e = mu / mv;
            const double var_u = static_cast<double>(sum_u2) / dn - mu * mu;
            const double var_v = static_cast<double>(sum_v2) / dn - mv * mv;
            const double cov = static_cast<double>(sum_uv) / dn - mu * mv;
            const double resid = std::max(var_u - 2.0 * e * cov + e * e * var_v, 0.0);
            st.correlator = e;
            st.correlator_error = std::sqrt(resid / dn) / mv;
        } else {
            st.correlator = std::numeric_limits<double>::quiet_NaN();
            st.correlator_error = std::numeric_limits<double>::quiet_NaN();
        }
        return st;
    }
};

void assemble_combinations(CoincidenceStats& stats) {
    const auto& p = stats.pairs;
    stats.bell_prob_combination = p[0][0].probability + p[1][0].probability +
                                  p[0][1].probability - p[1][1].probability;
    stats.chsh_correlator = p[0][0].correlator + p[1][0].correlator +
                            p[0][1].correlator - p[1][1].correlator;
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            acc += p[i][j].correlator_error * p[i][j].correlator_error;
    stats.chsh_error = std::sqrt(acc);
}

}  // namespace

HiddenState sample_pair(RngStream& rng) {
    HiddenState st;
    st.lambda = -kPi / 2.0 + kPi * rng.uniform01();
    st.f_left = rng.uniform01();
    st.f_right = rng.uniform01();
    return st;
}

bool transmit(const DetectionModel& model, const HiddenState& state,
              double theta, Side side, RngStream& rng) {
    const double p = model.response.value_at(state.lambda - theta);
    double f;
    if (model.mode == DetectionMode::f_independent)
        f = rng.uniform01();
    else
        f = side == Side::left ? state.f_left : state.f_right;
    return f < p;
}

CoincidenceStats run_experiment(const DetectionModel& model,
                                const AngleSettings& settings,
                                std::size_t n_pairs, std::uint64_t seed,
                                Sampling sampling) {
    if (n_pairs == 0) throw InvalidParameter("need at least one photon pair");

    const double left_angles[4] = {settings.alpha1, settings.alpha2,
                                   settings.alpha1 + kPi / 2.0,
                                   settings.alpha2 + kPi / 2.0};
    const double right_angles[4] = {settings.beta1, settings.beta2,
                                    settings.beta1 + kPi / 2.0,
                                    settings.beta2 + kPi / 2.0};

    PairAccum accum[2][2];
    std::int64_t sum_s = 0, sum_s2 = 0;  // per-sample Bell combination

    std::size_t done = 0;
    for (std::size_t batch = 0; done < n_pairs; ++batch) {
        RngStream rng = RngStream::substream(seed, batch);
        const std::size_t count = std::min(kBatchSize, n_pairs - done);
        for (std::size_t t = 0; t < count; ++t) {
            if (sampling == Sampling::counterfactual) {
                const HiddenState state = sample_pair(rng);
                bool left[4], right[4];
                for (int k = 0; k < 4; ++k) {
                    left[k] = transmit(model, state, left_angles[k], Side::left, rng);
                    right[k] =
                        transmit(model, state, right_angles[k], Side::right, rng);
                }
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        accum[i][j].add(left[i] && right[j],
                                        left[i + 2] && right[j + 2],
                                        left[i + 2] && right[j],
                                        left[i] && right[j + 2]);
                const std::int64_t s =
                    std::int64_t(left[0] && right[0]) + std::int64_t(left[1] && right[0]) +
                    std::int64_t(left[0] && right[1]) - std::int64_t(left[1] && right[1]);
                assert(s >= -1 && s <= 2);
                sum_s += s;
                sum_s2 += s * s;
            } else {
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const HiddenState state = sample_pair(rng);
                        const bool a =
                            transmit(model, state, left_angles[i], Side::left, rng);
                        const bool ap =
                            transmit(model, state, left_angles[i + 2], Side::left, rng);
                        const bool b =
                            transmit(model, state, right_angles[j], Side::right, rng);
                        const bool bp = transmit(model, state, right_angles[j + 2],
                                                 Side::right, rng);
                        accum[i][j].add(a && b, ap && bp, ap && b, a && bp);
                    }
            }
        }
        done += count;
    }

    CoincidenceStats stats;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) stats.pairs[i][j] = accum[i][j].finish(n_pairs);
    assemble_combinations(stats);

    const double dn = static_cast<double>(n_pairs);
    if (sampling == Sampling::counterfactual) {
        const double ms = static_cast<double>(sum_s) / dn;
        const double var_s = static_cast<double>(sum_s2) / dn - ms * ms;
        stats.bell_prob_error = std::sqrt(std::max(var_s, 0.0) / dn);
    } else {
        double acc = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                acc += stats.pairs[i][j].std_error * stats.pairs[i][j].std_error;
        stats.bell_prob_error = std::sqrt(acc);
    }
    return stats;
}

double qm_coincidence(double alpha, double beta) {
    const double c = std::cos(alpha - beta);
    return 0.5 * c * c;
}

double qm_correlator(double alpha, double beta) {
    return std::cos(2.0 * (alpha - beta));
}

double qm_chsh_value(const AngleSettings& s) {
    return qm_correlator(s.alpha1, s.beta1) + qm_correlator(s.alpha2, s.beta1) +
           qm_correlator(s.alpha1, s.beta2) - qm_correlator(s.alpha2, s.beta2);
}

CoincidenceStats run_qm_experiment(const AngleSettings& settings,
                                   std::size_t n_pairs, std::uint64_t seed) {
    if (n_pairs == 0) throw InvalidParameter("need at least one photon pair");
    const double alphas[2] = {settings.alpha1, settings.alpha2};
    const double betas[2] = {settings.beta1, settings.beta2};

    CoincidenceStats stats;
    const double dn = static_cast<double>(n_pairs);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            RngStream rng = RngStream::substream(seed, 4 * i + j);
            // Joint outcome probabilities of the reference model: both-pass
            // and both-absorb each cos^2(d)/2, the mixed outcomes sin^2(d)/2.
            const double c = qm_coincidence(alphas[i], betas[j]);
            std::int64_t n_pp = 0, n_same = 0;
            for (std::size_t t = 0; t < n_pairs; ++t) {
                const double u = rng.uniform01();
                if (u < c) {
                    ++n_pp;
                    ++n_same;
                } else if (u < 2.0 * c) {
                    ++n_same;  // both absorbed
                }
            }
            PairStats st;
            st.trials = n_pairs;
            st.coincidences = static_cast<std::size_t>(n_pp);
            st.probability = static_cast<double>(n_pp) / dn;
            st.std_error = binomial_error(st.probability, n_pairs);
            st.correlator = 2.0 * static_cast<double>(n_same) / dn - 1.0;
            st.correlator_error =
                std::sqrt(std::max(1.0 - st.correlator * st.correlator, 0.0) / dn);
            stats.pairs[i][j] = st;
        }
    assemble_combinations(stats);
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            acc += stats.pairs[i][j].std_error * stats.pairs[i][j].std_error;
    stats.bell_prob_error = std::sqrt(acc);
    return stats;
}

ScanResult chsh_scan(const std::vector<double>& alpha1s,
                     const std::vector<double>& alpha2s,
                     const std::vector<double>& beta1s,
                     const std::vector<double>& beta2s) {
    if (alpha1s.empty() || alpha2s.empty() || beta1s.empty() || beta2s.empty())
        throw InvalidParameter("scan grids must be nonempty");

    auto table = [](const std::vector<double>& as, const std::vector<double>& bs) {
        std::vector<double> t(as.size() * bs.size());
        for (std::size_t i = 0; i < as.size(); ++i)
            for (std::size_t k = 0; k < bs.size(); ++k)
                t[i * bs.size() + k] = qm_correlator(as[i], bs[k]);
        return t;
    };
    const auto e11 = table(alpha1s, beta1s);
    const auto e21 = table(alpha2s, beta1s);
    const auto e12 = table(alpha1s, beta2s);
    const auto e22 = table(alpha2s, beta2s);

    ScanResult best;
    best.max_value = -std::numeric_limits<double>::infinity();
    const std::size_t nb1 = beta1s.size(), nb2 = beta2s.size();
    for (std::size_t i = 0; i < alpha1s.size(); ++i)
        for (std::size_t j = 0; j < alpha2s.size(); ++j)
            for (std::size_t k = 0; k < nb1; ++k) {
                const double partial = e11[i * nb1 + k] + e21[j * nb1 + k];
                for (std::size_t l = 0; l < nb2; ++l) {
                    const double s = partial + e12[i * nb2 + l] - e22[j * nb2 + l];
                    if (s > best.max_value) {
                        best.max_value = s;
                        best.argmax = {alpha1s[i], alpha2s[j], beta1s[k], beta2s[l]};
                    }
                }
            }
    return best;
}

InterchangeGap interchange_gap(const DetectionModel& model,
                               const AngleSettings& settings,
                               std::size_t n_pairs, std::uint64_t seed) {
    if (n_pairs == 0) throw InvalidParameter("need at least one photon pair");

    std::int64_t sum_t1 = 0, sum_t2 = 0, sum_d = 0, sum_d2 = 0;
    std::size_t done = 0;
    for (std::size_t batch = 0; done < n_pairs; ++batch) {
        RngStream rng = RngStream::substream(seed, batch);
        const std::size_t count = std::min(kBatchSize, n_pairs - done);
        for (std::size_t t = 0; t < count; ++t) {
            const HiddenState state = sample_pair(rng);
            bool t1, t2;
            if (model.mode == DetectionMode::f_dependent) {
                const double pa = model.response.value_at(state.lambda - settings.alpha1);
                const double pap = model.response.value_at(state.lambda - settings.alpha2);
                const double pb = model.response.value_at(state.lambda - settings.beta1);
                const double pbp = model.response.value_at(state.lambda - settings.beta2);
                t1 = state.f_left < pa && state.f_left < pap && state.f_right < pb &&
                     state.f_right < pbp;
                const double f_left2 = rng.uniform01();
                const double f_right2 = rng.uniform01();
                t2 = state.f_left < pa && f_left2 < pap && state.f_right < pb &&
                     f_right2 < pbp;
            } else {
                // Every factor draws its own variate, so both product terms
                // have identical distributions and the gap vanishes.
                auto term = [&]() {
                    const bool a =
                        transmit(model, state, settings.alpha1, Side::left, rng);
                    const bool ap =
                        transmit(model, state, settings.alpha2, Side::left, rng);
                    const bool b =
                        transmit(model, state, settings.beta1, Side::right, rng);
                    const bool bp =
                        transmit(model, state, settings.beta2, Side::right, rng);
                    return a && ap && b && bp;
                };
                t1 = term();
                t2 = term();
            }
            const std::int64_t d = std::int64_t(t1) - std::int64_t(t2);
            sum_t1 += t1;
            sum_t2 += t2;
            sum_d += d;
            sum_d2 += d * d;
        }
        done += count;
    }

    InterchangeGap out;
    out.trials = n_pairs;
    const double dn = static_cast<double>(n_pairs);
    out.joint = static_cast<double>(sum_t1) / dn;
    out.refreshed = static_cast<double>(sum_t2) / dn;
    out.gap = static_cast<double>(sum_d) / dn;
    if (n_pairs >= 2) {
        const double var =
            (static_cast<double>(sum_d2) - dn * out.gap * out.gap) / (dn - 1.0);
        out.std_error = std::sqrt(std::max(var, 0.0) / dn);
    } else {
        out.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

QuadratureGap interchange_gap_quadrature(const polarization::ResponseCurve& p1,
                                         const AngleSettings& settings) {
    const std::size_t n = p1.grid_size();
    const double dl = p1.spacing();
    const double angles[4] = {settings.alpha1, settings.alpha2, settings.beta1,
                              settings.beta2};

    // The integrands are constant between consecutive shifted cell edges.
    std::vector<double> cuts;
    cuts.reserve(4 * n + 2);
    for (double theta : angles) {
        for (std::size_t i = 0; i < n; ++i) {
            double edge = -kPi / 2.0 + static_cast<double>(i) * dl + theta;
            edge = std::fmod(edge + kPi / 2.0, kPi);
            if (edge < 0.0) edge += kPi;
            cuts.push_back(edge - kPi / 2.0);
        }
    }
    cuts.push_back(-kPi / 2.0);
    cuts.push_back(kPi / 2.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-13; }),
               cuts.end());

    QuadratureGap out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        const double mid = 0.5 * (lo + hi);
        const double pa = p1.value_at(mid - settings.alpha1);
        const double pap = p1.value_at(mid - settings.alpha2);
        const double pb = p1.value_at(mid - settings.beta1);
        const double pbp = p1.value_at(mid - settings.beta2);
        const double w = (hi - lo) / kPi;
        out.joint += w * std::min(pa, pap) * std::min(pb, pbp);
        out.refreshed += w * pa * pap * pb * pbp;
    }
    out.gap = out.joint - out.refreshed;
    return out;
}

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::Vector3d;
using Eigen::Vector4cd;
using cplx = std::complex<double>;

Matrix2cd pauli(int k) {
    Matrix2cd m;
    switch (k) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix2cd bloch(const Vector3d& a) {
    return a.x() * pauli(0) + a.y() * pauli(1) + a.z() * pauli(2);
}

Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Vector3d random_unit(RngStream& rng) {
    Vector3d v;
    do {
        v = Vector3d(rng.normal(), rng.normal(), rng.normal());
    } while (v.norm() < 1e-8);
    return v.normalized();
}

Vector3d normalized_or(const Vector3d& v, const Vector3d& fallback) {
    const double n = v.norm();
    return n < 1e-14 ? fallback : Vector3d(v / n);
}

double enumerate_sign_bound() {
    int best = -8;
    for (int a1 = -1; a1 <= 1; a1 += 2)
        for (int a2 = -1; a2 <= 1; a2 += 2)
            for (int b1 = -1; b1 <= 1; b1 += 2)
                for (int b2 = -1; b2 <= 1; b2 += 2)
                    best = std::max(best, a1 * b1 + a2 * b1 + a1 * b2 - a2 * b2);
    return static_cast<double>(best);
}

struct TensorSolution {
    double value = 0.0;
    Vector3d a1, a2, b1, b2;
};

// Alternating maximization of the top eigenvalue over the four Bloch
// vectors: state update by eigensolver, vector updates from the two-qubit
// correlation matrix M_kl = <sigma_k x sigma_l>.
TensorSolution tensor_ascent(Vector3d a1, Vector3d a2, Vector3d b1, Vector3d b2) {
    TensorSolution sol;
    double value = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 300; ++iter) {
        const Matrix4cd op = kron2(bloch(a1), bloch(b1)) + kron2(bloch(a2), bloch(b1)) +
                             kron2(bloch(a1), bloch(b2)) - kron2(bloch(a2), bloch(b2));
        Eigen::SelfAdjointEigenSolver<Matrix4cd> es(op);
        const double lam = es.eigenvalues()(3);
        const Vector4cd psi = es.eigenvectors().col(3);
        if (lam <= value + 1e-13) {
            value = std::max(value, lam);
            break;
        }
        value = lam;
        Eigen::Matrix3d m;
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                m(k, l) = (psi.adjoint() * kron2(pauli(k), pauli(l)) * psi)(0).real();
        b1 = normalized_or(m.transpose() * (a1 + a2), b1);
        b2 = normalized_or(m.transpose() * (a1 - a2), b2);
        a1 = normalized_or(m * (b1 + b2), a1);
        a2 = normalized_or(m * (b1 - b2), a2);
    }
    sol.value = value;
    sol.a1 = a1;
    sol.a2 = a2;
    sol.b1 = b1;
    sol.b2 = b2;
    return sol;
}

double tensor_bound(std::size_t restarts, std::uint64_t seed) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Vector3d a1, a2, b1, b2;
        if (r == 0) {
            // Known maximizer, kept as a deterministic warm start.
            a1 = Vector3d(1, 0, 0);
            a2 = Vector3d(0, 0, 1);
            b1 = inv_sqrt2 * Vector3d(1, 0, 1);
            b2 = inv_sqrt2 * Vector3d(1, 0, -1);
        } else {
            RngStream rng = RngStream::substream(seed, r);
            a1 = random_unit(rng);
            a2 = random_unit(rng);
            b1 = random_unit(rng);
            b2 = random_unit(rng);
        }
        best = std::max(best, tensor_ascent(a1, a2, b1, b2).value);
    }
    return best;
}

MatrixXcd hermitian_part(const MatrixXcd& x) { return 0.5 * (x + x.adjoint()); }

// Spectral sign: the extreme Hermitian contraction maximizing tr(A H).
MatrixXcd sign_of(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    MatrixXcd out = MatrixXcd::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        const double s = vals(i) >= 0.0 ? 1.0 : -1.0;
        out += s * vecs.col(i) * vecs.col(i).adjoint();
    }
    return out;
}

MatrixXcd random_involution(RngStream& rng, int dim) {
    MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    return sign_of(hermitian_part(g));
}

struct AbsTop {
    double sigma;  // largest |eigenvalue|
    double sign;   // sign of that eigenvalue
    Eigen::VectorXcd vec;
};

AbsTop abs_top(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const Eigen::Index n = es.eigenvalues().size();
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(n - 1);
    if (-lo > hi) return {-lo, -1.0, es.eigenvectors().col(0)};
    return {hi, 1.0, es.eigenvectors().col(n - 1)};
}

// Projection onto Hermitian contractions: clamp the spectrum to [-1, 1].
MatrixXcd clip_spectrum(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    MatrixXcd out = MatrixXcd::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = std::clamp(es.eigenvalues()(i), -1.0, 1.0);
        out += v * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    return out;
}

double norm_estimate(double sigma_c, double sigma_d) {
    return std::sqrt(4.0 + 2.0 * sigma_c * sigma_d);
}

// Projected subgradient ascent on ||B1+B2|| * ||B1-B2|| over Hermitian
// contractions.  Both factors are capped at 2, so the estimate never exceeds
// 2*sqrt(3); it attains the cap when some eigenvector sits at the extreme of
// both observables and another at opposite extremes.
double noncommuting_ascent(MatrixXcd b1, MatrixXcd b2) {
    const double cap = 2.0 * std::sqrt(3.0);
    double best = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        const AbsTop c = abs_top(b1 + b2);
        const AbsTop d = abs_top(b1 - b2);
        best = std::max(best, norm_estimate(c.sigma, d.sigma));
        if (best >= cap - 1e-12) break;
        const MatrixXcd gc = c.sign * (c.vec * c.vec.adjoint());
        const MatrixXcd gd = d.sign * (d.vec * d.vec.adjoint());
        const double step = 0.25;
        b1 = clip_spectrum(b1 + step * (d.sigma * gc + c.sigma * gd));
        b2 = clip_spectrum(b2 + step * (d.sigma * gc - c.sigma * gd));
    }
    return best;
}

double noncommuting_bound(int dim, std::size_t restarts, std::uint64_t seed) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        RngStream rng = RngStream::substream(seed, r);
        MatrixXcd b1, b2;
        if (r == 0) {
            // Exact maximizer: B1 at +1 everywhere, B2 split evenly, so both
            // setting sums have norm 2 and the estimate starts at the cap.
            b1 = MatrixXcd::Identity(dim, dim);
            b2 = MatrixXcd::Identity(dim, dim);
            for (int i = dim / 2; i < dim; ++i) b2(i, i) = -1.0;
        } else {
            b1 = random_involution(rng, dim);
            b2 = random_involution(rng, dim);
        }
        best = std::max(best, noncommuting_ascent(b1, b2));
    }
    return best;
}

}  // namespace

double bell_operator_bound(BoundMode mode, int dim, std::size_t restarts,
                           std::uint64_t seed) {
    switch (mode) {
        case BoundMode::deterministic:
            return enumerate_sign_bound();
        case BoundMode::tensor_commuting:
            if (dim != 4)
                throw InvalidParameter("tensor mode needs total dimension 4 (2x2)");
            if (restarts == 0) throw InvalidParameter("need at least one restart");
            return tensor_bound(restarts, seed);
        case BoundMode::noncommuting:
            if (dim != 2 && dim != 4)
                throw InvalidParameter("noncommuting mode supports dim 2 or 4");
            if (restarts == 0) throw InvalidParameter("need at least one restart");
            return noncommuting_bound(dim, restarts, seed);
    }
    throw InvalidParameter("unknown bound mode");
}

std::string to_csv(const CoincidenceStats& stats) {
    std::ostringstream out;
    out << "setting_i,setting_j,trials,coincidences,probability,stderr\n";
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const PairStats& p = stats.pairs[i][j];
            out << (i + 1) << ',' << (j + 1) << ',' << p.trials << ','
                << p.coincidences << ',' << format_double(p.probability) << ','
                << format_double(p.std_error) << '\n';
        }
    return out.str();
}

}  // namespace hvq::epr
