#include "hvq/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hvq/errors.hpp"
#include "hvq/rng.hpp"

namespace hvq::polarization {

namespace {

constexpr double kPi = std::numbers::pi;

// Map an angle into [-pi/2, pi/2) using pi-periodicity.
double wrap_half(double angle) {
    double w = std::fmod(angle + kPi / 2.0, kPi);
    if (w < 0.0) w += kPi;
    return w - kPi / 2.0;
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

ResponseCurve::ResponseCurve(std::size_t grid_size, std::vector<double> values)
    : values_(std::move(values)) {
    if (grid_size < 2)
        throw InvalidParameter("response curve needs at least 2 grid nodes");
    if (values_.size() != grid_size)
        throw InvalidParameter("value count does not match grid size");
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0))
            throw InvalidParameter("response values must lie in [0, 1]");
    }
}

ResponseCurve ResponseCurve::from_function(std::size_t grid_size,
                                           const std::function<double(double)>& f) {
    if (grid_size < 2)
        throw InvalidParameter("response curve needs at least 2 grid nodes");
    std::vector<double> vals(grid_size);
    const double dl = kPi / static_cast<double>(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double lambda = -kPi / 2.0 + (static_cast<double>(i) + 0.5) * dl;
        vals[i] = f(lambda);
    }
    return ResponseCurve(grid_size, std::move(vals));
}

ResponseCurve ResponseCurve::constant(std::size_t grid_size, double value) {
    return from_function(grid_size, [value](double) { return value; });
}

ResponseCurve ResponseCurve::cos_squared(std::size_t grid_size) {
    return from_function(grid_size, [](double lambda) {
        const double c = std::cos(lambda);
        return c * c;
    });
}

double ResponseCurve::spacing() const {
    return kPi / static_cast<double>(values_.size());
}

double ResponseCurve::node(std::size_t i) const {
    return -kPi / 2.0 + (static_cast<double>(i) + 0.5) * spacing();
}

double ResponseCurve::value_at(double lambda) const {
    const double w = wrap_half(lambda);
    const double dl = spacing();
    auto idx = static_cast<long>(std::floor((w + kPi / 2.0) / dl));
    idx = std::clamp<long>(idx, 0, static_cast<long>(values_.size()) - 1);
    return values_[static_cast<std::size_t>(idx)];
}

double CoincidenceCurve::angle(std::size_t j) const {
    const double dl = kPi / static_cast<double>(grid_size);
    return wrap_half(static_cast<double>(j) * dl);
}

MalusTarget::MalusTarget(double eps) : epsilon(eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw InvalidParameter("malus epsilon must lie in [0, 1]");
}

double MalusTarget::operator()(double alpha) const {
    const double c = std::cos(alpha);
    return (1.0 - epsilon) * c * c + epsilon;
}

CoincidenceCurve autocorrelate(const ResponseCurve& p1, bool normalize) {
    const std::size_t n = p1.grid_size();
    const std::vector<double>& v = p1.values();
    CoincidenceCurve out;
    out.grid_size = n;
    out.raw.assign(n, 0.0);
    const double weight = p1.spacing() / kPi;  // = 1/n
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = (i + n - j) % n;
            acc += v[i] * v[k];
        }
        out.raw[j] = weight * acc;
    }
    if (normalize) {
        if (out.raw[0] <= 0.0)
            throw ZeroAtOrigin("coincidence curve vanishes at zero lag");
        std::vector<double> norm(n);
        for (std::size_t j = 0; j < n; ++j) norm[j] = out.raw[j] / out.raw[0];
        out.normalized = std::move(norm);
    }
    return out;
}

double malus(double alpha, const MalusTarget& target) { return target(alpha); }

BelifanteReport belifante_mismatch(std::size_t grid_size) {
    return belifante_mismatch(grid_size, MalusTarget(0.0));
}

BelifanteReport belifante_mismatch(std::size_t grid_size, const MalusTarget& target) {
    const auto curve = autocorrelate(ResponseCurve::cos_squared(grid_size), true);
    BelifanteReport report;
    for (std::size_t j = 0; j < curve.grid_size; ++j) {
        const double alpha = curve.angle(j);
        const double dev = std::abs((*curve.normalized)[j] - target(alpha));
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.at_angle = alpha;
        }
    }
    return report;
}

FeasibilityReport fourier_feasibility(const MalusTarget& target) {
    FeasibilityReport rep;
    // M(a) = (1+eps)/2 + (1-eps)/2 * cos(2a)
    rep.c0 = 0.5 * (1.0 + target.epsilon);
    rep.c1 = 0.5 * (1.0 - target.epsilon);
    rep.ratio = rep.c1 / rep.c0;
    // Exact reproduction needs an autocorrelation with no harmonics beyond
    // cos(2a), which forces p1 = b0 + 2 b1 cos(2 lambda); p1 >= 0 then gives
    // 2 b1 <= b0, so the coefficient ratio 2 b1^2 / b0^2 cannot exceed 1/2
    // (equality: p1 = cos^2). The slack absorbs the boundary mixture not
    // being representable as a double.
    rep.feasible_exact = rep.ratio <= 0.5 + 1e-12;
    rep.min_epsilon_exact = 1.0 / 3.0;
    return rep;
}

namespace {

struct Objective {
    const std::vector<double>& target;  // M(alpha_j) on the lag grid

    // 0.5 * sum_j (A_norm(j) - target_j)^2 and its gradient w.r.t. curve
    // values. Gradient accounts for the A(0) normalization.
    double eval(const std::vector<double>& v, std::vector<double>* grad) const {
        const std::size_t n = v.size();
        const double weight = 1.0 / static_cast<double>(n);
        std::vector<double> raw(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[(i + n - j) % n];
            raw[j] = weight * acc;
        }
        const double a0 = raw[0];
        if (a0 <= 0.0) return 1e30;  // barrier; projection keeps v >= 0
        std::vector<double> resid(n);
        double f = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            resid[j] = raw[j] / a0 - target[j];
            f += 0.5 * resid[j] * resid[j];
        }
        if (grad) {
            grad->assign(n, 0.0);
            // d raw[j] / d v[m] = weight * (v[(m-j) mod n] + v[(m+j) mod n])
            // d (raw[j]/a0) / d v[m]
            //   = (d raw[j] - (raw[j]/a0) d raw[0]) / a0
            double resid_dot_norm = 0.0;
            for (std::size_t j = 0; j < n; ++j) resid_dot_norm += resid[j] * raw[j] / a0;
            for (std::size_t m = 0; m < n; ++m) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double draw =
                        weight * (v[(m + n - j) % n] + v[(m + j) % n]);
                    acc += resid[j] * draw;
                }
                const double draw0 = weight * 2.0 * v[m];
                (*grad)[m] = (acc - resid_dot_norm * draw0) / a0;
            }
        }
        return f;
    }
};

}  // namespace

FitReport fit_response(const MalusTarget& target, std::size_t grid_size,
                       std::size_t max_iter, double tol, std::uint64_t seed) {
    if (grid_size < 4) throw InvalidParameter("fit grid too small");
    ResponseCurve start = ResponseCurve::cos_squared(grid_size);
    std::vector<double> v = start.values();
    if (seed != 0) {
        RngStream rng(seed);
        for (double& x : v) {
            x = std::clamp(x + 0.25 * (rng.uniform01() - 0.5), 0.0, 1.0);
        }
    }

    std::vector<double> malus_grid(grid_size);
    CoincidenceCurve lag_probe;
    lag_probe.grid_size = grid_size;
    for (std::size_t j = 0; j < grid_size; ++j)
        malus_grid[j] = target(lag_probe.angle(j));

    Objective obj{malus_grid};
    std::vector<double> grad, trial;
    double f = obj.eval(v, &grad);
    double step = 1.0;
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        double gnorm2 = 0.0;
        for (double g : grad) gnorm2 += g * g;
        if (std::sqrt(gnorm2) < tol) break;
        // Armijo backtracking on the projected step.
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            trial = v;
            for (std::size_t m = 0; m < trial.size(); ++m)
                trial[m] = std::clamp(trial[m] - step * grad[m], 0.0, 1.0);
            double decrease = 0.0;
            for (std::size_t m = 0; m < trial.size(); ++m) {
                const double d = trial[m] - v[m];
                decrease += grad[m] * d;
            }
            const double ftrial = obj.eval(trial, nullptr);
            if (ftrial <= f + 1e-4 * decrease) {
                v.swap(trial);
                f = obj.eval(v, &grad);
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // no productive step at any scale
    }

    ResponseCurve fitted(grid_size, v);
    const auto curve = autocorrelate(fitted, true);
    double sup = 0.0, l2 = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double r = (*curve.normalized)[j] - malus_grid[j];
        sup = std::max(sup, std::abs(r));
        l2 += r * r;
    }
    FitReport rep{std::move(fitted), sup, std::sqrt(l2), it, 1.0 / 3.0};
    return rep;
}

FitReport fit_response_multi(const MalusTarget& target, std::size_t grid_size,
                             std::size_t max_iter, double tol,
                             std::size_t restarts, std::uint64_t seed) {
    if (restarts == 0) throw InvalidParameter("need at least one restart");
    std::optional<FitReport> best;
    for (std::size_t r = 0; r < restarts; ++r) {
        FitReport rep = fit_response(target, grid_size, max_iter, tol,
                                     r == 0 ? seed : seed + r);
        if (!best || rep.sup_residual < best->sup_residual) best = std::move(rep);
    }
    return *std::move(best);
}

std::string FitReport::summary() const {
    std::ostringstream out;
    out << "sup_residual=" << format_double(sup_residual)
        << " l2_residual=" << format_double(l2_residual)
        << " iterations=" << iterations
        << " feasibility_bound=" << format_double(feasibility_bound);
    return out.str();
}

std::string to_csv(const ResponseCurve& curve) {
    std::ostringstream out;
    out << "lambda_or_alpha,value\n";
    for (std::size_t i = 0; i < curve.grid_size(); ++i)
        out << format_double(curve.node(i)) << ',' << format_double(curve.values()[i])
            << '\n';
    return out.str();
}

std::string to_csv(const CoincidenceCurve& curve, bool normalized) {
    if (normalized && !curve.normalized)
        throw ZeroAtOrigin("normalized coincidence curve unavailable");
    const std::vector<double>& vals = normalized ? *curve.normalized : curve.raw;
    std::ostringstream out;
    out << "lambda_or_alpha,value\n";
    for (std::size_t j = 0; j < curve.grid_size; ++j)
        out << format_double(curve.angle(j)) << ',' << format_double(vals[j]) << '\n';
    return out.str();
}

std::string to_csv(const FitReport& report) { return to_csv(report.fitted); }

}  // namespace hvq::polarization
