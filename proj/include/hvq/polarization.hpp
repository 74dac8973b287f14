#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hvq::polarization {

/// Tabulated single-polarizer transmission probability p1(lambda) on a
/// uniform midpoint grid over [-pi/2, pi/2), treated as pi-periodic.
/// node(i) = -pi/2 + (i + 1/2) * dlambda, dlambda = pi / grid_size.
class ResponseCurve {
  public:
    ResponseCurve(std::size_t grid_size, std::vector<double> values);

    // Sample a function of lambda at the grid nodes (values clamped to [0,1]
    // are NOT applied; out-of-range samples throw).
    static ResponseCurve from_function(std::size_t grid_size,
                                       const std::function<double(double)>& f);
    static ResponseCurve constant(std::size_t grid_size, double value);
    static ResponseCurve cos_squared(std::size_t grid_size);

    std::size_t grid_size() const { return values_.size(); }
    double spacing() const;
    double node(std::size_t i) const;
    const std::vector<double>& values() const { return values_; }

    // Transmission probability at an arbitrary angle: nearest-node lookup
    // with pi-periodic wrap.
    double value_at(double lambda) const;

  private:
    std::vector<double> values_;
};

/// Circular autocorrelation of a response curve. Raw values live on the lag
/// grid alpha_j = j * dlambda mapped into [-pi/2, pi/2); normalized values
/// are raw / raw(0) and are absent when raw(0) = 0.
struct CoincidenceCurve {
    std::size_t grid_size = 0;
    std::vector<double> raw;                        // indexed by lag j
    std::optional<std::vector<double>> normalized;  // same indexing

    // Lag angle of index j, mapped into [-pi/2, pi/2).
    double angle(std::size_t j) const;
};

/// Generalized Malus law M(alpha) = (1 - epsilon) cos^2(alpha) + epsilon.
struct MalusTarget {
    double epsilon = 0.0;
    explicit MalusTarget(double eps);
    double operator()(double alpha) const;
};

struct BelifanteReport {
    double max_deviation = 0.0;
    double at_angle = 0.0;
};

struct FeasibilityReport {
    double c0 = 0.0;     // mean of M: (1 + eps) / 2
    double c1 = 0.0;     // cos(2a) coefficient of M: (1 - eps) / 2
    double ratio = 0.0;  // c1 / c0
    bool feasible_exact = false;
    double min_epsilon_exact = 0.0;
};

struct FitReport {
    ResponseCurve fitted;
    double sup_residual = 0.0;
    double l2_residual = 0.0;
    std::size_t iterations = 0;
    double feasibility_bound = 0.0;  // minimum epsilon admitting an exact fit

    std::string summary() const;
};

/// Discrete autocorrelation A(alpha_j) = (dlambda/pi) * sum_i p1_i p1_{i-j}
/// with periodic index wrap, plus the A(0)-normalized curve.
/// Throws ZeroAtOrigin when normalization is requested and A(0) = 0.
CoincidenceCurve autocorrelate(const ResponseCurve& p1, bool normalize = true);

double malus(double alpha, const MalusTarget& target);

/// Sup deviation of the normalized autocorrelation of p1 = cos^2 from the
/// epsilon = 0 Malus law, and the lag where it is attained.
BelifanteReport belifante_mismatch(std::size_t grid_size);
BelifanteReport belifante_mismatch(std::size_t grid_size, const MalusTarget& target);

/// Cosine coefficients of the Malus target and the exact-reproduction test:
/// an autocorrelation of a nonnegative curve satisfies c1/c0 <= 1/2, so the
/// normalized curve can match M exactly iff (1-eps)/(1+eps) <= 1/2.
FeasibilityReport fourier_feasibility(const MalusTarget& target);

/// Least-squares inversion: minimize sum_j (normalized(j) - M(alpha_j))^2
/// over curve values in [0,1] by projected gradient descent with Armijo
/// backtracking. seed = 0 starts from cos^2 (the known epsilon = 1/3
/// witness); seed > 0 applies a seeded perturbation to that start.
FitReport fit_response(const MalusTarget& target, std::size_t grid_size,
                       std::size_t max_iter, double tol, std::uint64_t seed = 0);

/// Runs `restarts` seeded fits (seed, seed+1, ...) and keeps the report with
/// the smallest sup residual; ties broken by restart order.
FitReport fit_response_multi(const MalusTarget& target, std::size_t grid_size,
                             std::size_t max_iter, double tol,
                             std::size_t restarts, std::uint64_t seed = 0);

// CSV serialization, header "lambda_or_alpha,value".
std::string to_csv(const ResponseCurve& curve);
std::string to_csv(const CoincidenceCurve& curve, bool normalized);
std::string to_csv(const FitReport& report);

}  // namespace hvq::polarization
