#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hvq/errors.hpp"
#include "hvq/polarization.hpp"
#include "hvq/rng.hpp"

using namespace hvq::polarization;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("cos^2 autocorrelation matches its closed form") {
    // Uniform sampling integrates trig polynomials of degree < N exactly, so
    // the discrete sum should hit 1/4 + cos(2a)/8 at machine precision.
    const auto curve = autocorrelate(ResponseCurve::cos_squared(360), true);
    REQUIRE(curve.normalized.has_value());
    CHECK(std::abs(curve.raw[0] - 3.0 / 8.0) <= 1e-15);
    for (std::size_t j = 0; j < curve.grid_size; ++j) {
        const double a = curve.angle(j);
        CHECK(std::abs(curve.raw[j] - (0.25 + std::cos(2.0 * a) / 8.0)) <= 1e-14);
        const double c = std::cos(a);
        CHECK(std::abs((*curve.normalized)[j] - (1.0 / 3.0 + 2.0 / 3.0 * c * c)) <=
              1e-13);
    }
}

TEST_CASE("normalization requires signal at zero lag") {
    CHECK_THROWS_AS(autocorrelate(ResponseCurve::constant(16, 0.0), true),
                    hvq::ZeroAtOrigin);
    CHECK_NOTHROW(autocorrelate(ResponseCurve::constant(16, 0.0), false));
}

TEST_CASE("response values outside [0,1] are rejected") {
    CHECK_THROWS_AS(ResponseCurve::constant(8, 1.5), hvq::InvalidParameter);
    CHECK_THROWS_AS(ResponseCurve::constant(8, -0.1), hvq::InvalidParameter);
    CHECK_THROWS_AS(ResponseCurve(4, {0.1, 0.2}), hvq::InvalidParameter);
}

TEST_CASE("autocorrelation of random curves is even, peaked at zero") {
    hvq::RngStream rng(2026);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 16 + 8 * static_cast<std::size_t>(rep % 5);
        std::vector<double> vals(n);
        for (double& v : vals) v = rng.uniform01();
        const auto curve = autocorrelate(ResponseCurve(n, vals), true);
        const auto& nc = *curve.normalized;
        CHECK(nc[0] == 1.0);
        for (std::size_t j = 1; j < n; ++j) {
            CHECK(std::abs(nc[j] - nc[n - j]) <= 1e-12);
            CHECK(nc[j] <= 1.0 + 1e-12);
            CHECK(curve.raw[j] >= -1e-15);
        }
    }
}

TEST_CASE("band-limited responses reproduce mixtures no purer than 1/3") {
    // p1 = b0 + 2 b1 cos(2 lambda) with p1 in [0,1] is the only family whose
    // autocorrelation has no harmonics beyond cos(2a). Its normalized curve
    // is an exact mixture target with epsilon = (1-r)/(1+r), r = 2 b1^2/b0^2,
    // and r <= 1/2 pins epsilon >= 1/3.
    hvq::RngStream rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const double b0 = 0.2 + 0.6 * rng.uniform01();
        const double two_b1 = rng.uniform01() * std::min(b0, 1.0 - b0);
        const auto p1 = ResponseCurve::from_function(48, [&](double lam) {
            return b0 + two_b1 * std::cos(2.0 * lam);
        });
        const auto curve = autocorrelate(p1, true);
        const double r = 0.5 * two_b1 * two_b1 / (b0 * b0);
        const double eps = (1.0 - r) / (1.0 + r);
        CHECK(eps >= 1.0 / 3.0 - 1e-12);
        const MalusTarget target(eps);
        for (std::size_t j = 0; j < curve.grid_size; ++j)
            CHECK(std::abs((*curve.normalized)[j] - target(curve.angle(j))) <= 1e-12);
    }
    // cos^2 attains the ratio bound: its cos(2a) content is exactly 1/4 of
    // the mean when both are summed over the lag grid.
    const auto sharp = autocorrelate(ResponseCurve::cos_squared(24), true);
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t j = 0; j < 24; ++j) {
        c0 += (*sharp.normalized)[j];
        c1 += (*sharp.normalized)[j] * std::cos(2.0 * sharp.angle(j));
    }
    CHECK(c1 == doctest::Approx(0.25 * c0).epsilon(1e-12));
}

TEST_CASE("nearest-node lookup wraps with period pi") {
    const auto p = ResponseCurve::cos_squared(36);
    const double dl = p.spacing();
    for (std::size_t i = 0; i < 36; ++i) {
        CHECK(p.value_at(p.node(i) + 0.4 * dl) == p.values()[i]);
        CHECK(p.value_at(p.node(i) - 0.4 * dl) == p.values()[i]);
        CHECK(p.value_at(p.node(i) + kPi) == p.values()[i]);
        CHECK(p.value_at(p.node(i) - 3.0 * kPi) == p.values()[i]);
    }
}

TEST_CASE("mixture target splits into mean and contrast coefficients") {
    const auto rep = fourier_feasibility(MalusTarget(0.02));
    CHECK(rep.c0 == doctest::Approx(0.51).epsilon(1e-15));
    CHECK(rep.c1 == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(rep.ratio == doctest::Approx(0.98 / 1.02).epsilon(1e-15));
    CHECK(!rep.feasible_exact);
    CHECK(rep.min_epsilon_exact == doctest::Approx(1.0 / 3.0));

    CHECK(fourier_feasibility(MalusTarget(1.0 / 3.0)).feasible_exact);
    CHECK(fourier_feasibility(MalusTarget(0.6)).feasible_exact);
    CHECK(!fourier_feasibility(MalusTarget(0.33)).feasible_exact);
}

TEST_CASE("fit lands on the exact witness at the threshold mixture") {
    const auto rep = fit_response(MalusTarget(1.0 / 3.0), 180, 200, 1e-10);
    CHECK(rep.sup_residual <= 1e-10);
    CHECK(rep.feasibility_bound == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("fit below the threshold leaves an irreducible residual") {
    const auto a = fit_response(MalusTarget(0.02), 90, 400, 1e-10, 0);
    const auto b = fit_response(MalusTarget(0.02), 90, 400, 1e-10, 11);
    CHECK(a.sup_residual > 1e-3);
    CHECK(b.sup_residual > 1e-3);
    // Restarts from different perturbations settle at comparable residuals.
    CHECK(std::abs(a.sup_residual - b.sup_residual) <=
          0.1 * std::max(a.sup_residual, b.sup_residual));
    for (double v : a.fitted.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("multi-restart fit keeps the best residual") {
    const auto best = fit_response_multi(MalusTarget(0.02), 90, 300, 1e-10, 3, 5);
    const auto single = fit_response(MalusTarget(0.02), 90, 300, 1e-10, 5);
    CHECK(best.sup_residual <= single.sup_residual + 1e-15);
    CHECK_THROWS_AS(fit_response_multi(MalusTarget(0.5), 90, 10, 1e-8, 0),
                    hvq::InvalidParameter);
}

TEST_CASE("csv output carries the angle grid") {
    const auto csv = to_csv(ResponseCurve::cos_squared(4));
    CHECK(csv.rfind("lambda_or_alpha,value\n", 0) == 0);
    std::size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 5);  // header + one row per node
}
