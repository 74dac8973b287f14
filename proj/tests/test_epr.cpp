#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "hvq/epr.hpp"
#include "hvq/errors.hpp"
#include "hvq/polarization.hpp"
#include "hvq/rng.hpp"

using namespace hvq::epr;
using hvq::RngStream;
using hvq::polarization::ResponseCurve;

namespace {
constexpr double kPi = std::numbers::pi;

DetectionModel cos2_model(DetectionMode mode) {
    return DetectionModel{ResponseCurve::cos_squared(360), mode};
}

const AngleSettings kStandard{0.0, kPi / 4.0, kPi / 8.0, 3.0 * kPi / 8.0};
const AngleSettings kQmMax{kPi / 4.0, 0.0, kPi / 8.0, 3.0 * kPi / 8.0};
}  // namespace

TEST_CASE("pair source is uniform over angle and impact parameters") {
    RngStream rng(123);
    const std::size_t n = 100000;
    double sum_l = 0.0, sum_l2 = 0.0, sum_fl = 0.0, sum_fr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const HiddenState s = sample_pair(rng);
        CHECK(s.lambda >= -kPi / 2.0);
        CHECK(s.lambda < kPi / 2.0);
        CHECK(s.f_left >= 0.0);
        CHECK(s.f_left < 1.0);
        CHECK(s.f_right >= 0.0);
        CHECK(s.f_right < 1.0);
        sum_l += s.lambda;
        sum_l2 += s.lambda * s.lambda;
        sum_fl += s.f_left;
        sum_fr += s.f_right;
    }
    const double nd = static_cast<double>(n);
    CHECK(std::abs(sum_l / nd) < 0.02);
    CHECK(sum_l2 / nd == doctest::Approx(kPi * kPi / 12.0).epsilon(0.02));
    CHECK(sum_fl / nd == doctest::Approx(0.5).epsilon(0.02));
    CHECK(sum_fr / nd == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("transmission follows the response curve at the extremes") {
    const DetectionModel model = cos2_model(DetectionMode::f_dependent);
    RngStream rng(7);
    // Aligned: p1 within half a cell of 1 beats these f.  Crossed: p1 within
    // half a cell of 0 beats none of them.
    for (double f : {0.001, 0.3, 0.999}) {
        HiddenState s{0.2, f, f};
        CHECK(transmit(model, s, 0.2, Side::left, rng));
        CHECK(!transmit(model, s, 0.2 + kPi / 2.0, Side::right, rng));
    }
    // f on either side of the 45-degree threshold, clear of the grid snap.
    HiddenState low{0.0, 0.49, 0.49};
    HiddenState high{0.0, 0.51, 0.51};
    CHECK(transmit(model, low, kPi / 4.0, Side::left, rng));
    CHECK(!transmit(model, high, kPi / 4.0, Side::left, rng));
}

TEST_CASE("f-independent transmission matches the curve in frequency") {
    const DetectionModel model = cos2_model(DetectionMode::f_independent);
    RngStream rng(99);
    const HiddenState s{0.3, 0.9, 0.9};  // f must be ignored in this mode
    const double theta = 0.3 + kPi / 3.0;
    const double p = std::cos(kPi / 3.0) * std::cos(kPi / 3.0);
    const std::size_t n = 40000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (transmit(model, s, theta, Side::left, rng)) ++hits;
    const double rate = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(rate - p) < 5.0 * se);
}

TEST_CASE("experiment runs are deterministic per seed") {
    const DetectionModel model = cos2_model(DetectionMode::f_dependent);
    const auto a = run_experiment(model, kStandard, 20000, 5, Sampling::counterfactual);
    const auto b = run_experiment(model, kStandard, 20000, 5, Sampling::counterfactual);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(a.pairs[i][j].coincidences == b.pairs[i][j].coincidences);
            CHECK(a.pairs[i][j].probability == b.pairs[i][j].probability);
            CHECK(a.pairs[i][j].correlator == b.pairs[i][j].correlator);
        }
    CHECK(a.bell_prob_combination == b.bell_prob_combination);
    CHECK(a.chsh_correlator == b.chsh_correlator);
}

TEST_CASE("coincidence rates reproduce the product-average law") {
    // With independent impact parameters per side, p(a, b) averages
    // p1(l - a) p1(l - b) over l; for cos^2 that is 1/4 + cos(2(a-b))/8.
    const DetectionModel model = cos2_model(DetectionMode::f_dependent);
    const std::size_t n = 200000;
    const auto stats = run_experiment(model, kStandard, n, 17, Sampling::fresh);
    const double angs[2][2] = {{kStandard.alpha1 - kStandard.beta1,
                                kStandard.alpha1 - kStandard.beta2},
                               {kStandard.alpha2 - kStandard.beta1,
                                kStandard.alpha2 - kStandard.beta2}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double expected = 0.25 + std::cos(2.0 * angs[i][j]) / 8.0;
            const PairStats& p = stats.pairs[i][j];
            CHECK(p.trials == n);
            CHECK(p.std_error > 0.0);
            // 5 sigma plus a small allowance for the 360-node grid.
            CHECK(std::abs(p.probability - expected) <
                  5.0 * p.std_error + 2e-4);
            // E(a, b) = cos(2(a-b))/2 for this model.
            CHECK(std::abs(p.correlator - 0.5 * std::cos(2.0 * angs[i][j])) <
                  5.0 * p.correlator_error + 2e-4);
        }
    // At these settings the signed probability combination sits at 1/2.
    CHECK(std::abs(stats.bell_prob_combination - 0.5) <
          5.0 * stats.bell_prob_error + 2e-4);
    CHECK(std::abs(stats.chsh_correlator) < 5.0 * stats.chsh_error + 4e-4);
}

TEST_CASE("counterfactual and fresh sampling agree in expectation") {
    const DetectionModel model = cos2_model(DetectionMode::f_dependent);
    const std::size_t n = 200000;
    const auto cf = run_experiment(model, kStandard, n, 29, Sampling::counterfactual);
    const auto fr = run_experiment(model, kStandard, n, 31, Sampling::fresh);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const PairStats& a = cf.pairs[i][j];
            const PairStats& b = fr.pairs[i][j];
            const double se = std::hypot(a.std_error, b.std_error);
            CHECK(std::abs(a.probability - b.probability) < 5.0 * se);
        }
}

TEST_CASE("reference model closed forms and sampling agree") {
    CHECK(qm_coincidence(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(qm_coincidence(0.0, kPi / 2.0)) < 1e-15);
    CHECK(qm_correlator(0.3, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(qm_chsh_value(kQmMax) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

    const std::size_t n = 200000;
    const auto stats = run_qm_experiment(kQmMax, n, 5);
    CHECK(std::abs(stats.chsh_correlator - 2.0 * std::sqrt(2.0)) <
          5.0 * stats.chsh_error);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(stats.pairs[i][j].trials == n);
}

TEST_CASE("scan recovers the reference maximum on the canonical angles") {
    const std::vector<double> one{kPi / 4.0};
    const std::vector<double> all{0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0};
    const ScanResult r = chsh_scan(one, all, all, all);
    CHECK(r.max_value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r.argmax.alpha1 == kPi / 4.0);
    // The maximizer keeps |S| <= 2 sqrt 2 on every scanned point.
    CHECK(r.max_value <= 2.0 * std::sqrt(2.0) + 1e-12);
}

TEST_CASE("interchange quadrature matches closed forms at symmetric angles") {
    // alpha pair (0, pi/2), beta pair (pi/4, 3 pi/4): both mins reduce to
    // g(l) = (1 - |cos 2l|)/2 and the refreshed product to sin^2(4l)/64.
    const AngleSettings sym{0.0, kPi / 2.0, kPi / 4.0, 3.0 * kPi / 4.0};
    const auto q = interchange_gap_quadrature(ResponseCurve::cos_squared(360), sym);
    CHECK(q.joint == doctest::Approx((1.0 - 3.0 / kPi) / 4.0).epsilon(5e-4));
    CHECK(q.refreshed == doctest::Approx(1.0 / 128.0).epsilon(5e-4));
    CHECK(q.gap == doctest::Approx(q.joint - q.refreshed).epsilon(1e-12));
}

TEST_CASE("interchange quadrature regression at the standard settings") {
    const auto q =
        interchange_gap_quadrature(ResponseCurve::cos_squared(360), kStandard);
    CHECK(q.joint == doctest::Approx(0.11934564).epsilon(1e-6));
    CHECK(q.refreshed == doctest::Approx(0.10669417).epsilon(1e-6));
    CHECK(q.gap == doctest::Approx(0.01265146).epsilon(1e-4));
    CHECK(q.gap > 0.01);
}

TEST_CASE("interchange gap estimator agrees with the quadrature oracle") {
    const DetectionModel model = cos2_model(DetectionMode::f_dependent);
    const std::size_t n = 200000;
    const auto q = interchange_gap_quadrature(model.response, kStandard);
    const auto g = interchange_gap(model, kStandard, n, 42);
    CHECK(g.trials == n);
    CHECK(g.std_error > 0.0);
    CHECK(std::abs(g.gap - q.gap) < 4.0 * g.std_error);
    // The shared-parameter side is strictly larger here.
    CHECK(g.gap / g.std_error > 5.0);
    CHECK(g.joint == doctest::Approx(q.joint).epsilon(0.02));
    CHECK(g.refreshed == doctest::Approx(q.refreshed).epsilon(0.02));
}

TEST_CASE("refreshing impact parameters is invisible in bernoulli mode") {
    const DetectionModel model = cos2_model(DetectionMode::f_independent);
    const auto g = interchange_gap(model, kStandard, 200000, 42);
    CHECK(std::abs(g.gap) < 4.0 * g.std_error);
}

TEST_CASE("interchange gap error needs two trials") {
    const DetectionModel model = cos2_model(DetectionMode::f_dependent);
    const auto g = interchange_gap(model, kStandard, 1, 3);
    CHECK(std::isnan(g.std_error));
    const auto g2 = interchange_gap(model, kStandard, 2, 3);
    CHECK(std::isfinite(g2.std_error));
}

TEST_CASE("bound ladder hits 2, 2 sqrt 2, 2 sqrt 3") {
    const double det = bell_operator_bound(BoundMode::deterministic, 0, 1, 0);
    CHECK(det == 2.0);
    const double ten = bell_operator_bound(BoundMode::tensor_commuting, 4, 8, 3);
    CHECK(ten == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
    const double non4 = bell_operator_bound(BoundMode::noncommuting, 4, 1, 3);
    CHECK(non4 == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
    const double non2 = bell_operator_bound(BoundMode::noncommuting, 2, 16, 3);
    CHECK(non2 == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(non2 <= 2.0 * std::sqrt(3.0) + 1e-12);

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const double t = bell_operator_bound(BoundMode::tensor_commuting, 4, 4, seed);
        const double nc = bell_operator_bound(BoundMode::noncommuting, 4, 4, seed);
        CHECK(det <= t + 1e-12);
        CHECK(t <= nc + 1e-12);
    }
}

TEST_CASE("bound modes validate their domains") {
    CHECK_THROWS_AS(bell_operator_bound(BoundMode::tensor_commuting, 3, 8, 0),
                    hvq::InvalidParameter);
    CHECK_THROWS_AS(bell_operator_bound(BoundMode::noncommuting, 3, 8, 0),
                    hvq::InvalidParameter);
    CHECK_THROWS_AS(bell_operator_bound(BoundMode::noncommuting, 4, 0, 0),
                    hvq::InvalidParameter);
}

TEST_CASE("coincidence csv has one row per setting pair") {
    const auto stats = run_qm_experiment(kQmMax, 1000, 9);
    const std::string csv = to_csv(stats);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "setting_i,setting_j,trials,coincidences,probability,stderr");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}
