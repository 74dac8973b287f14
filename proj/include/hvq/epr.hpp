#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hvq/polarization.hpp"
#include "hvq/rng.hpp"

namespace hvq::epr {

/// One photon pair: shared polarization angle plus one impact parameter per
/// side. The pair is emitted with parallel polarizations (both photons carry
/// the same lambda).
struct HiddenState {
    double lambda = 0.0;   // radians in [-pi/2, pi/2)
    double f_left = 0.0;   // in [0, 1)
    double f_right = 0.0;  // in [0, 1)
};

/// f_dependent: pass iff f < p1(lambda - theta), a pure function of the
/// hidden state. f_independent: pass with probability p1(lambda - theta)
/// using a fresh variate per evaluation.
enum class DetectionMode { f_dependent, f_independent };

struct DetectionModel {
    polarization::ResponseCurve response;
    DetectionMode mode = DetectionMode::f_dependent;
};

enum class Side { left, right };

/// counterfactual: all four setting pairs evaluated on one hidden state.
/// fresh: each setting pair draws its own hidden states.
enum class Sampling { counterfactual, fresh };

struct AngleSettings {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
};

struct PairStats {
    std::size_t trials = 0;
    std::size_t coincidences = 0;  // pass-pass at the unrotated axes
    double probability = 0.0;
    double std_error = 0.0;        // sqrt(p(1-p)/n)
    double correlator = 0.0;       // normalized four-orientation combination
    double correlator_error = 0.0;
};

struct CoincidenceStats {
    std::array<std::array<PairStats, 2>, 2> pairs;  // [i-1][j-1]

    // S built directly from the four coincidence probabilities
    // p11 + p21 + p12 - p22, and its standard error.
    double bell_prob_combination = 0.0;
    double bell_prob_error = 0.0;

    // S built from per-pair correlators E(a,b) = (p(a,b) + p(a+,b+) -
    // p(a+,b) - p(a,b+)) / (sum of the four), + marking the axis rotated by
    // pi/2; same sign pattern as above.
    double chsh_correlator = 0.0;
    double chsh_error = 0.0;
};

HiddenState sample_pair(RngStream& rng);

/// rng is drawn from only in f_independent mode.
bool transmit(const DetectionModel& model, const HiddenState& state,
              double theta, Side side, RngStream& rng);

CoincidenceStats run_experiment(const DetectionModel& model,
                                const AngleSettings& settings,
                                std::size_t n_pairs, std::uint64_t seed,
                                Sampling sampling);

/// Two-photon reference model: coincidence probability cos^2(alpha-beta)/2
/// and correlator cos 2(alpha-beta).
double qm_coincidence(double alpha, double beta);
double qm_correlator(double alpha, double beta);

/// Closed-form S_corr for the reference model.
double qm_chsh_value(const AngleSettings& settings);

/// Monte Carlo draw from the reference model's joint outcome distribution,
/// n_pairs trials per setting pair, all pairs independent.
CoincidenceStats run_qm_experiment(const AngleSettings& settings,
                                   std::size_t n_pairs, std::uint64_t seed);

struct ScanResult {
    double max_value = 0.0;
    AngleSettings argmax;
};

/// Maximizes qm_chsh_value over the product of the four angle lists. Since
/// the correlator depends only on angle differences, callers typically pin
/// alpha1 to a single value.
ScanResult chsh_scan(const std::vector<double>& alpha1s,
                     const std::vector<double>& alpha2s,
                     const std::vector<double>& beta1s,
                     const std::vector<double>& beta2s);

/// Difference between the four-outcome product expectation with one impact
/// parameter per side and the same expectation with the primed settings
/// evaluated on independently redrawn impact parameters.
struct InterchangeGap {
    double joint = 0.0;      // shared-f product mean
    double refreshed = 0.0;  // redrawn-f product mean
    double gap = 0.0;        // joint - refreshed
    double std_error = 0.0;  // NaN when trials < 2
    std::size_t trials = 0;
};

InterchangeGap interchange_gap(const DetectionModel& model,
                               const AngleSettings& settings,
                               std::size_t n_pairs, std::uint64_t seed);

/// Deterministic oracle for the f_dependent gap: integrates both product
/// expectations exactly over lambda (the integrands are piecewise constant
/// between shifted grid-cell edges) and over f in closed form.
struct QuadratureGap {
    double joint = 0.0;
    double refreshed = 0.0;
    double gap = 0.0;
};

QuadratureGap interchange_gap_quadrature(const polarization::ResponseCurve& p1,
                                         const AngleSettings& settings);

/// deterministic: max over the 16 sign assignments (exactly 2).
/// tensor_commuting: seesaw over product observables n.sigma x m.sigma on a
///   2x2 tensor space (dim must be 4); optimum 2*sqrt(2).
/// noncommuting: maximizes the norm estimate of the combination that retains
///   only the separate norms of the two setting sums,
///   sqrt(4 + 2*||B1+B2||*||B1-B2||), over Hermitian contractions on ONE
///   dim-2 or dim-4 space. Its regimes recover the whole ladder: coinciding
///   settings give 2, anticommuting pairs give 2*sqrt(2), and the
///   unconstrained maximum is 2*sqrt(3). (Any formulation that keeps the
///   joint constraint (B1+B2)^2 + (B1-B2)^2 <= 4 is capped at 2*sqrt(2)
///   regardless of commutativity, so the third regime is only reachable
///   through this estimate.)
enum class BoundMode { deterministic, tensor_commuting, noncommuting };

double bell_operator_bound(BoundMode mode, int dim, std::size_t restarts,
                           std::uint64_t seed);

/// CSV table, header `setting_i,setting_j,trials,coincidences,probability,stderr`.
std::string to_csv(const CoincidenceStats& stats);

}  // namespace hvq::epr
