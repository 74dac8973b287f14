#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hvq::fock {

/// Number-basis ladder algebra cut at dimension D. N = a'a is exact in the
/// truncation; H = (omega/2)(aa' + a'a) equals omega(N + 1/2) on indices
/// n < D-1 and carries a single defect of omega*D/2 at the last index, which
/// is the truncation artifact the diagnostics localize.
struct TruncatedOscillator {
    int dim = 0;
    double omega = 0.0;
    Eigen::MatrixXcd a;
    Eigen::MatrixXcd a_dagger;
    Eigen::MatrixXcd N;
    Eigen::MatrixXcd H;
};

/// Lowering phase operator E|n> = |n-1>, E|0> = 0: exactly the unit
/// superdiagonal. E'E = I - |0><0| holds exactly at every dimension; EE'
/// misses only the top state, EE' = I - |D-1><D-1|.
struct PhaseOperator {
    Eigen::MatrixXcd E;
    Eigen::MatrixXcd E_dagger;
};

/// Two copies of the oscillator spectrum glued into one cyclic ladder.
/// Index m runs over {-D, ..., D-1}, stored at k = m + D. J is +1 on the
/// m >= 0 block and -1 below; S shifts m -> m-1 with cyclic closure at -D;
/// H2 is diagonal with energy omega(m+1/2) for m >= 0 and omega(-m-1/2)
/// for m < 0, so both blocks are bounded below by omega/2 and the two
/// minimum-energy states m = 0, m = -1 sit next to each other in the ladder.
struct DoubledSpace {
    int dim_per_block = 0;
    double omega = 0.0;
    Eigen::MatrixXcd J;
    Eigen::MatrixXcd S;
    Eigen::MatrixXcd H2;
};

/// Spectral norms of [H,E] + omega E and [H,E'] - omega E', each once on
/// the interior rows/columns (n < D-1) and once over the full matrix.
struct CommutatorReport {
    double lower_interior = 0.0;
    double raise_interior = 0.0;
    double lower_full = 0.0;
    double raise_full = 0.0;
};

/// Worst cross-block leakage of U(t) = exp(-i H2 t) over a time grid.
struct SuperselectionReport {
    double max_plus_to_minus = 0.0;
    double max_minus_to_plus = 0.0;
};

TruncatedOscillator build_oscillator(int dim, double omega);

PhaseOperator sg_phase(int dim);

CommutatorReport commutator_report(const TruncatedOscillator& osc,
                                   const PhaseOperator& phase);

DoubledSpace build_doubled(int dim_per_block, double omega);

SuperselectionReport superselection_check(const DoubledSpace& space,
                                          const std::vector<double>& t_grid);

/// Unwrapped relative phase of a two-level state, higher m against lower m,
/// so the slope is -omega on the J = +1 block and +omega on the mirror
/// block. The block selector starts from the equal superposition of the two
/// lowest-energy levels of that block (m = 0,1 or m = -1,-2).
std::vector<double> phase_winding(const DoubledSpace& space, int block,
                                  const std::vector<double>& t_grid);

/// Same trajectory from an explicit initial vector, which must be supported
/// on exactly two m-adjacent levels; support crossing the block boundary is
/// rejected as a mixture.
std::vector<double> phase_winding(const DoubledSpace& space,
                                  const Eigen::VectorXcd& initial,
                                  const std::vector<double>& t_grid);

/// One line of the plain-text/CSV diagnostics table.
struct DiagnosticRow {
    std::string check;
    double norm = 0.0;
    int dimension = 0;
    std::string block;  // "+1", "-1" or "-" when not block-specific
};

/// Rows covering the isometry identities, the commutator norms and the
/// superselection leakage for one dimension.
std::vector<DiagnosticRow> diagnostics(int dim, double omega);

/// CSV table, header `check,norm,dimension,block`.
std::string to_csv(const std::vector<DiagnosticRow>& rows);

/// Sparse triplet dump, header `row,col,re,im`, nonzero entries only.
std::string matrix_csv(const Eigen::MatrixXcd& m);

}  // namespace hvq::fock
