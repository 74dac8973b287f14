#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hvq/config.hpp"
#include "hvq/earlyq.hpp"
#include "hvq/epr.hpp"
#include "hvq/errors.hpp"
#include "hvq/fock.hpp"
#include "hvq/laxphillips.hpp"
#include "hvq/polarization.hpp"

namespace py = pybind11;

namespace {

void bind_errors(py::module_& m) {
    // InvalidParameter maps to ValueError to mirror the CLI split between
    // configuration errors and domain errors; everything else stays a
    // RuntimeError subclass.
    py::register_exception<hvq::InvalidParameter>(m, "InvalidParameter",
                                                  PyExc_ValueError);
    py::register_exception<hvq::ZeroAtOrigin>(m, "ZeroAtOrigin");
    py::register_exception<hvq::DimensionMismatch>(m, "DimensionMismatch");
    py::register_exception<hvq::BlockMixture>(m, "BlockMixture");
    py::register_exception<hvq::TagMismatch>(m, "TagMismatch");
    py::register_exception<hvq::NoCrossing>(m, "NoCrossing");
    py::register_exception<hvq::GridTooSmall>(m, "GridTooSmall");
    py::register_exception<hvq::BandLimitExceeded>(m, "BandLimitExceeded");
    py::register_exception<hvq::ZeroAmplitude>(m, "ZeroAmplitude");
    py::register_exception<hvq::NonHermitian>(m, "NonHermitian");
}

void bind_polarization(py::module_& root) {
    namespace pol = hvq::polarization;
    auto m = root.def_submodule("polarization",
                                "Response curves, coincidence rates and the "
                                "Malus-law inversion problem.");

    py::class_<pol::ResponseCurve>(m, "ResponseCurve")
        .def(py::init<std::size_t, std::vector<double>>(), py::arg("grid_size"),
             py::arg("values"))
        .def_static("from_function", &pol::ResponseCurve::from_function,
                    py::arg("grid_size"), py::arg("f"))
        .def_static("constant", &pol::ResponseCurve::constant, py::arg("grid_size"),
                    py::arg("value"))
        .def_static("cos_squared", &pol::ResponseCurve::cos_squared,
                    py::arg("grid_size"))
        .def_property_readonly("grid_size", &pol::ResponseCurve::grid_size)
        .def_property_readonly("spacing", &pol::ResponseCurve::spacing)
        .def("node", &pol::ResponseCurve::node, py::arg("i"))
        .def_property_readonly("values", &pol::ResponseCurve::values)
        .def("value_at", &pol::ResponseCurve::value_at, py::arg("lam"));

    py::class_<pol::CoincidenceCurve>(m, "CoincidenceCurve")
        .def_readonly("grid_size", &pol::CoincidenceCurve::grid_size)
        .def_readonly("raw", &pol::CoincidenceCurve::raw)
        .def_readonly("normalized", &pol::CoincidenceCurve::normalized)
        .def("angle", &pol::CoincidenceCurve::angle, py::arg("j"));

    py::class_<pol::MalusTarget>(m, "MalusTarget")
        .def(py::init<double>(), py::arg("epsilon"))
        .def_readonly("epsilon", &pol::MalusTarget::epsilon)
        .def("__call__", &pol::MalusTarget::operator(), py::arg("alpha"));

    py::class_<pol::BelifanteReport>(m, "BelifanteReport")
        .def_readonly("max_deviation", &pol::BelifanteReport::max_deviation)
        .def_readonly("at_angle", &pol::BelifanteReport::at_angle);

    py::class_<pol::FeasibilityReport>(m, "FeasibilityReport")
        .def_readonly("c0", &pol::FeasibilityReport::c0)
        .def_readonly("c1", &pol::FeasibilityReport::c1)
        .def_readonly("ratio", &pol::FeasibilityReport::ratio)
        .def_readonly("feasible_exact", &pol::FeasibilityReport::feasible_exact)
        .def_readonly("min_epsilon_exact", &pol::FeasibilityReport::min_epsilon_exact);

    py::class_<pol::FitReport>(m, "FitReport")
        .def_readonly("fitted", &pol::FitReport::fitted)
        .def_readonly("sup_residual", &pol::FitReport::sup_residual)
        .def_readonly("l2_residual", &pol::FitReport::l2_residual)
        .def_readonly("iterations", &pol::FitReport::iterations)
        .def_readonly("feasibility_bound", &pol::FitReport::feasibility_bound)
        .def("summary", &pol::FitReport::summary);

    m.def("autocorrelate", &pol::autocorrelate, py::arg("p1"),
          py::arg("normalize") = true);
    m.def("malus", &pol::malus, py::arg("alpha"), py::arg("target"));
    m.def("belifante_mismatch",
          py::overload_cast<std::size_t>(&pol::belifante_mismatch),
          py::arg("grid_size"));
    m.def("belifante_mismatch",
          py::overload_cast<std::size_t, const pol::MalusTarget&>(
              &pol::belifante_mismatch),
          py::arg("grid_size"), py::arg("target"));
    m.def("fourier_feasibility", &pol::fourier_feasibility, py::arg("target"));
    m.def("fit_response", &pol::fit_response, py::arg("target"),
          py::arg("grid_size"), py::arg("max_iter"), py::arg("tol"),
          py::arg("seed") = 0);
    m.def("fit_response_multi", &pol::fit_response_multi, py::arg("target"),
          py::arg("grid_size"), py::arg("max_iter"), py::arg("tol"),
          py::arg("restarts"), py::arg("seed") = 0);
}

void bind_epr(py::module_& root) {
    namespace epr = hvq::epr;
    auto m = root.def_submodule("epr",
                                "Paired-photon experiments: hidden-variable "
                                "simulation, the quantum reference model and "
                                "operator norm bounds.");

    py::enum_<epr::DetectionMode>(m, "DetectionMode")
        .value("f_dependent", epr::DetectionMode::f_dependent)
        .value("f_independent", epr::DetectionMode::f_independent);

    py::enum_<epr::Sampling>(m, "Sampling")
        .value("counterfactual", epr::Sampling::counterfactual)
        .value("fresh", epr::Sampling::fresh);

    py::enum_<epr::BoundMode>(m, "BoundMode")
        .value("deterministic", epr::BoundMode::deterministic)
        .value("tensor_commuting", epr::BoundMode::tensor_commuting)
        .value("noncommuting", epr::BoundMode::noncommuting);

    py::class_<epr::DetectionModel>(m, "DetectionModel")
        .def(py::init<hvq::polarization::ResponseCurve, epr::DetectionMode>(),
             py::arg("response"), py::arg("mode") = epr::DetectionMode::f_dependent)
        .def_readonly("response", &epr::DetectionModel::response)
        .def_readonly("mode", &epr::DetectionModel::mode);

    py::class_<epr::AngleSettings>(m, "AngleSettings")
        .def(py::init([](double a1, double a2, double b1, double b2) {
                 return epr::AngleSettings{a1, a2, b1, b2};
             }),
             py::arg("alpha1") = 0.0, py::arg("alpha2") = 0.0,
             py::arg("beta1") = 0.0, py::arg("beta2") = 0.0)
        .def_readwrite("alpha1", &epr::AngleSettings::alpha1)
        .def_readwrite("alpha2", &epr::AngleSettings::alpha2)
        .def_readwrite("beta1", &epr::AngleSettings::beta1)
        .def_readwrite("beta2", &epr::AngleSettings::beta2);

    py::class_<epr::PairStats>(m, "PairStats")
        .def_readonly("trials", &epr::PairStats::trials)
        .def_readonly("coincidences", &epr::PairStats::coincidences)
        .def_readonly("probability", &epr::PairStats::probability)
        .def_readonly("std_error", &epr::PairStats::std_error)
        .def_readonly("correlator", &epr::PairStats::correlator)
        .def_readonly("correlator_error", &epr::PairStats::correlator_error);

    py::class_<epr::CoincidenceStats>(m, "CoincidenceStats")
        .def(
            "pair",
            [](const epr::CoincidenceStats& stats, int i, int j) {
                if (i < 1 || i > 2 || j < 1 || j > 2)
                    throw py::index_error("setting indices run over {1, 2}");
                return stats.pairs[i - 1][j - 1];
            },
            py::arg("i"), py::arg("j"))
        .def_readonly("bell_prob_combination",
                      &epr::CoincidenceStats::bell_prob_combination)
        .def_readonly("bell_prob_error", &epr::CoincidenceStats::bell_prob_error)
        .def_readonly("chsh_correlator", &epr::CoincidenceStats::chsh_correlator)
        .def_readonly("chsh_error", &epr::CoincidenceStats::chsh_error);

    py::class_<epr::ScanResult>(m, "ScanResult")
        .def_readonly("max_value", &epr::ScanResult::max_value)
        .def_readonly("argmax", &epr::ScanResult::argmax);

    py::class_<epr::InterchangeGap>(m, "InterchangeGap")
        .def_readonly("joint", &epr::InterchangeGap::joint)
        .def_readonly("refreshed", &epr::InterchangeGap::refreshed)
        .def_readonly("gap", &epr::InterchangeGap::gap)
        .def_readonly("std_error", &epr::InterchangeGap::std_error)
        .def_readonly("trials", &epr::InterchangeGap::trials);

    py::class_<epr::QuadratureGap>(m, "QuadratureGap")
        .def_readonly("joint", &epr::QuadratureGap::joint)
        .def_readonly("refreshed", &epr::QuadratureGap::refreshed)
        .def_readonly("gap", &epr::QuadratureGap::gap);

    m.def("run_experiment", &epr::run_experiment, py::arg("model"),
          py::arg("settings"), py::arg("n_pairs"), py::arg("seed"),
          py::arg("sampling") = epr::Sampling::counterfactual);
    m.def("qm_coincidence", &epr::qm_coincidence, py::arg("alpha"), py::arg("beta"));
    m.def("qm_correlator", &epr::qm_correlator, py::arg("alpha"), py::arg("beta"));
    m.def("qm_chsh_value", &epr::qm_chsh_value, py::arg("settings"));
    m.def("run_qm_experiment", &epr::run_qm_experiment, py::arg("settings"),
          py::arg("n_pairs"), py::arg("seed"));
    m.def("chsh_scan", &epr::chsh_scan, py::arg("alpha1s"), py::arg("alpha2s"),
          py::arg("beta1s"), py::arg("beta2s"));
    m.def("interchange_gap", &epr::interchange_gap, py::arg("model"),
          py::arg("settings"), py::arg("n_pairs"), py::arg("seed"));
    m.def("interchange_gap_quadrature", &epr::interchange_gap_quadrature,
          py::arg("p1"), py::arg("settings"));
    m.def("bell_operator_bound", &epr::bell_operator_bound, py::arg("mode"),
          py::arg("dim"), py::arg("restarts"), py::arg("seed"));
}

void bind_fock(py::module_& root) {
    namespace fock = hvq::fock;
    auto m = root.def_submodule("fock",
                                "Truncated ladder algebra, the lowering phase "
                                "operator and the doubled-spectrum space.");

    py::class_<fock::TruncatedOscillator>(m, "TruncatedOscillator")
        .def_readonly("dim", &fock::TruncatedOscillator::dim)
        .def_readonly("omega", &fock::TruncatedOscillator::omega)
        .def_readonly("a", &fock::TruncatedOscillator::a)
        .def_readonly("a_dagger", &fock::TruncatedOscillator::a_dagger)
        .def_readonly("N", &fock::TruncatedOscillator::N)
        .def_readonly("H", &fock::TruncatedOscillator::H);

    py::class_<fock::PhaseOperator>(m, "PhaseOperator")
        .def_readonly("E", &fock::PhaseOperator::E)
        .def_readonly("E_dagger", &fock::PhaseOperator::E_dagger);

    py::class_<fock::DoubledSpace>(m, "DoubledSpace")
        .def_readonly("dim_per_block", &fock::DoubledSpace::dim_per_block)
        .def_readonly("omega", &fock::DoubledSpace::omega)
        .def_readonly("J", &fock::DoubledSpace::J)
        .def_readonly("S", &fock::DoubledSpace::S)
        .def_readonly("H2", &fock::DoubledSpace::H2);

    py::class_<fock::CommutatorReport>(m, "CommutatorReport")
        .def_readonly("lower_interior", &fock::CommutatorReport::lower_interior)
        .def_readonly("raise_interior", &fock::CommutatorReport::raise_interior)
        .def_readonly("lower_full", &fock::CommutatorReport::lower_full)
        .def_readonly("raise_full", &fock::CommutatorReport::raise_full);

    py::class_<fock::SuperselectionReport>(m, "SuperselectionReport")
        .def_readonly("max_plus_to_minus",
                      &fock::SuperselectionReport::max_plus_to_minus)
        .def_readonly("max_minus_to_plus",
                      &fock::SuperselectionReport::max_minus_to_plus);

    py::class_<fock::DiagnosticRow>(m, "DiagnosticRow")
        .def_readonly("check", &fock::DiagnosticRow::check)
        .def_readonly("norm", &fock::DiagnosticRow::norm)
        .def_readonly("dimension", &fock::DiagnosticRow::dimension)
        .def_readonly("block", &fock::DiagnosticRow::block);

    m.def("build_oscillator", &fock::build_oscillator, py::arg("dim"),
          py::arg("omega"));
    m.def("sg_phase", &fock::sg_phase, py::arg("dim"));
    m.def("commutator_report", &fock::commutator_report, py::arg("osc"),
          py::arg("phase"));
    m.def("build_doubled", &fock::build_doubled, py::arg("dim_per_block"),
          py::arg("omega"));
    m.def("superselection_check", &fock::superselection_check, py::arg("space"),
          py::arg("t_grid"));
    m.def("phase_winding",
          py::overload_cast<const fock::DoubledSpace&, int,
                            const std::vector<double>&>(&fock::phase_winding),
          py::arg("space"), py::arg("block"), py::arg("t_grid"));
    m.def("phase_winding",
          py::overload_cast<const fock::DoubledSpace&, const Eigen::VectorXcd&,
                            const std::vector<double>&>(&fock::phase_winding),
          py::arg("space"), py::arg("initial"), py::arg("t_grid"));
    m.def("diagnostics", &fock::diagnostics, py::arg("dim"), py::arg("omega"));
}

void bind_laxphillips(py::module_& root) {
    namespace lp = hvq::laxphillips;
    auto m = root.def_submodule("laxphillips",
                                "Free wavepackets with trajectory bookkeeping, "
                                "the oscillator phase clock and the multimode "
                                "resonance network.");

    py::class_<lp::SpatialGrid>(m, "SpatialGrid")
        .def(py::init([](std::size_t n, double length) {
                 return lp::SpatialGrid{n, length};
             }),
             py::arg("n"), py::arg("length"))
        .def_readonly("n", &lp::SpatialGrid::n)
        .def_readonly("length", &lp::SpatialGrid::length)
        .def("spacing", &lp::SpatialGrid::spacing)
        .def("node", &lp::SpatialGrid::node, py::arg("i"));

    py::class_<lp::TrajectoryTag>(m, "TrajectoryTag")
        .def_readonly("x0", &lp::TrajectoryTag::x0)
        .def_readonly("p0", &lp::TrajectoryTag::p0)
        .def_readonly("sigma", &lp::TrajectoryTag::sigma)
        .def_readonly("t0", &lp::TrajectoryTag::t0)
        .def("__eq__", [](const lp::TrajectoryTag& a, const lp::TrajectoryTag& b) {
            return a == b;
        });

    py::enum_<lp::Classification>(m, "Classification")
        .value("incoming", lp::Classification::incoming)
        .value("zero", lp::Classification::zero)
        .value("outgoing", lp::Classification::outgoing);

    py::class_<lp::Wavepacket>(m, "Wavepacket")
        .def_readonly("grid", &lp::Wavepacket::grid)
        .def_readonly("amplitudes", &lp::Wavepacket::amplitudes)
        .def_readonly("mass", &lp::Wavepacket::mass)
        .def_readonly("hbar", &lp::Wavepacket::hbar)
        .def_readonly("time", &lp::Wavepacket::time)
        .def_readonly("tag", &lp::Wavepacket::tag);

    py::class_<lp::TrajectoryPoint>(m, "TrajectoryPoint")
        .def_readonly("t", &lp::TrajectoryPoint::t)
        .def_readonly("expect_R", &lp::TrajectoryPoint::expect_R)
        .def_readonly("expect_T", &lp::TrajectoryPoint::expect_T)
        .def_readonly("expect_q", &lp::TrajectoryPoint::expect_q)
        .def_readonly("expect_p", &lp::TrajectoryPoint::expect_p)
        .def_readonly("norm", &lp::TrajectoryPoint::norm)
        .def_readonly("classification", &lp::TrajectoryPoint::classification);

    py::class_<lp::EvolutionResult>(m, "EvolutionResult")
        .def_readonly("trajectory", &lp::EvolutionResult::trajectory)
        .def_readonly("final_state", &lp::EvolutionResult::final_state);

    py::class_<lp::OscillatorPoint>(m, "OscillatorPoint")
        .def_readonly("t", &lp::OscillatorPoint::t)
        .def_readonly("expect_q", &lp::OscillatorPoint::expect_q)
        .def_readonly("expect_p", &lp::OscillatorPoint::expect_p)
        .def_readonly("phase", &lp::OscillatorPoint::phase)
        .def_readonly("tan_half", &lp::OscillatorPoint::tan_half);

    m.def("gaussian_packet", &lp::gaussian_packet, py::arg("x0"), py::arg("p0"),
          py::arg("sigma"), py::arg("grid"), py::arg("t0") = 0.0,
          py::arg("mass") = 1.0, py::arg("hbar") = 1.0);
    m.def("norm", &lp::norm, py::arg("psi"));
    m.def("expect_q", &lp::expect_q, py::arg("psi"));
    m.def("expect_p", &lp::expect_p, py::arg("psi"));
    m.def("expect_p_squared", &lp::expect_p_squared, py::arg("psi"));
    m.def("expect_R", &lp::expect_R, py::arg("psi"));
    m.def("classify", &lp::classify, py::arg("psi"), py::arg("tol_R") = 1e-9);
    m.def("evolve_free", &lp::evolve_free, py::arg("psi"), py::arg("dt"),
          py::arg("steps"));
    m.def("crossing_time", &lp::crossing_time, py::arg("trajectory"));
    m.def("time_expectation", &lp::time_expectation, py::arg("trajectory"));
    m.def("superpose", &lp::superpose, py::arg("psi1"), py::arg("psi2"),
          py::arg("c1"), py::arg("c2"));
    m.def("oscillator_trajectory", &lp::oscillator_trajectory, py::arg("omega"),
          py::arg("q0"), py::arg("p0"), py::arg("t_grid"));

    py::class_<lp::ResonanceParams>(m, "ResonanceParams")
        .def(py::init<>())
        .def_readwrite("n_channels", &lp::ResonanceParams::n_channels)
        .def_readwrite("modes_per_channel", &lp::ResonanceParams::modes_per_channel)
        .def_readwrite("bandwidth", &lp::ResonanceParams::bandwidth)
        .def_readwrite("doorway_energy", &lp::ResonanceParams::doorway_energy)
        .def_readwrite("in_coupling", &lp::ResonanceParams::in_coupling)
        .def_readwrite("internal_energies", &lp::ResonanceParams::internal_energies)
        .def_readwrite("internal_couplings", &lp::ResonanceParams::internal_couplings)
        .def_readwrite("channel_couplings", &lp::ResonanceParams::channel_couplings);

    py::class_<lp::ResonanceSystem>(m, "ResonanceSystem")
        .def_readonly("params", &lp::ResonanceSystem::params)
        .def_readonly("hamiltonian", &lp::ResonanceSystem::hamiltonian)
        .def_readonly("mode_spacing", &lp::ResonanceSystem::mode_spacing)
        .def("dim", &lp::ResonanceSystem::dim)
        .def("theta_offset", &lp::ResonanceSystem::theta_offset)
        .def("theta_dim", &lp::ResonanceSystem::theta_dim)
        .def("out_offset", &lp::ResonanceSystem::out_offset, py::arg("channel"));

    py::class_<lp::ResonanceHistory>(m, "ResonanceHistory")
        .def_readonly("t", &lp::ResonanceHistory::t)
        .def_readonly("p_in", &lp::ResonanceHistory::p_in)
        .def_readonly("p_theta", &lp::ResonanceHistory::p_theta)
        .def_readonly("p_out", &lp::ResonanceHistory::p_out)
        .def_readonly("branching", &lp::ResonanceHistory::branching);

    py::class_<lp::DecayFit>(m, "DecayFit")
        .def_readonly("rate", &lp::DecayFit::rate)
        .def_readonly("log_residual", &lp::DecayFit::log_residual)
        .def_readonly("window_begin", &lp::DecayFit::window_begin)
        .def_readonly("window_end", &lp::DecayFit::window_end);

    m.def("build_resonance", &lp::build_resonance, py::arg("params"));
    m.def("in_packet",
          py::overload_cast<const lp::ResonanceSystem&>(&lp::in_packet),
          py::arg("system"));
    m.def("in_packet",
          py::overload_cast<const lp::ResonanceSystem&, double, double>(
              &lp::in_packet),
          py::arg("system"), py::arg("energy_center"), py::arg("energy_width"));
    m.def("theta_unit", &lp::theta_unit, py::arg("system"), py::arg("index"));
    m.def("resonance_evolve", &lp::resonance_evolve, py::arg("system"),
          py::arg("initial"), py::arg("t_grid"));
    m.def("fit_theta_decay", &lp::fit_theta_decay, py::arg("history"));
}

void bind_earlyq(py::module_& root) {
    namespace eq = hvq::earlyq;
    auto m = root.def_submodule("earlyq",
                                "Blackbody spectra, photoelectric kinematics "
                                "and hydrogen-like level structure.");

    py::enum_<eq::UnitSystem>(m, "UnitSystem")
        .value("si", eq::UnitSystem::si)
        .value("natural", eq::UnitSystem::natural);

    py::class_<eq::PhysicalConstants>(m, "PhysicalConstants")
        .def_static("si", &eq::PhysicalConstants::si)
        .def_static("natural", &eq::PhysicalConstants::natural)
        .def_readwrite("h", &eq::PhysicalConstants::h)
        .def_readwrite("hbar", &eq::PhysicalConstants::hbar)
        .def_readwrite("c", &eq::PhysicalConstants::c)
        .def_readwrite("k_B", &eq::PhysicalConstants::k_B)
        .def_readwrite("m_e", &eq::PhysicalConstants::m_e)
        .def_readwrite("e", &eq::PhysicalConstants::e)
        .def_readwrite("system", &eq::PhysicalConstants::system);

    m.def("planck_density", &eq::planck_density, py::arg("nu"), py::arg("T"),
          py::arg("k"));
    m.def("rayleigh_jeans_density", &eq::rayleigh_jeans_density, py::arg("nu"),
          py::arg("T"), py::arg("k"));
    m.def("wien_density", &eq::wien_density, py::arg("nu"), py::arg("T"),
          py::arg("a"), py::arg("b"));
    m.def("avg_oscillator_energy", &eq::avg_oscillator_energy, py::arg("nu"),
          py::arg("T"), py::arg("k"));
    m.def("avg_oscillator_energy_truncated", &eq::avg_oscillator_energy_truncated,
          py::arg("nu"), py::arg("T"), py::arg("k"), py::arg("n_max"));
    m.def("photoelectron_energy", &eq::photoelectron_energy, py::arg("nu"),
          py::arg("work_function"), py::arg("k"));
    m.def("stopping_potential", &eq::stopping_potential, py::arg("nu"),
          py::arg("work_function"), py::arg("k"));
    m.def("bohr_level", &eq::bohr_level, py::arg("n"), py::arg("k"),
          py::arg("Z") = 1);
    m.def("emission_frequency", &eq::emission_frequency, py::arg("n"),
          py::arg("m"), py::arg("k"), py::arg("Z") = 1);
    m.def("de_broglie_wavelength", &eq::de_broglie_wavelength, py::arg("momentum"),
          py::arg("k"));
    m.def("duane_maxima", &eq::duane_maxima, py::arg("length"),
          py::arg("momentum"), py::arg("n_max"), py::arg("k"));
    m.def("boltzmann_entropy", &eq::boltzmann_entropy, py::arg("multiplicity"),
          py::arg("k"));
}

void bind_config(py::module_& root) {
    namespace cfg = hvq::config;
    auto m = root.def_submodule("config",
                                "The flat key=value run-configuration format "
                                "used by the command-line driver.");

    py::class_<cfg::Options>(m, "Options")
        .def(py::init<>())
        .def_readwrite("values", &cfg::Options::values)
        .def("contains", &cfg::Options::contains, py::arg("key"))
        .def("get_string", &cfg::Options::get_string, py::arg("key"),
             py::arg("fallback"))
        .def("get_double", &cfg::Options::get_double, py::arg("key"),
             py::arg("fallback"))
        .def("get_u64", &cfg::Options::get_u64, py::arg("key"), py::arg("fallback"))
        .def("get_size", &cfg::Options::get_size, py::arg("key"),
             py::arg("fallback"))
        .def("get_angle", &cfg::Options::get_angle, py::arg("key"),
             py::arg("fallback"))
        .def("validate_keys", &cfg::Options::validate_keys, py::arg("allowed"));

    m.def("parse_string", &cfg::parse_string, py::arg("text"));
    m.def("parse_file", &cfg::parse_file, py::arg("path"));
    m.def("merge", &cfg::merge, py::arg("base"), py::arg("overrides"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core: polarization coincidence analysis, paired-photon "
              "experiments, truncated phase operators, wavepacket trajectories "
              "and quantum-theory reference formulas.";
    m.attr("__version__") = "0.1.0";

    bind_errors(m);
    bind_polarization(m);
    bind_epr(m);
    bind_fock(m);
    bind_laxphillips(m);
    bind_earlyq(m);
    bind_config(m);
}
