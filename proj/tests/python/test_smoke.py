"""Smoke checks for the compiled module: one or two calls per submodule,
asserting values that the native test suite already pins down tightly."""

import math

import numpy as np
import pytest

import hvqlab
from hvqlab import earlyq, epr, fock, laxphillips, polarization


def test_version_string():
    assert hvqlab.__version__ == "0.1.0"


def test_autocorrelation_matches_malus_witness():
    curve = polarization.ResponseCurve.cos_squared(180)
    coinc = polarization.autocorrelate(curve)
    target = polarization.MalusTarget(1.0 / 3.0)
    worst = max(
        abs(coinc.normalized[j] - target(coinc.angle(j)))
        for j in range(coinc.grid_size)
    )
    assert worst < 1e-12


def test_feasibility_threshold():
    report = polarization.fourier_feasibility(polarization.MalusTarget(0.02))
    assert not report.feasible_exact
    assert report.min_epsilon_exact == pytest.approx(1.0 / 3.0)


def test_qm_chsh_reaches_tsirelson():
    angles = [0.0, math.pi / 4, math.pi / 8, 3 * math.pi / 8]
    scan = epr.chsh_scan(angles, angles, angles, angles)
    assert scan.max_value == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)

    stats = epr.run_experiment(
        epr.DetectionModel(polarization.ResponseCurve.cos_squared(180)),
        scan.argmax,
        20000,
        seed=3,
        sampling=epr.Sampling.counterfactual,
    )
    assert stats.bell_prob_combination <= 2.0 + 4.0 * stats.bell_prob_error


def test_bound_ladder():
    det = epr.bell_operator_bound(epr.BoundMode.deterministic, 2, 1, 0)
    tensor = epr.bell_operator_bound(epr.BoundMode.tensor_commuting, 4, 4, 1)
    free = epr.bell_operator_bound(epr.BoundMode.noncommuting, 4, 16, 1)
    assert det == 2.0
    assert tensor == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-6)
    assert free == pytest.approx(2.0 * math.sqrt(3.0), abs=1e-6)
    with pytest.raises(ValueError):
        epr.bell_operator_bound(epr.BoundMode.tensor_commuting, 3, 4, 1)


def test_phase_operator_isometry_numpy():
    phase = fock.sg_phase(12)
    E = np.asarray(phase.E)
    defect = E.conj().T @ E - np.eye(12)
    defect[0, 0] += 1.0  # E'E misses exactly the vacuum projector
    assert np.max(np.abs(defect)) == 0.0


def test_doubled_space_winding():
    space = fock.build_doubled(16, 2.0)
    t = [0.05 * i for i in range(40)]
    phases = fock.phase_winding(space, +1, t)
    slope = (phases[-1] - phases[0]) / (t[-1] - t[0])
    assert slope == pytest.approx(-2.0, abs=1e-9)


def test_wavepacket_crossing_time():
    grid = laxphillips.SpatialGrid(512, 60.0)
    psi = laxphillips.gaussian_packet(-5.0, 2.0, 1.0, grid)
    assert laxphillips.norm(psi) == pytest.approx(1.0, abs=1e-12)
    assert laxphillips.classify(psi) == laxphillips.Classification.incoming

    result = laxphillips.evolve_free(psi, 0.02, 200)
    t0 = laxphillips.crossing_time(result.trajectory)
    assert t0 == pytest.approx(40.0 / 17.0, abs=1e-6)

    other = laxphillips.gaussian_packet(-4.0, 2.0, 1.0, grid)
    with pytest.raises(hvqlab.TagMismatch):
        laxphillips.superpose(psi, other, 1.0, 1.0)


def test_resonance_occupations_sum_to_one():
    params = laxphillips.ResonanceParams()
    params.modes_per_channel = 64
    params.internal_energies = [0.0]
    params.internal_couplings = [0.0]
    params.channel_couplings = [0.25]
    system = laxphillips.build_resonance(params)
    history = laxphillips.resonance_evolve(
        system, laxphillips.theta_unit(system, 1), [0.0, 1.0, 2.0]
    )
    for i in range(3):
        total = history.p_in[i] + history.p_theta[i] + sum(history.p_out[i])
        assert total == pytest.approx(1.0, abs=1e-10)


def test_early_quantum_values():
    k = earlyq.PhysicalConstants.si()
    e1 = earlyq.bohr_level(1, k) / k.e
    assert e1 == pytest.approx(-13.6057, abs=1e-3)
    ratio = earlyq.emission_frequency(3, 2, k) / earlyq.emission_frequency(4, 2, k)
    assert ratio == pytest.approx(20.0 / 27.0, abs=1e-12)
    with pytest.raises(ValueError):
        earlyq.bohr_level(0, k)
