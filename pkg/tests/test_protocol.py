import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ionspin.drive import DriveDirection, DriveSpec, resonant_omega, resonant_rabi_frequency
from ionspin.protocol import (
    ProtocolError,
    ReadoutModel,
    boltzmann,
    detection_signal,
    ldos_weights,
    pure_state_signals,
    run_protocol,
    thermal_occupations,
    visibility,
)
from ionspin.stark import GROUND_CROSSING, FieldSpec, field_in_cleavage_plane, numeric_spectrum
from ionspin.units import DomainError

GAMMA = 6.4e-30
E_DC = 1.0e7
E_AC = 2.5e6


def default_drive(theta=0.0):
    return DriveSpec(E_AC, DriveDirection.ALONG_110, resonant_omega(E_DC, theta, GAMMA))


def test_thermal_purity_at_default_point():
    spec = numeric_spectrum(field_in_cleavage_plane(0.0, E_DC), GAMMA)
    occ = thermal_occupations(spec, 0.5).occupations
    # exp(-gamma E / k T) with gamma E = 0.39946 meV, k T = 0.043087 meV
    assert occ[1] == pytest.approx(9.410528e-5, rel=1e-5)
    assert occ[1] < 1e-4
    assert occ.sum() == pytest.approx(1.0, abs=1e-12)


def test_high_temperature_limit():
    spec = numeric_spectrum(field_in_cleavage_plane(0.0, E_DC), GAMMA)
    occ = thermal_occupations(spec, 1e9).occupations
    assert np.allclose(occ, 1 / 3, atol=1e-6)


@pytest.mark.parametrize("temperature", [0.01, 0.5, 300.0])
def test_zero_field_is_uniform(temperature):
    assert np.allclose(thermal_occupations(None, temperature).occupations, 1 / 3, atol=1e-15)


def test_boltzmann_rejects_bad_temperature():
    with pytest.raises(DomainError):
        boltzmann([0.0, 1.0], 0.0)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-1e-2, 1e-2, allow_nan=False), min_size=1, max_size=6),
    st.floats(1e-3, 1e4),
)
def test_boltzmann_is_normalized(energies, temperature):
    p = boltzmann(energies, temperature)
    assert abs(p.sum() - 1) < 1e-12
    assert np.all((p >= 0) & (p <= 1))


def test_population_ratio_drops_with_field():
    ratios = []
    for e in [2e6, 5e6, 1e7, 2e7]:
        occ = thermal_occupations(numeric_spectrum(field_in_cleavage_plane(0.0, e), GAMMA), 0.5).occupations
        ratios.append(occ[1] / occ[0])
    assert np.all(np.diff(ratios) < 0)


def test_ldos_weights():
    assert ldos_weights(np.pi / 2) == pytest.approx((1.0, 0.0), abs=1e-15)
    assert ldos_weights(np.pi / 4) == pytest.approx((0.5, 0.5))
    for mix in np.linspace(0, np.pi, 37):
        assert sum(ldos_weights(mix)) == pytest.approx(1.0, abs=1e-15)


def test_pure_signals_and_visibility():
    s1, s2 = pure_state_signals(np.pi / 2)
    assert s1 == pytest.approx(1.0)
    assert s2 == pytest.approx(0.1)
    assert visibility(np.pi / 2) == pytest.approx(0.9)
    assert ReadoutModel().visibility == pytest.approx(0.9)


@pytest.mark.parametrize("mix", np.linspace(0, np.pi, 19))
def test_contrast_without_background(mix):
    assert visibility(mix, ReadoutModel(0.0)) == pytest.approx(abs(np.cos(2 * mix)), abs=1e-14)


@pytest.mark.parametrize("mix", [0.0, 0.4, 1.3, 2.9])
def test_uniform_occupations_signal(mix):
    bg = 0.1
    spin_part = detection_signal([1 / 3] * 3, mix, ReadoutModel(bg)) - bg
    assert spin_part == pytest.approx((1 - bg) / 3)


def test_signal_is_affine(rng):
    for _ in range(20):
        a, b = rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(3))
        lam = rng.uniform()
        mix = rng.uniform(0, np.pi)
        lhs = detection_signal(lam * a + (1 - lam) * b, mix)
        rhs = lam * detection_signal(a, mix) + (1 - lam) * detection_signal(b, mix)
        assert lhs == pytest.approx(rhs, abs=1e-14)


def test_degenerate_permutation_leaves_signal_unchanged():
    mix = np.pi / 4  # equal weights for xi1 and xi2
    assert detection_signal([0.7, 0.2, 0.1], mix) == pytest.approx(detection_signal([0.2, 0.7, 0.1], mix))


def test_readout_validation():
    with pytest.raises(DomainError):
        ReadoutModel(1.0)
    with pytest.raises(DomainError):
        detection_signal([0.5, 0.6, 0.0], 0.3)


def test_zero_pulse_reads_xi1():
    rec = run_protocol(field_in_cleavage_plane(0.0, E_DC), default_drive(), 0.0, 0.5)
    assert rec.inferred_pseudospin == "xi1"
    assert rec.signal == pytest.approx(1.0, abs=1e-3)
    assert rec.margin >= 0.3


def test_pi_pulse_reads_xi2():
    tau = np.pi / (2 * resonant_rabi_frequency(E_AC, 0.0, GAMMA))
    rec = run_protocol(field_in_cleavage_plane(0.0, E_DC), default_drive(), tau, 0.5)
    assert rec.inferred_pseudospin == "xi2"
    assert rec.signal == pytest.approx(0.1, abs=0.02)
    assert rec.margin >= 0.3
    assert rec.final_occupations.sum() == pytest.approx(1.0, abs=1e-12)


def test_half_pi_pulse_gives_midpoint_signal():
    tau = np.pi / (4 * resonant_rabi_frequency(E_AC, 0.0, GAMMA))
    rec = run_protocol(field_in_cleavage_plane(0.0, E_DC), default_drive(), tau, 0.5)
    assert rec.signal == pytest.approx(0.55, abs=0.03)


def test_traces_kept_on_request():
    tau = 10e-12
    rec = run_protocol(field_in_cleavage_plane(0.0, E_DC), default_drive(), tau, 0.5, keep_traces=True)
    assert len(rec.traces) == 3
    weights = [w for w, _ in rec.traces]
    assert sum(weights) == pytest.approx(1.0)


def test_rejects_angle_beyond_ground_crossing():
    with pytest.raises(ProtocolError):
        run_protocol(field_in_cleavage_plane(GROUND_CROSSING + 0.05, E_DC), default_drive(), 0.0, 0.5)


def test_rejects_out_of_plane_field():
    with pytest.raises(ProtocolError):
        run_protocol(FieldSpec(E_DC, (1.0, 0.0, 0.0)), default_drive(), 0.0, 0.5)
