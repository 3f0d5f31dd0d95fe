import pytest

from ionspin.units import CONSTANTS, MN_GAAS, DomainError, MaterialParams, stark_energy, zeeman_equivalent


def test_constants_positive_and_frozen():
    for name in ("hbar", "boltzmann", "bohr_magneton", "elementary_charge"):
        assert getattr(CONSTANTS, name) > 0
    with pytest.raises(Exception):
        CONSTANTS.hbar = 1.0


def test_default_material_matches_mn_gaas():
    m = MN_GAAS
    assert (m.alpha, m.beta, m.gamma_dipole, m.g_factor, m.hole_radius) == (0.3, -0.08, 6.4e-30, 2.77, 1.3e-9)
    assert m.alpha > 0 and m.beta < 0


def test_material_rejects_nonpositive_dipole():
    with pytest.raises(DomainError):
        MaterialParams(gamma_dipole=-1.0)


@pytest.mark.parametrize(
    "gamma, field, expected",
    [
        (6.4e-30, 4.0e6, 1.5978263230619554e-04),  # 160 ueV at 40 kV/cm
        (6.4e-30, 1.0e7, 3.994565807654889e-04),
        (6.4e-30, 0.0, 0.0),
    ],
)
def test_stark_energy(gamma, field, expected):
    assert stark_energy(gamma, field) == pytest.approx(expected, rel=1e-12, abs=0)


def test_stark_energy_rounds_to_160_uev():
    assert stark_energy(6.4e-30, 4.0e6) == pytest.approx(160e-6, rel=0.01)


@pytest.mark.parametrize("args", [(-1e-30, 1.0), (1e-30, -1.0)])
def test_stark_energy_domain(args):
    with pytest.raises(DomainError):
        stark_energy(*args)


@pytest.mark.parametrize(
    "g, b, expected",
    [(2.77, 1.0, 1.6033817602716956e-04), (2.77, 0.0, 0.0), (2.0, 1.0, 1.1576763612070005e-04)],
)
def test_zeeman_equivalent(g, b, expected):
    # hand oracle uses CODATA 2018 mu_B; library constants may be a later revision
    assert zeeman_equivalent(g, b) == pytest.approx(expected, rel=1e-8, abs=0)


def test_zeeman_rejects_negative_field():
    with pytest.raises(DomainError):
        zeeman_equivalent(2.0, -1.0)


def test_stark_matches_one_tesla_zeeman():
    assert stark_energy(6.4e-30, 4.0e6) == pytest.approx(zeeman_equivalent(2.77, 1.0), rel=0.01)


@pytest.mark.parametrize("a", [0.5, 2.0, 3.0, 10.0])
def test_stark_energy_linear_in_field(a):
    base = stark_energy(6.4e-30, 4.0e6)
    assert stark_energy(6.4e-30, a * 4.0e6) == pytest.approx(a * base, rel=1e-15)
