"""Physical constants, unit helpers and the Mn:GaAs material parameters.

Internal units: energies in eV, times in s, electric fields in V/m.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy import constants as _sc


class DomainError(ValueError):
    """An argument lies outside the physical domain of an operation."""


@dataclass(frozen=True)
class Constants:
    hbar: float = _sc.hbar / _sc.e  # eV s
    boltzmann: float = _sc.k / _sc.e  # eV / K
    bohr_magneton: float = _sc.physical_constants["Bohr magneton in eV/T"][0]
    elementary_charge: float = _sc.e  # C


CONSTANTS = Constants()


@dataclass(frozen=True)
class MaterialParams:
    """Effective parameters of a Mn acceptor (core spin + bound hole) in GaAs.

    Attributes
    ----------
    alpha : float
        Core-spin/hole-spin exchange coupling (eV).
    beta : float
        Hole spin-orbit coupling (eV).
    gamma_dipole : float
        Linear Stark coupling of the J=1 multiplet (C m).
    g_factor : float
        Measured g-factor of the J=1 complex.
    hole_radius : float
        Bound-hole wave function radius (m).
    """

    alpha: float = 0.300
    beta: float = -0.080
    gamma_dipole: float = 6.4e-30
    g_factor: float = 2.77
    hole_radius: float = 1.3e-9

    def __post_init__(self):
        for name in ("gamma_dipole", "g_factor", "hole_radius"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)!r}")


MN_GAAS = MaterialParams()


def stark_energy(gamma_dipole: float, field_magnitude: float) -> float:
    """Linear Stark energy scale gamma*E in eV."""
    if gamma_dipole < 0 or field_magnitude < 0:
        raise DomainError("gamma_dipole and field_magnitude must be >= 0")
    return gamma_dipole * field_magnitude / CONSTANTS.elementary_charge


def zeeman_equivalent(g_factor: float, b_field: float) -> float:
    """Zeeman energy g * mu_B * B in eV."""
    if b_field < 0:
        raise DomainError("b_field must be >= 0")
    if g_factor < 0:
        raise DomainError("g_factor must be >= 0")
    return g_factor * CONSTANTS.bohr_magneton * b_field
