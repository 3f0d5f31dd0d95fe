"""ac electric drive: coupling matrix in the dc eigenbasis and the Rabi formula."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .stark import SQRT2, U_XY, W_XY, Z_HAT, analytic_spectrum, direction_matrix
from .units import CONSTANTS, DomainError, stark_energy


class DriveDirection(enum.Enum):
    ALONG_110 = "along_110"
    ALONG_001 = "along_001"

    @property
    def unit_vector(self) -> np.ndarray:
        if self is DriveDirection.ALONG_110:
            return np.array([1.0, 1.0, 0.0]) / SQRT2
        return np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class DriveSpec:
    e_ac: float
    direction: DriveDirection
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        if self.e_ac < 0:
            raise DomainError(f"e_ac must be >= 0, got {self.e_ac}")
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        object.__setattr__(self, "direction", DriveDirection(self.direction))


def mixing_basis(theta_mix: float) -> np.ndarray:
    """Columns |xi1>, |xi2>, |xi3> for an in-plane dc field with mixing angle ``theta_mix``."""
    s, c = np.sin(theta_mix), np.cos(theta_mix)
    return np.column_stack([s * U_XY + c * Z_HAT, -c * U_XY + s * Z_HAT, W_XY])


def ac_hamiltonian_in_eigenbasis(
    theta_mix: float,
    e_ac: float,
    gamma_dipole: float,
    direction: DriveDirection | str = DriveDirection.ALONG_110,
) -> np.ndarray:
    """Amplitude (eV) of the cos(wt) drive term in the {xi1, xi2, xi3} basis.

    For [110] this is gamma*E_ac * [[-sin2T, cos2T, 0], [cos2T, sin2T, 0], [0, 0, 0]].
    For [001] the xi3 couplings vanish as well, but xi3 keeps a diagonal shift.
    """
    direction = DriveDirection(direction)
    scale = stark_energy(gamma_dipole, e_ac)
    if direction is DriveDirection.ALONG_110:
        s2, c2 = np.sin(2 * theta_mix), np.cos(2 * theta_mix)
        return scale * np.array([[-s2, c2, 0.0], [c2, s2, 0.0], [0.0, 0.0, 0.0]])
    v = mixing_basis(theta_mix)
    h = v.T @ direction_matrix(direction.unit_vector) @ v
    h[np.abs(h) < 1e-15] = 0.0
    return scale * h


def level_splitting(theta: float, corrected: bool = True) -> float:
    """xi2 - xi1 in units of gamma*E_dc.

    ``corrected=False`` returns sqrt(4 - cos^2 theta), the detuning reference
    as it is sometimes printed; it does not match the level splitting.
    """
    c = np.cos(theta)
    return float(np.sqrt(4.0 - (3.0 if corrected else 1.0) * c**2))


def resonant_omega(e_dc: float, theta: float, gamma_dipole: float, corrected: bool = True) -> float:
    """Drive angular frequency (rad/s) resonant with the xi1 <-> xi2 transition."""
    return stark_energy(gamma_dipole, e_dc) * level_splitting(theta, corrected) / CONSTANTS.hbar


def rabi_frequency(
    e_ac: float,
    e_dc: float,
    theta: float,
    omega: float,
    gamma_dipole: float,
    corrected: bool = True,
    direction: DriveDirection | str = DriveDirection.ALONG_110,
) -> float:
    """Rotating-wave Rabi frequency Omega (rad/s).

    hbar*Omega = 1/2 sqrt((gamma E_ac cos2T)^2 + (hbar*w - gamma E_dc * split)^2).
    The xi2 population then follows A * sin^2(Omega t), so a full Rabi cycle
    of the state takes 2*pi/Omega while the population period is pi/Omega.
    For a [001] drive the coupling term is the corresponding xi1-xi2 matrix
    element, gamma E_ac sin2T / 2.
    """
    if not e_dc > 0:
        raise DomainError("e_dc must be > 0")
    coupling = _coupling(e_ac, theta, gamma_dipole, direction)
    detuning = CONSTANTS.hbar * omega - stark_energy(gamma_dipole, e_dc) * level_splitting(
        theta, corrected
    )
    return 0.5 * float(np.hypot(coupling, detuning)) / CONSTANTS.hbar


def _coupling(e_ac, theta, gamma_dipole, direction) -> float:
    """xi1-xi2 element (eV) of the drive amplitude matrix."""
    _, _, _, mix = analytic_spectrum(theta)
    return float(ac_hamiltonian_in_eigenbasis(mix, e_ac, gamma_dipole, direction)[0, 1])


def resonant_rabi_frequency(
    e_ac: float,
    theta: float,
    gamma_dipole: float,
    direction: DriveDirection | str = DriveDirection.ALONG_110,
) -> float:
    return 0.5 * abs(_coupling(e_ac, theta, gamma_dipole, direction)) / CONSTANTS.hbar


def coupling_curve(theta):
    """(cos 2T, sin 2T) versus dc field angle, vectorized."""
    _, _, _, mix = analytic_spectrum(theta)
    return np.cos(2 * mix), np.sin(2 * mix)
