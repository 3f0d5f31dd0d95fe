"""Angular-momentum matrices: ladder construction, Cartesian J=1 basis, products."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .units import DomainError


class Basis(enum.Enum):
    STANDARD_M = "standard_m_basis"
    CARTESIAN_XYZ = "cartesian_xyz"


@dataclass(frozen=True)
class SpinOperators:
    j: Fraction
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    basis: Basis = Basis.STANDARD_M

    @property
    def dim(self) -> int:
        return self.jx.shape[0]

    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.jx, self.jy, self.jz

    def casimir(self) -> np.ndarray:
        return self.jx @ self.jx + self.jy @ self.jy + self.jz @ self.jz


def _as_spin(j) -> Fraction:
    try:
        twice = Fraction(j) * 2
    except (TypeError, ValueError):
        raise DomainError(f"spin must be a number, got {j!r}") from None
    if twice.denominator != 1 or twice < 0:
        raise DomainError(f"2j must be a non-negative integer, got j={j!r}")
    return twice / 2


def spin_operators(j) -> SpinOperators:
    """Spin matrices in the |j, m> basis, m = j, j-1, ..., -j.

    ``j`` may be an int, float or ``Fraction`` (e.g. ``Fraction(5, 2)``).
    """
    j = _as_spin(j)
    jf = float(j)
    m = np.arange(jf, -jf - 1, -1)
    # <m+1|J+|m> sits on the first superdiagonal for decreasing m
    jplus = np.diag(np.sqrt(jf * (jf + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    jminus = jplus.conj().T
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    jz = np.diag(m).astype(complex)
    return SpinOperators(j, jx, jy, jz, Basis.STANDARD_M)


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c] = 1.0
        eps[a, c, b] = -1.0
    return eps


def cartesian_j1_operators() -> SpinOperators:
    """J=1 operators in the {X, Y, Z} basis, (J_a)_{bc} = -i eps_{abc}.

    Each J_a annihilates the basis vector with the same label.
    """
    eps = levi_civita()
    jx, jy, jz = (-1j * eps[a] for a in range(3))
    return SpinOperators(Fraction(1), jx, jy, jz, Basis.CARTESIAN_XYZ)


def tensor_product(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    for name, m in (("a", a), ("b", b)):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"{name} must be a square matrix, got shape {m.shape}")
    return np.kron(a, b)


def embed(op, position: int, dims: list[int]) -> np.ndarray:
    """Promote a single-factor operator into a product space."""
    out = np.eye(1)
    for k, d in enumerate(dims):
        out = tensor_product(out, op if k == position else np.eye(d))
    return out
