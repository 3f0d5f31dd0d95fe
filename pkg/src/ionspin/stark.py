"""Linear Stark Hamiltonian of the J=1 multiplet and its eigenstructure.

Matrices live in the Cartesian {X, Y, Z} basis (J_a|a> = 0). In-plane fields
lie in the (1-10) plane, at angle ``theta`` from [001]; for those fields
(|X> - |Y>)/sqrt(2) is always an eigenvector (the xi3 branch) and the other
two eigenvectors are parametrized by a single mixing angle ``theta_mix``:

    |xi1> = (sin T / sqrt2, sin T / sqrt2, cos T)
    |xi2> = (-cos T / sqrt2, -cos T / sqrt2, sin T)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .angmom import SpinOperators, cartesian_j1_operators
from .units import CONSTANTS, DomainError, stark_energy

SQRT2 = np.sqrt(2.0)
U_XY = np.array([1.0, 1.0, 0.0]) / SQRT2  # |X+Y>
W_XY = np.array([1.0, -1.0, 0.0]) / SQRT2  # |X-Y>, the xi3 eigenvector
Z_HAT = np.array([0.0, 0.0, 1.0])

# theta at which xi1 and xi3 cross: pi - arctan(sqrt 2)
GROUND_CROSSING = np.pi - np.arctan(np.sqrt(2.0))
THETA_111 = np.arccos(1.0 / np.sqrt(3.0))
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class FieldSpec:
    magnitude: float
    direction: tuple[float, float, float]

    def __post_init__(self):
        if self.magnitude < 0:
            raise DomainError(f"field magnitude must be >= 0, got {self.magnitude}")
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (3,) or abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise DomainError(f"direction must be a unit 3-vector, got {self.direction}")
        object.__setattr__(self, "direction", tuple(float(x) for x in d))

    @property
    def vector(self) -> np.ndarray:
        """Field vector in V/m."""
        return self.magnitude * np.asarray(self.direction)

    @property
    def in_cleavage_plane(self) -> bool:
        return abs(self.direction[0] - self.direction[1]) < 1e-12

    @classmethod
    def from_vector(cls, vec) -> "FieldSpec":
        vec = np.asarray(vec, dtype=float)
        mag = float(np.linalg.norm(vec))
        if mag == 0:
            return cls(0.0, (0.0, 0.0, 1.0))
        return cls(mag, tuple(vec / mag))


def wrap_angle(theta):
    """Map angles into (-pi, pi]."""
    t = np.mod(np.asarray(theta, dtype=float) + np.pi, 2 * np.pi) - np.pi
    t = np.where(t == -np.pi, np.pi, t)
    return t if np.ndim(t) else float(t)


def field_in_cleavage_plane(theta: float, magnitude: float) -> FieldSpec:
    s, c = np.sin(theta), np.cos(theta)
    d = np.array([s / SQRT2, s / SQRT2, c])
    return FieldSpec(magnitude, tuple(d / np.linalg.norm(d)))


def plane_angle(field: FieldSpec) -> float:
    """Angle from [001] of an in-plane field, in (-pi, pi]."""
    ex, _, ez = field.direction
    return wrap_angle(np.arctan2(SQRT2 * ex, ez))


def direction_matrix(direction) -> np.ndarray:
    """Dimensionless matrix M(e) with H = gamma*E * M(e)."""
    ex, ey, ez = direction
    return -np.array([[0.0, ez, ey], [ez, 0.0, ex], [ey, ex, 0.0]])


def stark_hamiltonian(field: FieldSpec, gamma_dipole: float) -> np.ndarray:
    """Real symmetric 3x3 Stark Hamiltonian (eV) in the {X, Y, Z} basis."""
    return stark_energy(gamma_dipole, field.magnitude) * direction_matrix(field.direction)


def stark_hamiltonian_from_operators(
    field: FieldSpec, gamma_dipole: float, ops: SpinOperators | None = None
) -> np.ndarray:
    """gamma * [E_x {J_y, J_z} + E_y {J_z, J_x} + E_z {J_x, J_y}] in eV."""
    if ops is None:
        ops = cartesian_j1_operators()
    if ops.dim != 3:
        raise DomainError(f"J=1 operators required, got dimension {ops.dim}")
    jx, jy, jz = ops.components()
    ex, ey, ez = field.vector
    h = ex * (jy @ jz + jz @ jy) + ey * (jz @ jx + jx @ jz) + ez * (jx @ jy + jy @ jx)
    return gamma_dipole * h / CONSTANTS.elementary_charge


def analytic_spectrum(theta):
    """Closed-form (xi1, xi2, xi3, theta_mix) for an in-plane field at ``theta``.

    Energies are in units of gamma*E. ``theta_mix`` lies in [0, pi] and is
    continuous on (-pi, pi], with theta_mix(0) = pi/2.
    """
    t = wrap_angle(theta)
    c = np.cos(t)
    root = np.sqrt(4.0 - 3.0 * c**2)
    xi1 = (-c - root) / 2.0
    xi2 = (-c + root) / 2.0
    xi3 = c
    # 2x2 block in (|X+Y>, |Z>) is [[-c, -s], [-s, 0]]; its xi1 eigenvector is
    # proportional to (-xi1, s) with -xi1 >= 0.
    mix = np.arctan2(-xi1, np.sin(t))
    if np.ndim(t) == 0:
        return float(xi1), float(xi2), float(xi3), float(mix)
    return xi1, xi2, xi3, mix


class Branch(enum.Enum):
    XI1 = "xi1"
    XI3 = "xi3"
    DEGENERATE = "degenerate"


def ground_state_branch(theta: float, tol: float = 1e-12) -> Branch:
    xi1, _, xi3, _ = analytic_spectrum(theta)
    if abs(xi1 - xi3) <= tol:
        return Branch.DEGENERATE
    return Branch.XI1 if xi1 < xi3 else Branch.XI3


@dataclass
class StarkSpectrum:
    xi: np.ndarray  # (xi1, xi2, xi3), units of gamma*E
    energies_ev: np.ndarray
    eigvecs: np.ndarray  # columns are |xi1>, |xi2>, |xi3> in {X, Y, Z}
    theta_mix: float
    eta: float
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    def vector(self, i: int) -> np.ndarray:
        return self.eigvecs[:, i]


def _fix_plane_vectors(m, vals, vecs):
    """Label eigenpairs for an in-plane field and apply the sign conventions."""
    overlap = np.abs(W_XY @ vecs)
    k3 = int(np.argmax(overlap))
    others = [i for i in range(3) if i != k3]
    degenerate = any(abs(vals[k3] - vals[i]) < DEGENERACY_TOL for i in others)
    if degenerate:
        # w is an exact eigenvector; diagonalize its complement separately
        v3 = W_XY.copy()
        q = np.column_stack([U_XY, Z_HAT])
        block = q.T @ m @ q
        bvals, bvecs = np.linalg.eigh(block)
        lo_hi = q @ bvecs
        v1, v2 = lo_hi[:, 0], lo_hi[:, 1]
        x1, x2 = bvals
        x3 = float(W_XY @ m @ W_XY)
    else:
        lo, hi = sorted(others, key=lambda i: vals[i])
        v1, v2, v3 = vecs[:, lo], vecs[:, hi], vecs[:, k3]
        x1, x2, x3 = vals[lo], vals[hi], vals[k3]

    a, b = U_XY @ v1, Z_HAT @ v1
    if abs(a) < 1e-12:
        a = 0.0
        if b < 0:
            v1 = -v1
            b = -b
    elif a < 0:
        v1, a, b = -v1, -a, -b
    mix = float(np.arctan2(a, b))
    template2 = -np.cos(mix) * U_XY + np.sin(mix) * Z_HAT
    if template2 @ v2 < 0:
        v2 = -v2
    if v3 @ W_XY < 0:
        v3 = -v3
    return np.array([x1, x2, x3]), np.column_stack([v1, v2, v3]), mix, degenerate


def numeric_spectrum(field: FieldSpec, gamma_dipole: float) -> StarkSpectrum:
    """Diagonalize the Stark matrix and label the branches.

    For fields in the (1-10) plane the xi3 branch is the eigenvector along
    (1, -1, 0); the remaining pair is sorted as xi1 < xi2. Out-of-plane fields
    are labeled in ascending order and have ``theta_mix = nan``.
    """
    if field.magnitude <= 0:
        raise DomainError("numeric_spectrum needs a nonzero field to label eigenvectors")
    m = direction_matrix(field.direction)
    vals, vecs = np.linalg.eigh(m)
    notes = []
    if field.in_cleavage_plane:
        xi, v, mix, degenerate = _fix_plane_vectors(m, vals, vecs)
        if degenerate:
            notes.append("degenerate xi3 crossing; labeled by continuity")
    else:
        xi, v, mix, degenerate = vals, vecs, float("nan"), False
        if np.min(np.diff(vals)) < DEGENERACY_TOL:
            degenerate = True
            notes.append("degenerate pair in out-of-plane field")
    scale = stark_energy(gamma_dipole, field.magnitude)
    eta = float(np.prod(field.direction))
    return StarkSpectrum(np.asarray(xi), scale * np.asarray(xi), v, mix, eta, degenerate, notes)
