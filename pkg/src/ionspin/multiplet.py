"""Core-spin / bound-hole spin Hamiltonian on S(5/2) x l(1) x s(1/2).

The 36-dimensional space is ordered S, l, s with m decreasing inside each
factor. Exact diagonalization identifies the ground multiplet and its total
angular momentum J = S + l + s.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angmom import embed, spin_operators

log = logging.getLogger(__name__)

CORE_SPIN = Fraction(5, 2)
ORBITAL = 1
HOLE_SPIN = Fraction(1, 2)
DIMS = [6, 3, 2]
J_TOL = 1e-6


class MultipletError(RuntimeError):
    pass


@dataclass
class Multiplet:
    energy: float
    multiplicity: int
    j2: float
    j: float | None  # None when <J^2> is not close to any J(J+1)


@dataclass
class MultipletResult:
    energies: list[float]
    multiplets: list[Multiplet]
    ground_energy: float
    ground_degeneracy: int
    ground_J: float | None
    ground_J2: float
    exchange_expectation: float
    ambiguous: bool = False
    warnings: list[str] = field(default_factory=list)


def _factor_ops():
    """Return (S, l, s) component triples embedded in the product space."""
    out = []
    for pos, spin in enumerate((CORE_SPIN, ORBITAL, HOLE_SPIN)):
        ops = spin_operators(spin)
        out.append([embed(c, pos, DIMS) for c in ops.components()])
    return out


def total_j_operators():
    S, l, s = _factor_ops()
    return [S[k] + l[k] + s[k] for k in range(3)]


def build_spin_hamiltonian(alpha: float, beta: float) -> np.ndarray:
    """alpha * S.s + beta * l.s on the ordered S x l x s product space (eV)."""
    S, l, s = _factor_ops()
    h = alpha * sum(S[k] @ s[k] for k in range(3))
    h = h + beta * sum(l[k] @ s[k] for k in range(3))
    return np.asarray(h, dtype=complex)


def exchange_operator() -> np.ndarray:
    S, _, s = _factor_ops()
    return sum(S[k] @ s[k] for k in range(3))


def _assign_j(j2: float) -> float | None:
    # J(J+1) = j2  ->  J = (-1 + sqrt(1 + 4 j2)) / 2, rounded to half-integer
    j = 0.5 * (-1.0 + np.sqrt(1.0 + 4.0 * max(j2, 0.0)))
    j_round = round(2 * j) / 2
    if abs(j2 - j_round * (j_round + 1)) < J_TOL:
        return j_round
    return None


def analyze_multiplet(
    h: np.ndarray, degeneracy_tol: float = 1e-9, strict: bool = True
) -> MultipletResult:
    """Diagonalize ``h`` and cluster its spectrum into degenerate multiplets.

    A cluster boundary whose gap is below ``10 * degeneracy_tol`` is flagged
    as ambiguous. If the ground multiplet has no well-defined J (an accidental
    degeneracy of several J values), ``MultipletError`` is raised; with
    ``strict=False`` the result is returned with ``ground_J = None`` and
    ``ambiguous = True`` instead.
    """
    h = np.asarray(h)
    if not np.allclose(h, h.conj().T, atol=1e-12):
        raise ValueError("Hamiltonian is not Hermitian")
    w, v = np.linalg.eigh(h)
    jops = total_j_operators()
    j2_op = sum(c @ c for c in jops)
    ss_op = exchange_operator()

    clusters: list[list[int]] = [[0]]
    warnings = []
    ambiguous = False
    for i in range(1, len(w)):
        gap = w[i] - w[i - 1]
        if gap <= degeneracy_tol:
            clusters[-1].append(i)
        else:
            if gap < 10 * degeneracy_tol:
                ambiguous = True
                warnings.append(f"gap {gap:.3e} eV near tolerance at E={w[i]:.6g} eV")
            clusters.append([i])

    multiplets = []
    for idx in clusters:
        vecs = v[:, idx]
        j2 = float(np.real(np.trace(vecs.conj().T @ j2_op @ vecs))) / len(idx)
        multiplets.append(Multiplet(float(np.mean(w[idx])), len(idx), j2, _assign_j(j2)))

    ground = multiplets[0]
    g_vecs = v[:, clusters[0]]
    ss = float(np.real(np.trace(g_vecs.conj().T @ ss_op @ g_vecs))) / ground.multiplicity
    if ground.j is None:
        msg = f"ground multiplet is mixed: <J^2>={ground.j2:.9g} matches no J(J+1)"
        if strict:
            raise MultipletError(msg)
        warnings.append(msg)
        ambiguous = True
    elif ground.multiplicity != int(round(2 * ground.j + 1)):
        warnings.append(
            f"ground degeneracy {ground.multiplicity} != 2J+1 for J={ground.j}"
        )
        ambiguous = True
    for msg in warnings:
        log.warning(msg)
    return MultipletResult(
        energies=[float(x) for x in w],
        multiplets=multiplets,
        ground_energy=ground.energy,
        ground_degeneracy=ground.multiplicity,
        ground_J=ground.j,
        ground_J2=ground.j2,
        exchange_expectation=ss,
        ambiguous=ambiguous,
        warnings=warnings,
    )


def projection_estimate(alpha: float, beta: float, J: float = 1.0, j_hole: float = 1.5) -> float:
    """First-order ground energy with the hole in a fixed j_hole = l + s state.

    Uses S.s -> (1/3) S.j_h inside the j_hole = 3/2 manifold and
    l.s = [j_h(j_h+1) - l(l+1) - s(s+1)] / 2.
    """
    S = float(CORE_SPIN)
    l, s = 1.0, 0.5
    s_j = alpha / 3.0 * (J * (J + 1) - S * (S + 1) - j_hole * (j_hole + 1)) / 2.0
    ls = beta * (j_hole * (j_hole + 1) - l * (l + 1) - s * (s + 1)) / 2.0
    return s_j + ls
