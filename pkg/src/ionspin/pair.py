"""Exchange splitting of two ions versus separation, and the gate time it implies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .units import CONSTANTS, DomainError


@dataclass(frozen=True)
class PairModel:
    """Exponential overlap model anchored at a reference separation.

    The defaults put 0.1 eV at 1.2 nm with a 1.3 nm decay length (the bound
    hole radius).
    """

    j0: float = 0.1
    d0: float = 1.2e-9
    decay_length: float = 1.3e-9

    def __post_init__(self):
        for name in ("j0", "d0", "decay_length"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0")


def exchange_coupling(d, model: PairModel = PairModel()):
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise DomainError("separation must be > 0")
    j = model.j0 * np.exp(-(d - model.d0) / model.decay_length)
    return float(j) if j.ndim == 0 else j


def entangling_time(j):
    """sqrt(SWAP) time pi*hbar / (2 J) for an exchange splitting J in eV."""
    j = np.asarray(j, dtype=float)
    if np.any(j <= 0):
        raise DomainError("exchange splitting must be > 0")
    t = np.pi * CONSTANTS.hbar / (2.0 * j)
    return float(t) if t.ndim == 0 else t
