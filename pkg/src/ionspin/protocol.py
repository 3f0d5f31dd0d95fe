"""Initialize -> manipulate -> detect sequence for the xi1/xi2 pseudospin.

Initialization is Boltzmann equilibrium at the operating dc field. Readout
uses the on-axis tip site, where only the |X+Y> component contributes to the
LDOS; a fixed fraction of the LDOS is spin independent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .drive import DriveSpec
from .dynamics import PulseProgram, propagate
from .stark import Branch, FieldSpec, StarkSpectrum, ground_state_branch, numeric_spectrum, plane_angle
from .units import CONSTANTS, MN_GAAS, DomainError


class ProtocolError(RuntimeError):
    pass


class TipSite(enum.Enum):
    ON_AXIS_NODAL_PLANE = "on_axis_nodal_plane"


@dataclass(frozen=True)
class ReadoutModel:
    background_fraction: float = 0.1
    tip_site: TipSite = TipSite.ON_AXIS_NODAL_PLANE

    def __post_init__(self):
        if not 0 <= self.background_fraction < 1:
            raise DomainError(f"background_fraction must be in [0, 1), got {self.background_fraction}")

    @property
    def visibility(self) -> float:
        return 1.0 - self.background_fraction


@dataclass
class ThermalState:
    occupations: np.ndarray
    temperature: float
    splitting_ev: np.ndarray  # level energies relative to xi1


def boltzmann(energies_ev, temperature: float) -> np.ndarray:
    if not temperature > 0:
        raise DomainError(f"temperature must be > 0, got {temperature}")
    e = np.asarray(energies_ev, dtype=float)
    x = -(e - e.min()) / (CONSTANTS.boltzmann * temperature)
    w = np.exp(x)
    return w / w.sum()


def thermal_occupations(spectrum: StarkSpectrum | None, temperature: float) -> ThermalState:
    """Equilibrium occupations of (xi1, xi2, xi3); ``None`` means zero field."""
    energies = np.zeros(3) if spectrum is None else np.asarray(spectrum.energies_ev)
    occ = boltzmann(energies, temperature)
    return ThermalState(occ, temperature, energies - energies[0])


def ldos_weights(theta_mix: float) -> tuple[float, float]:
    """Spin-dependent LDOS factors (sin^2 T, cos^2 T) of xi1 and xi2 at the tip."""
    return float(np.sin(theta_mix) ** 2), float(np.cos(theta_mix) ** 2)


def detection_signal(occupations, theta_mix: float, model: ReadoutModel = ReadoutModel()) -> float:
    """Normalized tunneling signal; xi3 carries no weight at the on-axis site."""
    p = np.asarray(occupations, dtype=float)
    if p.shape != (3,) or np.any(p < -1e-12) or abs(p.sum() - 1) > 1e-9:
        raise DomainError(f"invalid occupations {occupations!r}")
    w1, w2 = ldos_weights(theta_mix)
    bg = model.background_fraction
    return float(bg + (1 - bg) * (p[0] * w1 + p[1] * w2))


def pure_state_signals(theta_mix: float, model: ReadoutModel = ReadoutModel()) -> tuple[float, float]:
    return (
        detection_signal((1.0, 0.0, 0.0), theta_mix, model),
        detection_signal((0.0, 1.0, 0.0), theta_mix, model),
    )


def visibility(theta_mix: float, model: ReadoutModel = ReadoutModel()) -> float:
    s1, s2 = pure_state_signals(theta_mix, model)
    return abs(s1 - s2)


@dataclass
class ProtocolRecord:
    theta: float
    init_state: ThermalState
    pulse_duration: float
    drive: DriveSpec
    final_occupations: np.ndarray
    signal: float
    threshold: float
    margin: float
    inferred_pseudospin: str
    theta_mix: float
    traces: list = field(default_factory=list)


def run_protocol(
    dc: FieldSpec,
    drive: DriveSpec,
    pulse_duration: float,
    temperature: float,
    model: ReadoutModel = ReadoutModel(),
    gamma_dipole: float = MN_GAAS.gamma_dipole,
    dt: float | None = None,
    keep_traces: bool = False,
) -> ProtocolRecord:
    """Thermal initialization, a rectangular drive pulse, then readout.

    The thermal mixture is propagated level by level, so the final
    occupations are the exact incoherent average. The pseudospin decision
    thresholds the signal halfway between the pure xi1 and xi2 signals.
    """
    if not dc.in_cleavage_plane or dc.magnitude <= 0:
        raise ProtocolError("dc field must be nonzero and lie in the (1-10) plane")
    theta = plane_angle(dc)
    branch = ground_state_branch(theta)
    if branch is not Branch.XI1:
        raise ProtocolError(
            f"theta={theta:.6g} rad puts {branch.value} at the bottom; need "
            f"|theta| < pi - arctan(sqrt 2) = {np.pi - np.arctan(np.sqrt(2)):.6f} rad"
        )
    if pulse_duration < 0:
        raise DomainError("pulse_duration must be >= 0")
    spectrum = numeric_spectrum(dc, gamma_dipole)
    init = thermal_occupations(spectrum, temperature)

    traces = []
    if pulse_duration == 0:
        final = init.occupations.copy()
    else:
        prog = PulseProgram(dc, drive, pulse_duration, dt=dt, gamma_dipole=gamma_dipole)
        final = np.zeros(3)
        for k, p in enumerate(init.occupations):
            tr = propagate(prog, spectrum.vector(k), keep_states=False)
            final += p * tr.populations[-1]
            if keep_traces:
                traces.append((p, tr))
        final /= final.sum()

    mix = spectrum.theta_mix
    signal = detection_signal(final, mix, model)
    s1, s2 = pure_state_signals(mix, model)
    threshold = 0.5 * (s1 + s2)
    if abs(s1 - s2) < 1e-12:
        inferred = "undetermined"
    else:
        inferred = "xi1" if (signal - threshold) * (s1 - s2) > 0 else "xi2"
    return ProtocolRecord(
        theta=theta,
        init_state=init,
        pulse_duration=pulse_duration,
        drive=drive,
        final_occupations=final,
        signal=signal,
        threshold=threshold,
        margin=abs(signal - threshold),
        inferred_pseudospin=inferred,
        theta_mix=mix,
        traces=traces,
    )
