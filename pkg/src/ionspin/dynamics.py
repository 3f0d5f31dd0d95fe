"""Time-dependent propagation of the J=1 state under dc + ac electric fields.

Propagation is piecewise constant: each step applies the exact exponential of
the Hamiltonian evaluated at the step midpoint. The 3x3 step Hamiltonians are
real symmetric, so all steps are diagonalized in one batched ``eigh`` call.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .drive import DriveDirection, DriveSpec, ac_hamiltonian_in_eigenbasis, resonant_omega
from .stark import FieldSpec, direction_matrix, numeric_spectrum
from .units import CONSTANTS, MN_GAAS, DomainError

log = logging.getLogger(__name__)

STEPS_PER_PERIOD = 400
MAX_PHASE_PER_STEP = 0.2


class PropagationError(ValueError):
    pass


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class DcRamp:
    """Linear interpolation of the dc field vector from ``start`` to the program's dc field."""

    start: FieldSpec
    ramp_time: float


@dataclass(frozen=True)
class PulseProgram:
    dc: FieldSpec
    drive: DriveSpec
    duration: float
    dt: float | None = None
    gamma_dipole: float = MN_GAAS.gamma_dipole
    ramp: DcRamp | None = None

    def __post_init__(self):
        if self.dt is None:
            object.__setattr__(self, "dt", default_dt(self))
        check_program(self)

    @property
    def n_steps(self) -> int:
        return max(int(round(self.duration / self.dt)), 1)

    def dc_vector(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        end = self.dc.vector
        if self.ramp is None:
            return np.broadcast_to(end, (len(t), 3)).copy()
        frac = np.clip(t / self.ramp.ramp_time, 0.0, 1.0)[:, None]
        return (1 - frac) * self.ramp.start.vector + frac * end

    def field_vector(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        d = self.drive
        carrier = d.e_ac * np.cos(d.omega * t + d.phase)
        return self.dc_vector(t) + carrier[:, None] * d.direction.unit_vector


def _max_splitting(fields: list[FieldSpec], gamma_dipole: float) -> float:
    """Largest level span (eV) over the given dc fields."""
    span = 0.0
    for f in fields:
        if f.magnitude > 0:
            w = np.linalg.eigvalsh(direction_matrix(f.direction))
            span = max(span, (w[-1] - w[0]) * gamma_dipole * f.magnitude / CONSTANTS.elementary_charge)
    return span


def _program_splitting(p: PulseProgram) -> float:
    fields = [p.dc] + ([p.ramp.start] if p.ramp else [])
    return _max_splitting(fields, p.gamma_dipole)


def default_dt(p: PulseProgram) -> float:
    scales = [2 * np.pi / p.drive.omega]
    split = _program_splitting(p)
    if split > 0:
        scales.append(CONSTANTS.hbar / split)
    return min(scales) / STEPS_PER_PERIOD


def check_program(p: PulseProgram) -> None:
    if not p.dt > 0:
        raise PropagationError(f"dt must be > 0, got {p.dt}")
    if p.duration < p.dt:
        raise PropagationError(f"duration {p.duration:.3e} s is shorter than dt {p.dt:.3e} s")
    if p.drive.omega * p.dt >= MAX_PHASE_PER_STEP:
        raise PropagationError(
            f"dt={p.dt:.3e} s does not resolve the drive: omega*dt={p.drive.omega * p.dt:.3f} >= {MAX_PHASE_PER_STEP}"
        )
    phase = _program_splitting(p) * p.dt / CONSTANTS.hbar
    if phase >= MAX_PHASE_PER_STEP:
        raise PropagationError(
            f"dt={p.dt:.3e} s does not resolve the level splitting: splitting*dt/hbar={phase:.3f} >= {MAX_PHASE_PER_STEP}"
        )


@dataclass
class EvolutionTrace:
    times: np.ndarray
    populations: np.ndarray  # shape (n, 3): P_xi1, P_xi2, P_xi3
    states: np.ndarray | None = None  # {X, Y, Z} amplitudes, shape (n, 3)
    meta: dict = field(default_factory=dict)

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)


def step_unitaries(hamiltonians: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i H dt / hbar) for a stack of real symmetric Hamiltonians (eV)."""
    w, v = np.linalg.eigh(hamiltonians)
    phases = np.exp(-1j * w * dt / CONSTANTS.hbar)
    return np.einsum("nij,nj,nkj->nik", v, phases, v)


def chain_product(us: np.ndarray) -> np.ndarray:
    """Ordered product us[n-1] @ ... @ us[0], reduced pairwise."""
    us = np.asarray(us)
    while len(us) > 1:
        if len(us) % 2:
            us = np.concatenate([us, np.eye(us.shape[1])[None].astype(us.dtype)])
        us = us[1::2] @ us[0::2]
    return us[0]


def _step_stack(program: PulseProgram):
    n = program.n_steps
    dt = program.duration / n
    if program.drive.omega * dt >= MAX_PHASE_PER_STEP:
        raise PropagationError("rounded step no longer resolves the drive")
    times = dt * np.arange(n + 1)
    mids = times[:-1] + 0.5 * dt
    scale = program.gamma_dipole / CONSTANTS.elementary_charge
    fvec = program.field_vector(mids)
    ex, ey, ez = fvec.T
    zero = np.zeros_like(ex)
    hs = -scale * np.stack(
        [np.stack([zero, ez, ey], -1), np.stack([ez, zero, ex], -1), np.stack([ey, ex, zero], -1)], 1
    )
    return times, dt, step_unitaries(hs, dt)


def _dc_bases(p: PulseProgram, times: np.ndarray) -> np.ndarray:
    if p.ramp is None:
        basis = numeric_spectrum(p.dc, p.gamma_dipole).eigvecs
        return np.broadcast_to(basis, (len(times), 3, 3))
    out = np.empty((len(times), 3, 3))
    for k, vec in enumerate(p.dc_vector(times)):
        out[k] = numeric_spectrum(FieldSpec.from_vector(vec), p.gamma_dipole).eigvecs
    return out


def propagate(program: PulseProgram, initial, keep_states: bool = True) -> EvolutionTrace:
    """Propagate ``initial`` ({X, Y, Z} amplitudes) through ``program``.

    Populations are recorded at every step in the instantaneous dc eigenbasis.
    """
    psi = np.asarray(initial, dtype=complex)
    if psi.shape != (3,):
        raise DomainError(f"initial state must be a 3-vector, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
        raise DomainError("initial state must be normalized")
    check_program(program)
    times, dt, us = _step_stack(program)
    n = len(us)
    states = np.empty((n + 1, 3), dtype=complex)
    states[0] = psi
    for k in range(n):
        psi = us[k] @ psi
        states[k + 1] = psi

    bases = _dc_bases(program, times)
    amps = np.einsum("nji,nj->ni", bases, states)
    pops = np.abs(amps) ** 2
    return EvolutionTrace(times, pops, states if keep_states else None, {"dt": dt})


def _zero_crossings(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    sign = np.signbit(y)
    idx = np.nonzero(sign[1:] != sign[:-1])[0]
    y0, y1 = y[idx], y[idx + 1]
    return t[idx] + (t[idx + 1] - t[idx]) * y0 / (y0 - y1)


def smooth(y: np.ndarray, window: int) -> np.ndarray:
    """Centered moving average; ``window`` samples, edges use shrinking windows."""
    if window <= 1:
        return y
    kernel = np.ones(window)
    num = np.convolve(y, kernel, mode="same")
    den = np.convolve(np.ones_like(y), kernel, mode="same")
    return num / den


def extract_rabi(trace: EvolutionTrace, smoothing_time: float | None = None) -> float:
    """Rabi frequency Omega (rad/s) measured from the P_xi2 oscillation.

    P_xi2 oscillates as sin^2(Omega t), i.e. at angular frequency 2*Omega.
    Zero crossings of P_xi2 - mean are located by linear interpolation; the
    mean crossing spacing is half a population period. ``smoothing_time``
    (e.g. one drive period) averages out counter-rotating ripple first.
    """
    t = np.asarray(trace.times)
    y = np.asarray(trace.populations)[:, 1]
    if smoothing_time:
        dt = t[1] - t[0]
        y = smooth(y, max(int(round(smoothing_time / dt)), 1))
    y = y - 0.5 * (y.max() + y.min())
    crossings = _zero_crossings(t, y)
    if len(crossings) > 2:
        # drop ripple-induced crossings that sit much closer than the typical spacing
        spacing = np.median(np.diff(crossings))
        keep = [crossings[0]]
        for c in crossings[1:]:
            if c - keep[-1] > 0.25 * spacing:
                keep.append(c)
        crossings = np.asarray(keep)
    # need >= 2 full oscillations = 4 half periods = 5 crossings
    if len(crossings) < 5:
        raise PropagationError(
            f"trace has {len(crossings)} crossings; need >= 2 full P_xi2 oscillations"
        )
    # least-squares slope through crossing index vs time gives the half period
    k = np.arange(len(crossings))
    half_period = np.polyfit(k, crossings, 1)[0]
    return np.pi / (2.0 * half_period)


def _golden_max(f, lo, hi, iters):
    g = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


def _scan_then_refine(f, lo, hi, n_scan, iters):
    grid = np.linspace(lo, hi, n_scan)
    vals = [f(x) for x in grid]
    k = int(np.argmax(vals))
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, n_scan - 1)]
    x, fx = _golden_max(f, a, b, iters)
    return (x, fx) if fx >= vals[k] else (grid[k], vals[k])


@dataclass
class Calibration:
    omega: float
    duration: float
    fidelity: float
    evaluations: int
    history: list = field(default_factory=list)


def final_transfer(dc: FieldSpec, drive: DriveSpec, duration: float, gamma_dipole: float) -> float:
    """P_xi2 after ``duration`` starting in |xi1>."""
    spec = numeric_spectrum(dc, gamma_dipole)
    prog = PulseProgram(dc, drive, duration, gamma_dipole=gamma_dipole)
    _, _, us = _step_stack(prog)
    u = chain_product(us)
    return float(abs(spec.vector(1) @ u @ spec.vector(0)) ** 2)


def calibrate_pi_pulse(
    dc: FieldSpec,
    drive_direction: DriveDirection | str,
    e_ac: float,
    theta: float,
    gamma_dipole: float = MN_GAAS.gamma_dipole,
    omega_seed: float | None = None,
    rounds: int = 3,
    n_scan: int = 21,
    golden_iters: int = 12,
    omega_window: float = 0.5,
) -> Calibration:
    """Maximize the xi1 -> xi2 transfer over drive frequency and pulse length.

    Seeds: the analytic resonance and a quarter of the Rabi cycle 2*pi/Omega
    (P_xi2 = sin^2(Omega t) reaches 1 at t = pi / (2 Omega)). Each round scans
    one coordinate on a coarse grid and refines the best cell by golden
    section. The omega window is relative to the current estimate and
    shrinks each round.
    """
    if not e_ac > 0:
        raise DomainError("e_ac must be > 0")
    drive_direction = DriveDirection(drive_direction)
    omega = omega_seed if omega_seed is not None else resonant_omega(dc.magnitude, theta, gamma_dipole)
    mix = numeric_spectrum(dc, gamma_dipole).theta_mix
    h_ac = ac_hamiltonian_in_eigenbasis(mix, e_ac, gamma_dipole, drive_direction)
    rabi = 0.5 * abs(h_ac[0, 1]) / CONSTANTS.hbar
    if rabi <= 0:
        raise CalibrationError("drive does not couple xi1 and xi2 at this field angle")
    duration = np.pi / (2.0 * rabi)
    evals = 0
    history = []

    def transfer(w, tau):
        nonlocal evals
        evals += 1
        return final_transfer(dc, DriveSpec(e_ac, drive_direction, w), tau, gamma_dipole)

    fid = transfer(omega, duration)
    window = omega_window
    for r in range(rounds):
        omega, fid = _scan_then_refine(
            lambda w: transfer(w, duration), omega * (1 - window), omega * (1 + window), n_scan, golden_iters
        )
        duration, fid = _scan_then_refine(
            lambda tau: transfer(omega, tau), 0.5 * duration, 1.5 * duration, n_scan, golden_iters
        )
        history.append((r, omega, duration, fid))
        log.debug("round %d: omega=%.6e duration=%.6e fidelity=%.8f", r, omega, duration, fid)
        window *= 0.2
    if fid < 0.5:
        raise CalibrationError(
            f"pi-pulse search did not converge: fidelity={fid:.4f} at omega={omega:.4e}, duration={duration:.4e}"
        )
    return Calibration(float(omega), float(duration), float(fid), evals, history)
