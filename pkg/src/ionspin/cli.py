"""Command-line front end.

Every subcommand writes CSV (one ``#`` comment line, a header row, data rows)
to ``--out`` or stdout. Floats are written with 12 significant digits so that
identical configs give byte-identical files. Failures print a single line
``ERROR <CODE> <message>`` on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig, parse_config
from .drive import (
    DriveDirection,
    DriveSpec,
    coupling_curve,
    rabi_frequency,
    resonant_omega,
    resonant_rabi_frequency,
)
from .dynamics import CalibrationError, PropagationError, PulseProgram, calibrate_pi_pulse, propagate
from .multiplet import MultipletError, analyze_multiplet, build_spin_hamiltonian
from .pair import PairModel, entangling_time, exchange_coupling
from .protocol import ProtocolError, ReadoutModel, ldos_weights, run_protocol
from .stark import analytic_spectrum, field_in_cleavage_plane, numeric_spectrum
from .units import DomainError

log = logging.getLogger("ionspin")

SUBCOMMANDS = (
    "multiplet",
    "spectrum-sweep",
    "coupling-sweep",
    "rabi",
    "calibrate",
    "protocol",
    "ldos-sweep",
    "pair",
)

EXIT_CODES = {
    "CONFIG_ERROR": 2,
    "DOMAIN_ERROR": 3,
    "PROTOCOL_PRECONDITION": 4,
    "CALIBRATION_FAILED": 5,
    "PROPAGATION_ERROR": 6,
    "MULTIPLET_MIXED": 7,
    "IO_ERROR": 8,
}

UNITS_NOTE = "angles in radians, energies in eV, times in s, fields in V/m"


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    v = float(x)
    if v == 0.0:
        v = 0.0  # drop the sign of -0.0
    return f"{v:.12g}"


def write_csv(out, title: str, header, rows) -> None:
    out.write(f"# ionspin {title}; {UNITS_NOTE}\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(x) for x in row) + "\n")


def _theta_grid(cfg: RunConfig) -> np.ndarray:
    sc = cfg.scenario
    return np.deg2rad(np.linspace(sc.theta_min_deg, sc.theta_max_deg, cfg.grid_points))


def _drive(cfg: RunConfig) -> DriveSpec:
    sc = cfg.scenario
    theta = np.deg2rad(sc.theta_deg)
    gamma = cfg.material.gamma_dipole
    omega = sc.omega
    if omega is None:
        omega = resonant_omega(sc.e_dc, theta, gamma, corrected=sc.detuning_formula == "corrected")
    return DriveSpec(sc.e_ac, DriveDirection(sc.drive_direction), omega, np.deg2rad(sc.drive_phase_deg))


def cmd_multiplet(cfg: RunConfig, out) -> None:
    m = cfg.material
    res = analyze_multiplet(build_spin_hamiltonian(m.alpha, m.beta), cfg.scenario.degeneracy_tol, strict=False)
    rows = [(mp.energy, mp.multiplicity, "mixed" if mp.j is None else fmt(mp.j)) for mp in res.multiplets]
    write_csv(out, "multiplet", ["energy_eV", "multiplicity", "J_assigned"], rows)
    out.write(
        f"# ground: energy_eV={fmt(res.ground_energy)} degeneracy={res.ground_degeneracy} "
        f"J2={fmt(res.ground_J2)} S_dot_s={fmt(res.exchange_expectation)} ambiguous={res.ambiguous}\n"
    )
    if res.ground_J is None:
        raise MultipletError(res.warnings[-1])


def cmd_spectrum_sweep(cfg: RunConfig, out) -> None:
    theta = _theta_grid(cfg)
    xi1, xi2, xi3, mix = analytic_spectrum(theta)
    eta = np.sin(theta) ** 2 * np.cos(theta) / 2.0
    # each row is checked against direct diagonalization
    e = cfg.scenario.e_dc
    for k, t in enumerate(theta):
        sp = numeric_spectrum(field_in_cleavage_plane(t, e), cfg.material.gamma_dipole)
        if np.max(np.abs(sp.xi - (xi1[k], xi2[k], xi3[k]))) > 1e-10:
            raise DomainError(f"numeric and closed-form spectra disagree at theta={t}")
    rows = zip(theta, xi1, xi2, xi3, mix, eta)
    write_csv(out, "spectrum-sweep", ["theta_rad", "xi1", "xi2", "xi3", "Theta_rad", "eta"], rows)


def cmd_coupling_sweep(cfg: RunConfig, out) -> None:
    theta = _theta_grid(cfg)
    c2, s2 = coupling_curve(theta)
    gamma = cfg.material.gamma_dipole
    rabi_hz = [resonant_rabi_frequency(cfg.scenario.e_ac, t, gamma) / (2 * np.pi) for t in theta]
    write_csv(out, "coupling-sweep", ["theta_rad", "cos2Theta", "sin2Theta", "resonant_rabi_hz"], zip(theta, c2, s2, rabi_hz))


def cmd_rabi(cfg: RunConfig, out) -> None:
    sc = cfg.scenario
    gamma = cfg.material.gamma_dipole
    theta = np.deg2rad(sc.theta_deg)
    dc = field_in_cleavage_plane(theta, sc.e_dc)
    drive = _drive(cfg)
    prog = PulseProgram(dc, drive, sc.duration, dt=sc.dt, gamma_dipole=gamma)
    trace = propagate(prog, numeric_spectrum(dc, gamma).vector(0), keep_states=False)
    idx = np.arange(0, len(trace.times), sc.trace_stride)
    rows = ((trace.times[i], *trace.populations[i]) for i in idx)
    write_csv(out, "rabi", ["t_s", "p_xi1", "p_xi2", "p_xi3"], rows)
    analytic = rabi_frequency(sc.e_ac, sc.e_dc, theta, drive.omega, gamma, direction=drive.direction)
    out.write(f"# analytic_rabi_hz={fmt(analytic / (2 * np.pi))} drive_omega_rad_s={fmt(drive.omega)}\n")


def cmd_calibrate(cfg: RunConfig, out) -> None:
    sc = cfg.scenario
    gamma = cfg.material.gamma_dipole
    theta = np.deg2rad(sc.theta_deg)
    dc = field_in_cleavage_plane(theta, sc.e_dc)
    seed = None
    if sc.detuning_formula == "printed":
        seed = resonant_omega(sc.e_dc, theta, gamma, corrected=False)
    cal = calibrate_pi_pulse(dc, sc.drive_direction, sc.e_ac, theta, gamma, omega_seed=seed)
    write_csv(out, "calibrate", ["omega_hz", "duration_s", "fidelity"], [(cal.omega / (2 * np.pi), cal.duration, cal.fidelity)])


def _pulse_duration(cfg: RunConfig) -> float:
    sc = cfg.scenario
    rabi = resonant_rabi_frequency(
        sc.e_ac, np.deg2rad(sc.theta_deg), cfg.material.gamma_dipole, sc.drive_direction
    )
    # rotation angle in units of pi; P_xi2 = sin^2(Omega t), so a pi pulse lasts pi / (2 Omega)
    named = {"zero": 0.0, "pi": 1.0, "half_pi": 0.5}
    if sc.pulse in named:
        if sc.pulse == "zero":
            return 0.0
        if rabi <= 0:
            raise DomainError("drive does not couple xi1 and xi2; give pulse as a duration in s")
        return named[sc.pulse] * np.pi / (2 * rabi)
    try:
        tau = float(sc.pulse)
    except ValueError:
        raise ConfigError(f"pulse: expected zero, pi, half_pi or a duration in s, got {sc.pulse!r}") from None
    if tau < 0:
        raise ConfigError("pulse duration must be >= 0")
    return tau


def cmd_protocol(cfg: RunConfig, out, trace_path: str | None = None) -> None:
    sc = cfg.scenario
    gamma = cfg.material.gamma_dipole
    theta = np.deg2rad(sc.theta_deg)
    dc = field_in_cleavage_plane(theta, sc.e_dc)
    tau = _pulse_duration(cfg)
    rec = run_protocol(
        dc, _drive(cfg), tau, sc.temperature, ReadoutModel(sc.background_fraction),
        gamma_dipole=gamma, dt=sc.dt, keep_traces=trace_path is not None,
    )
    rows = [
        ("theta_rad", rec.theta),
        ("Theta_rad", rec.theta_mix),
        ("temperature_K", sc.temperature),
        *((f"init_p_xi{i + 1}", p) for i, p in enumerate(rec.init_state.occupations)),
        ("drive_omega_rad_s", rec.drive.omega),
        ("drive_e_ac_V_m", rec.drive.e_ac),
        ("drive_direction", rec.drive.direction.value),
        ("pulse_duration_s", rec.pulse_duration),
        *((f"final_p_xi{i + 1}", p) for i, p in enumerate(rec.final_occupations)),
        ("signal", rec.signal),
        ("threshold", rec.threshold),
        ("margin", rec.margin),
        ("inferred_pseudospin", rec.inferred_pseudospin),
    ]
    write_csv(out, "protocol", ["quantity", "value"], rows)
    if trace_path and rec.traces:
        times = rec.traces[0][1].times
        mix = sum(p * tr.populations for p, tr in rec.traces)
        idx = np.arange(0, len(times), sc.trace_stride)
        with open(trace_path, "w", newline="") as fh:
            write_csv(fh, "protocol trace", ["t_s", "p_xi1", "p_xi2", "p_xi3"], ((times[i], *mix[i]) for i in idx))


def cmd_ldos_sweep(cfg: RunConfig, out) -> None:
    theta = _theta_grid(cfg)
    _, _, _, mix = analytic_spectrum(theta)
    bg = ReadoutModel(cfg.scenario.background_fraction).background_fraction
    rows = []
    for t, m in zip(theta, mix):
        w1, w2 = ldos_weights(m)
        rows.append((t, bg + (1 - bg) * w1, bg + (1 - bg) * w2))
    write_csv(out, "ldos-sweep", ["theta_rad", "w_xi1_scaled", "w_xi2_scaled"], rows)


def cmd_pair(cfg: RunConfig, out) -> None:
    sc = cfg.scenario
    model = PairModel(sc.j0, sc.d0, sc.decay_length)
    d = np.linspace(sc.d_min, sc.d_max, cfg.grid_points)
    j = exchange_coupling(d, model)
    write_csv(out, "pair", ["d_m", "j_ev", "t_entangle_s"], zip(d, j, entangling_time(j)))


HANDLERS = {
    "multiplet": cmd_multiplet,
    "spectrum-sweep": cmd_spectrum_sweep,
    "coupling-sweep": cmd_coupling_sweep,
    "rabi": cmd_rabi,
    "calibrate": cmd_calibrate,
    "protocol": cmd_protocol,
    "ldos-sweep": cmd_ldos_sweep,
    "pair": cmd_pair,
}


def run(subcommand: str, config: RunConfig, out=None, trace_path: str | None = None) -> str:
    """Run one subcommand and return the CSV text; also writes ``config.output_path`` if set."""
    if subcommand not in HANDLERS:
        raise ConfigError(f"unknown subcommand {subcommand!r}; choose from {', '.join(SUBCOMMANDS)}")
    buf = io.StringIO()
    if subcommand == "protocol":
        cmd_protocol(config, buf, trace_path)
    else:
        HANDLERS[subcommand](config, buf)
    text = buf.getvalue()
    if config.output_path:
        Path(config.output_path).write_text(text)
    elif out is not None:
        out.write(text)
    return text


def _error_code(exc: BaseException) -> str:
    if isinstance(exc, ConfigError):
        return "CONFIG_ERROR"
    if isinstance(exc, ProtocolError):
        return "PROTOCOL_PRECONDITION"
    if isinstance(exc, CalibrationError):
        return "CALIBRATION_FAILED"
    if isinstance(exc, PropagationError):
        return "PROPAGATION_ERROR"
    if isinstance(exc, MultipletError):
        return "MULTIPLET_MIXED"
    if isinstance(exc, OSError):
        return "IO_ERROR"
    return "DOMAIN_ERROR"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value run configuration")
    common.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
    common.add_argument("--points", metavar="N", type=int, help="grid points for sweeps")
    parser = argparse.ArgumentParser(prog="ionspin", description="Electrically driven J=1 ion spin simulator")
    parser.add_argument("--version", action="version", version=f"ionspin {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "protocol":
            p.add_argument("--trace", metavar="PATH", help="also write the per-step population CSV")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        text = Path(args.config).read_text() if args.config else ""
        cfg = parse_config(text)
        if args.points is not None:
            if args.points < 2:
                raise ConfigError(f"--points = {args.points} is out of range [2,inf)")
            cfg.grid_points = args.points
        if args.out:
            cfg.output_path = args.out
        run(args.subcommand, cfg, out=sys.stdout, trace_path=getattr(args, "trace", None))
    except (ConfigError, DomainError, ProtocolError, CalibrationError, PropagationError, MultipletError, OSError) as exc:
        code = _error_code(exc)
        msg = str(exc).replace("\n", " ")
        print(f"ERROR {code} {msg}", file=sys.stderr)
        return EXIT_CODES[code]
    return 0


if __name__ == "__main__":
    sys.exit(main())
