"""Simulation of electrically driven J=1 ion spins (Mn acceptors in GaAs)."""

__version__ = "0.1.0"

from .angmom import SpinOperators, cartesian_j1_operators, spin_operators, tensor_product
from .drive import DriveDirection, DriveSpec, ac_hamiltonian_in_eigenbasis, rabi_frequency
from .dynamics import EvolutionTrace, PulseProgram, calibrate_pi_pulse, extract_rabi, propagate
from .multiplet import analyze_multiplet, build_spin_hamiltonian
from .pair import PairModel, entangling_time, exchange_coupling
from .protocol import ReadoutModel, detection_signal, ldos_weights, run_protocol, thermal_occupations
from .stark import (
    FieldSpec,
    StarkSpectrum,
    analytic_spectrum,
    field_in_cleavage_plane,
    ground_state_branch,
    numeric_spectrum,
    stark_hamiltonian,
    stark_hamiltonian_from_operators,
)
from .units import CONSTANTS, MN_GAAS, MaterialParams, stark_energy, zeeman_equivalent
