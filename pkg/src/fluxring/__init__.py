"""Quantum ring coupled to quantised toroidal fluxes: spectra, dynamics, entanglement."""

from .core import (
    ConvergenceError,
    DensityOperator,
    EigenDecomposition,
    InvalidStateError,
    StateVector,
    eig_hermitian,
    kron,
    partial_trace,
    pauli,
    trace_out,
)
from .dynamics import (
    ExperimentConfig,
    ExperimentResult,
    TimeSeries,
    chain_transport_experiment,
    evolve,
    evolve_schedule,
    propagator,
    quench_experiment,
    teleport_experiment,
)
from .entanglement import entanglement_report, purity, von_neumann_entropy
from .hamiltonians import (
    DriveSchedule,
    DriveSegment,
    NonRepresentableOperator,
    PauliDecomposition,
    SystemSpec,
    build_chain,
    build_driven,
    build_ising_two_qubit,
    build_ring_window,
    build_single_fluxon,
    build_two_fluxon,
    build_two_fluxon_physical,
    closed_form_single_energies,
    closed_form_two_fluxon_energies,
    dispersion,
    pauli_decompose,
)
from .spectra import (
    BandTable,
    BlochVector,
    band_sweep,
    bell_fidelity,
    bloch_sweep,
    fluxon_bloch_vector,
    two_fluxon_band_states,
)

__version__ = "0.1.0"
