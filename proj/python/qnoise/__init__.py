"""Noise spectra and quantum-limit checks for linear detectors."""

from ._qnoise import (
    CavityParams,
    DegenerateReadout,
    GridMismatch,
    InputState,
    InstabilityError,
    InvalidArgument,
    MechOscillator,
    NotValidDetector,
    PhysicsError,
    SingularNormalization,
    StabilityError,
    audit,
    cavity_spectra,
    mimo_check,
    network_spectra,
    optimal_angle,
    qubit_rates,
    sideband_asymmetry,
    symmetric_grid,
)

__all__ = [
    "CavityParams",
    "DegenerateReadout",
    "GridMismatch",
    "InputState",
    "InstabilityError",
    "InvalidArgument",
    "MechOscillator",
    "NotValidDetector",
    "PhysicsError",
    "SingularNormalization",
    "StabilityError",
    "audit",
    "cavity_spectra",
    "mimo_check",
    "network_spectra",
    "optimal_angle",
    "qubit_rates",
    "sideband_asymmetry",
    "symmetric_grid",
]
