"""Integrable three-state Potts chains: spectra, Bethe roots and reference tables."""

from ._potts import (
    ArgumentError,
    DomainError,
    NumericalError,
    bethe,
    bethe_json,
    bethe_residual,
    check_table,
    hamiltonian,
    kac_weight,
    run_cli,
    spectrum,
    transfer,
)

__all__ = [
    "ArgumentError",
    "DomainError",
    "NumericalError",
    "bethe",
    "bethe_json",
    "bethe_residual",
    "check_table",
    "hamiltonian",
    "kac_weight",
    "run_cli",
    "spectrum",
    "transfer",
]
