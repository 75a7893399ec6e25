# Copyright 2026 The qnav Authors
# SPDX-License-Identifier: Apache-2.0
"""Time-optimal navigation of qubits and gates under a fixed background Hamiltonian."""

from ._qnav import (
    DegenerateTaskError,
    DimensionError,
    Error,
    InvalidArgumentError,
    NoOpGateError,
    NotInvariantError,
    NotUnitaryError,
    WindTooStrongError,
    alpha_of_phi,
    expm_unitary,
    first_passage,
    logm_unitary,
    omega_of_phi,
    optimize_state,
    pauli_compose,
    solve_embedded,
    solve_gate,
    solve_gate_min_branch,
    sweep,
    tau_of_phi,
)

__version__ = "0.1.0"
