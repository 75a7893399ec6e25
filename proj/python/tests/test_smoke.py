# Copyright 2026 The qnav Authors
# SPDX-License-Identifier: Apache-2.0
import math

import numpy as np
import pytest

import qnav

X, Y, Z = 0.1, 0.23, math.sqrt(1 - 0.1**2 - 0.23**2)


def canonical_states(theta):
    # Bloch vectors (cos theta/2, 0, +-sin theta/2) / 2
    up = math.pi / 4 - theta / 4
    down = math.pi / 4 + theta / 4
    a = np.array([math.cos(up), math.sin(up)], dtype=complex)
    b = np.array([math.cos(down), math.sin(down)], dtype=complex)
    return a, b


def reference_wind():
    eps = 0.9
    return qnav.pauli_compose(0.0, math.sqrt(eps / 2) * np.array([X, Y, Z]))


def test_pauli_and_exponential():
    h = qnav.pauli_compose(0.0, [0.0, 1.0, 0.0])
    u = qnav.expm_unitary(h, math.pi / 2)
    assert np.allclose(u, [[0, -1], [1, 0]], atol=1e-12)
    x = qnav.logm_unitary(qnav.expm_unitary(qnav.pauli_compose(0, [0, 0, 0.3]), 1.0))
    assert np.allclose(x, qnav.pauli_compose(0, [0, 0, 0.3]), atol=1e-12)


def test_reference_state_task():
    a, b = canonical_states(math.pi / 2)
    sol = qnav.optimize_state(a, b, reference_wind())
    assert 0.43 * math.pi <= sol["phi_star"] <= 0.45 * math.pi
    assert sol["fidelity"] > 1 - 1e-9
    h1 = sol["H_control"]
    assert abs(np.trace(h1 @ h1).real - 1) < 1e-9
    passage = qnav.first_passage(sol["H_total"], a, b, epsilon=0.9)
    assert passage["reached"]
    assert abs(passage["t_first"] - sol["tau_star"]) < 1e-6


def test_sweep_shape_and_minimum():
    a, b = canonical_states(math.pi / 2)
    rows = qnav.sweep(a, b, reference_wind(), 256)
    assert rows["tau"].shape == (256,)
    assert np.all(rows["tau"] > 0)


def test_gate_tailwind():
    eps, beta = 0.5, 1.0
    sz = qnav.pauli_compose(0, [0, 0, 1])
    sol = qnav.solve_gate(np.eye(2), qnav.expm_unitary(sz, beta), math.sqrt(eps / 2) * sz)
    assert abs(sol["T"] - math.sqrt(2) * beta / (1 + math.sqrt(eps))) < 1e-10


def test_errors():
    a, _ = canonical_states(1.0)
    with pytest.raises(qnav.DegenerateTaskError):
        qnav.optimize_state(a, a, reference_wind())
    with pytest.raises(qnav.WindTooStrongError):
        qnav.optimize_state(*canonical_states(1.0), 2.0 * reference_wind())
    with pytest.raises(qnav.NoOpGateError):
        qnav.solve_gate(np.eye(2), np.eye(2), np.zeros((2, 2)))
    assert issubclass(qnav.NoOpGateError, qnav.Error)


def test_qutrit_embedding():
    h0 = np.zeros((3, 3), dtype=complex)
    h0[:2, :2] = reference_wind() * math.sqrt(0.5 / 0.9)
    h0[2, 2] = 0.5
    a, b = canonical_states(1.2)
    sol = qnav.solve_embedded(np.append(a, 0), np.append(b, 0), h0)
    assert sol["fidelity"] > 1 - 1e-9
    assert np.max(np.abs(sol["H_control"][2, :])) < 1e-10
