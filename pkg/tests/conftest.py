"""Shared helpers: independent dense-matrix oracles and random states.

The dense-matrix routines build full 2^m x 2^m operators with plain
numpy and serve as independent references for the reshape-based kernels
and for Grover success probabilities; they share no code with the
library's gate application paths.
"""

from __future__ import annotations

import numpy as np

import compsearch as cs


def dense_one_qubit(G: np.ndarray, q: int, m: int) -> np.ndarray:
    """Embed a 2x2 matrix acting on qubit q (1-based, MSB-first)."""
    N = 1 << m
    U = np.zeros((N, N), dtype=complex)
    shift = m - q
    for x in range(N):
        bq = (x >> shift) & 1
        for row in range(2):
            y = (x & ~(1 << shift)) | (row << shift)
            U[y, x] += G[row, bq]
    return U


def dense_two_qubit(G: np.ndarray, p: int, q: int, m: int) -> np.ndarray:
    """Embed a 4x4 matrix on the ordered pair (p, q), nonadjacent allowed."""
    N = 1 << m
    U = np.zeros((N, N), dtype=complex)
    sp, sq = m - p, m - q
    for x in range(N):
        col = 2 * ((x >> sp) & 1) + ((x >> sq) & 1)
        base = x & ~(1 << sp) & ~(1 << sq)
        for row in range(4):
            y = base | ((row >> 1) << sp) | ((row & 1) << sq)
            U[y, x] += G[row, col]
    return U


def grover_success_dense(n: int, marked: int, iterations: int) -> float:
    """Success probability from a dense-matrix Grover simulation."""
    N = 1 << n
    H1 = np.array([[1, 1], [1, -1]], dtype=float) / np.sqrt(2)
    H = np.array([[1.0]])
    for _ in range(n):
        H = np.kron(H, H1)
    oracle = np.eye(N)
    oracle[marked, marked] = -1.0
    flip_nonzero = -np.eye(N)
    flip_nonzero[0, 0] = 1.0
    step = H @ flip_nonzero @ H @ oracle
    state = H[:, 0].copy()
    for _ in range(iterations):
        state = step @ state
    return float(abs(state[marked]) ** 2)


def random_exact_state(num_qubits: int, rng: np.random.Generator, depth: int = 12) -> cs.StateVector:
    """Exactly normalized random state: a random gate word on a random
    basis state (every gate preserves the exact norm)."""
    s = cs.StateVector.basis_state(num_qubits, int(rng.integers(1 << num_qubits)))
    for _ in range(depth):
        kind = int(rng.integers(3)) if num_qubits >= 2 else int(rng.integers(2))
        if kind == 0:
            cs.apply_gate1(s, int(rng.integers(1, num_qubits + 1)), cs.hadamard())
        elif kind == 1:
            cs.apply_gate1(s, int(rng.integers(1, num_qubits + 1)), cs.pauli_x())
        else:
            p, q = rng.choice(num_qubits, size=2, replace=False) + 1
            cs.apply_gate2(s, int(p), int(q), cs.comparison_gate())
    return s


def random_float_state(num_qubits: int, rng: np.random.Generator) -> cs.StateVector:
    v = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    v /= np.linalg.norm(v)
    return cs.StateVector.from_amplitudes(v, cs.FLOAT)


def minus_state() -> cs.StateVector:
    """(|0> - |1>)/sqrt(2) in the exact backend."""
    inv = cs.DyadicReal(0, 1, 1)
    return cs.StateVector.from_amplitudes([inv, -inv])
