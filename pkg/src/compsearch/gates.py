"""Gate definitions and application kernels.

Single-qubit gates are 2x2 matrices over the dyadic sqrt(2) ring; the
two-qubit comparison gate couples a first-register qubit i with its
partner i+n in the second register.  Basis order inside a two-qubit gate
applied to the ordered pair (p, q) is |b_p b_q>, i.e. row index
2*(bit at p) + (bit at q); the comparison gate's matrix is only
consistent with its per-qubit action formula under this first-qubit-major
order (checked column by column in the tests).

Kernels mutate the state in place and return it.  Oracles are applied as
diagonal sign flips over a register window rather than materialized
matrices, so every application is O(2^m).
"""

from __future__ import annotations

import numpy as np

from .dyadic import DyadicReal
from .state import EXACT, FLOAT, FLOAT_ATOL, BooleanOracle, StateVector


class _GateBase:
    """Shared plumbing for small dyadic gate matrices."""

    __slots__ = ("name", "matrix", "_exact", "_float")

    def __init__(self, name: str, rows) -> None:
        self.name = name
        self.matrix = tuple(
            tuple(e if isinstance(e, DyadicReal) else DyadicReal.from_int(e) for e in row)
            for row in rows
        )
        self._exact = None
        self._float = None

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def exact_coeffs(self) -> tuple[tuple, tuple, int, int]:
        """Integer coefficient matrices (A, B), shared exponent g and the
        largest |coefficient|, with entry = (A + B*sqrt(2)) / 2^g."""
        if self._exact is None:
            g = max(e.h for row in self.matrix for e in row)
            A = tuple(tuple(e.a << (g - e.h) for e in row) for row in self.matrix)
            B = tuple(tuple(e.b << (g - e.h) for e in row) for row in self.matrix)
            gmax = max(max(abs(x) for x in row) for row in A + B)
            self._exact = (A, B, g, gmax)
        return self._exact

    def float_matrix(self) -> np.ndarray:
        if self._float is None:
            self._float = np.array(
                [[e.to_float() for e in row] for row in self.matrix], dtype=np.complex128
            )
        return self._float.copy()

    def is_unitary(self) -> bool:
        """Exact check of G^T G = I (all gates here are real)."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                acc = DyadicReal(0, 0)
                for k in range(n):
                    acc = acc + self.matrix[k][i] * self.matrix[k][j]
                if acc != (1 if i == j else 0):
                    return False
        return True

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class Gate1(_GateBase):
    """A 2x2 gate; basis order |0>, |1>."""

    def __init__(self, name: str, rows) -> None:
        super().__init__(name, rows)
        if self.dim != 2 or any(len(r) != 2 for r in self.matrix):
            raise ValueError("Gate1 needs a 2x2 matrix")


class Gate2(_GateBase):
    """A 4x4 gate on an ordered qubit pair (p, q); basis |b_p b_q>."""

    def __init__(self, name: str, rows) -> None:
        super().__init__(name, rows)
        if self.dim != 4 or any(len(r) != 4 for r in self.matrix):
            raise ValueError("Gate2 needs a 4x4 matrix")

    def swapped(self) -> Gate2:
        """The same operator expressed for the reversed pair (q, p)."""
        perm = (0, 2, 1, 3)  # swap the two bits of each basis index
        rows = tuple(
            tuple(self.matrix[perm[i]][perm[j]] for j in range(4)) for i in range(4)
        )
        return Gate2(self.name + "_swapped", rows)


_C = DyadicReal(0, 1, 1)  # 1/sqrt(2)

_HADAMARD = Gate1("H", ((_C, _C), (_C, -_C)))
_PAULI_X = Gate1("X", ((0, 1), (1, 0)))
_PAULI_Z = Gate1("Z", ((1, 0), (0, -1)))
_IDENTITY1 = Gate1("I", ((1, 0), (0, 1)))
_COMPARISON = Gate2(
    "C",
    (
        (_C, 0, _C, 0),
        (0, _C, 0, -_C),
        (-_C, 0, _C, 0),
        (0, _C, 0, _C),
    ),
)
_IDENTITY2 = Gate2("I2", tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))


def hadamard() -> Gate1:
    """(1/sqrt(2)) [[1, 1], [1, -1]]."""
    return _HADAMARD


def pauli_x() -> Gate1:
    return _PAULI_X


def pauli_z() -> Gate1:
    return _PAULI_Z


def identity_gate1() -> Gate1:
    return _IDENTITY1


def identity_gate2() -> Gate2:
    return _IDENTITY2


def comparison_gate() -> Gate2:
    """The register-comparison coupling gate

        (1/sqrt(2)) [[ 1, 0, 1, 0],
                     [ 0, 1, 0,-1],
                     [-1, 0, 1, 0],
                     [ 0, 1, 0, 1]]

    acting on (first-register qubit i, second-register qubit i+n)."""
    return _COMPARISON


def _check_qubit(state: StateVector, q: int) -> None:
    if not 1 <= q <= state.num_qubits:
        raise ValueError(f"qubit {q} out of range 1..{state.num_qubits}")


def _linear_combo(terms) -> np.ndarray | int:
    """Sum of coef * array over the given terms, skipping zero coefficients."""
    acc = None
    for coef, arr in terms:
        if coef == 0:
            continue
        t = arr if coef == 1 else coef * arr
        acc = t if acc is None else acc + t
    return 0 if acc is None else acc


def apply_gate1(state: StateVector, q: int, gate: Gate1) -> StateVector:
    """Mix the amplitude pairs that differ in bit q by ``gate``."""
    _check_qubit(state, q)
    m = state.num_qubits
    pre, post = 1 << (q - 1), 1 << (m - q)
    if state.backend == EXACT:
        A, B, g, gmax = gate.exact_coeffs()
        state._guard_growth(6 * gmax)
        a = state._a.reshape(pre, 2, post)
        b = state._b.reshape(pre, 2, post)
        xs = [(a[:, j, :].copy(), b[:, j, :].copy()) for j in (0, 1)]
        for i in (0, 1):
            a[:, i, :] = _linear_combo(
                [(A[i][j], xs[j][0]) for j in (0, 1)]
                + [(2 * B[i][j], xs[j][1]) for j in (0, 1)]
            )
            b[:, i, :] = _linear_combo(
                [(A[i][j], xs[j][1]) for j in (0, 1)]
                + [(B[i][j], xs[j][0]) for j in (0, 1)]
            )
        state._h += g
        state._canonical_reduce()
    else:
        G = gate.float_matrix()
        amps = state._amps.reshape(pre, 2, post)
        x0, x1 = amps[:, 0, :].copy(), amps[:, 1, :].copy()
        amps[:, 0, :] = G[0, 0] * x0 + G[0, 1] * x1
        amps[:, 1, :] = G[1, 0] * x0 + G[1, 1] * x1
        state._check_finite()
    return state


def apply_gate2(state: StateVector, p: int, q: int, gate: Gate2) -> StateVector:
    """Apply ``gate`` to the ordered (possibly nonadjacent) pair (p, q)."""
    _check_qubit(state, p)
    _check_qubit(state, q)
    if p == q:
        raise ValueError("two-qubit gate needs distinct qubits")
    m = state.num_qubits
    u, v = min(p, q), max(p, q)
    pre, mid, post = 1 << (u - 1), 1 << (v - u - 1), 1 << (m - v)

    def groups(arr):
        view = arr.reshape(pre, 2, mid, 2, post)
        if p < q:
            return view, [(r >> 1, r & 1) for r in range(4)]
        return view, [(r & 1, r >> 1) for r in range(4)]

    if state.backend == EXACT:
        A, B, g, gmax = gate.exact_coeffs()
        state._guard_growth(12 * gmax)
        av, sel = groups(state._a)
        bv, _ = groups(state._b)
        xs = [(av[:, bu, :, bw, :].copy(), bv[:, bu, :, bw, :].copy()) for bu, bw in sel]
        for i, (bu, bw) in enumerate(sel):
            av[:, bu, :, bw, :] = _linear_combo(
                [(A[i][j], xs[j][0]) for j in range(4)]
                + [(2 * B[i][j], xs[j][1]) for j in range(4)]
            )
            bv[:, bu, :, bw, :] = _linear_combo(
                [(A[i][j], xs[j][1]) for j in range(4)]
                + [(B[i][j], xs[j][0]) for j in range(4)]
            )
        state._h += g
        state._canonical_reduce()
    else:
        G = gate.float_matrix()
        view, sel = groups(state._amps)
        xs = [view[:, bu, :, bw, :].copy() for bu, bw in sel]
        for i, (bu, bw) in enumerate(sel):
            view[:, bu, :, bw, :] = sum(G[i, j] * xs[j] for j in range(4))
        state._check_finite()
    return state


def apply_phase_oracle(state: StateVector, f: BooleanOracle, reg_start: int) -> StateVector:
    """Multiply every basis state whose window bits read k by (-1)^f(k).

    The window is qubits reg_start .. reg_start + n - 1.
    """
    m = state.num_qubits
    if not (1 <= reg_start and reg_start + f.n - 1 <= m):
        raise ValueError(
            f"oracle window {reg_start}..{reg_start + f.n - 1} out of range 1..{m}"
        )
    pre = 1 << (reg_start - 1)
    post = 1 << (m - (reg_start + f.n - 1))
    signs = f.sign_array()[None, :, None]
    if state.backend == EXACT:
        for arr in (state._a, state._b):
            view = arr.reshape(pre, 1 << f.n, post)
            view *= signs
    else:
        view = state._amps.reshape(pre, 1 << f.n, post)
        view *= signs
    return state


def apply_ancilla_oracle(state: StateVector, f: BooleanOracle) -> StateVector:
    """XOR-oracle form |k>|b> -> |k>|b xor f(k)>; ancilla is the last qubit."""
    if state.num_qubits != f.n + 1:
        raise ValueError(
            f"ancilla oracle needs {f.n + 1} qubits, state has {state.num_qubits}"
        )
    rows = np.nonzero(f.truth_values())[0]
    if rows.size == 0:
        return state
    if state.backend == EXACT:
        for arr in (state._a, state._b):
            pairs = arr.reshape(-1, 2)
            pairs[rows] = pairs[rows][:, ::-1]
    else:
        pairs = state._amps.reshape(-1, 2)
        pairs[rows] = pairs[rows][:, ::-1]
    return state


def discard_minus_ancilla(state: StateVector) -> StateVector:
    """Drop a last qubit that is exactly |-> = (|0> - |1>)/sqrt(2).

    Requires the ancilla to be unentangled in that state: every amplitude
    must satisfy amp(x1) = -amp(x0).  Exact backend checks this with zero
    tolerance; float within FLOAT_ATOL.  Raises ValueError otherwise.
    """
    if state.num_qubits < 2:
        raise ValueError("need at least two qubits to discard one")
    if state.backend == EXACT:
        a = state._a.reshape(-1, 2)
        b = state._b.reshape(-1, 2)
        if not (np.array_equal(a[:, 1], -a[:, 0]) and np.array_equal(b[:, 1], -b[:, 0])):
            raise ValueError("ancilla is not exactly |-> (state is entangled or rotated)")
        # amp * sqrt(2): (a + b r) r = 2b + a r
        return StateVector._from_exact_arrays(
            state.num_qubits - 1, 2 * b[:, 0], a[:, 0], state._h
        )
    pairs = state._amps.reshape(-1, 2)
    if float(np.max(np.abs(pairs[:, 1] + pairs[:, 0]))) > FLOAT_ATOL:
        raise ValueError("ancilla is not |-> within tolerance")
    out = StateVector.__new__(StateVector)
    out.num_qubits = state.num_qubits - 1
    out.backend = FLOAT
    out._amps = pairs[:, 0] * np.sqrt(2.0)
    out._a = out._b = None
    out._h = 0
    return out
