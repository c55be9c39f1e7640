"""Circuit construction and execution with checkpoint capture.

The comparison-search circuit acts on two n-qubit registers (width 2n):
a Hadamard on every qubit, a phase oracle on the second register, then
one comparison gate per qubit pair (i, i+n) for i = n down to 1.  Named
checkpoints psi0 .. psi3 bracket each stage so intermediate states can
be compared against their closed forms.

A small Grover builder is included as the contrast case: oracle plus
diffusion (Hadamard layer, phase flip on every nonzero state, Hadamard
layer) repeated a chosen number of times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import gates
from .state import EXACT, BooleanOracle, StateVector

PSI0, PSI1, PSI2, PSI2A, PSI3 = "psi0", "psi1", "psi2", "psi2a", "psi3"
CHECKPOINT_LABELS = (PSI0, PSI1, PSI2, PSI2A, PSI3)


@dataclass(frozen=True)
class Gate1Placement:
    qubit: int
    gate: gates.Gate1


@dataclass(frozen=True)
class Gate2Placement:
    qubit_a: int
    qubit_b: int
    gate: gates.Gate2


@dataclass(frozen=True)
class PhaseOraclePlacement:
    reg_start: int
    oracle: BooleanOracle


@dataclass(frozen=True)
class Checkpoint:
    label: str


CircuitOp = Gate1Placement | Gate2Placement | PhaseOraclePlacement | Checkpoint


@dataclass(frozen=True)
class Circuit:
    width: int
    ops: tuple[CircuitOp, ...]

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"circuit width must be >= 1, got {self.width}")
        seen = set()
        for op in self.ops:
            if isinstance(op, Gate1Placement):
                self._check(op.qubit)
            elif isinstance(op, Gate2Placement):
                self._check(op.qubit_a)
                self._check(op.qubit_b)
                if op.qubit_a == op.qubit_b:
                    raise ValueError("two-qubit placement on identical qubits")
            elif isinstance(op, PhaseOraclePlacement):
                self._check(op.reg_start)
                self._check(op.reg_start + op.oracle.n - 1)
            elif isinstance(op, Checkpoint):
                if op.label in seen:
                    raise ValueError(f"duplicate checkpoint label {op.label!r}")
                seen.add(op.label)
            else:
                raise TypeError(f"unknown op {op!r}")

    def _check(self, q: int) -> None:
        if not 1 <= q <= self.width:
            raise ValueError(f"qubit {q} out of range 1..{self.width}")

    def checkpoint_labels(self) -> tuple[str, ...]:
        return tuple(op.label for op in self.ops if isinstance(op, Checkpoint))

    def gate_count(self) -> int:
        return sum(1 for op in self.ops if not isinstance(op, Checkpoint))


@dataclass
class Trace:
    """Snapshots captured at each checkpoint, plus the final state."""

    checkpoints: dict[str, StateVector] = field(default_factory=dict)
    final: StateVector | None = None

    def __getitem__(self, label: str) -> StateVector:
        return self.checkpoints[label]


def build_comparison_search(n: int, f: BooleanOracle) -> Circuit:
    """The two-register comparison-search circuit for an n-bit oracle.

    Width 2n.  Sequence: psi0; H on qubits 1..2n; psi1; phase oracle on
    the second register (qubits n+1..2n); psi2; comparison gate on
    (n, 2n); psi2a; comparison gates on (n-1, 2n-1), ..., (1, n+1); psi3.
    For n = 1 the single comparison gate makes psi2a and psi3 coincide;
    both labels are still emitted.
    """
    if n < 1:
        raise ValueError(f"register size must be >= 1, got {n}")
    if f.n != n:
        raise ValueError(f"oracle arity {f.n} does not match n={n}")
    ops: list[CircuitOp] = [Checkpoint(PSI0)]
    ops += [Gate1Placement(q, gates.hadamard()) for q in range(1, 2 * n + 1)]
    ops.append(Checkpoint(PSI1))
    ops.append(PhaseOraclePlacement(n + 1, f))
    ops.append(Checkpoint(PSI2))
    ops.append(Gate2Placement(n, 2 * n, gates.comparison_gate()))
    ops.append(Checkpoint(PSI2A))
    for i in range(n - 1, 0, -1):
        ops.append(Gate2Placement(i, i + n, gates.comparison_gate()))
    ops.append(Checkpoint(PSI3))
    return Circuit(2 * n, tuple(ops))


def _nonzero_marker(n: int) -> BooleanOracle:
    """Oracle marking every k != 0; used for the diffusion phase flip."""
    return BooleanOracle(n, ((1 << (1 << n)) - 1) & ~1)


def build_grover(n: int, f: BooleanOracle, iterations: int) -> Circuit:
    """Grover search: H layer, then ``iterations`` rounds of oracle plus
    diffusion (H layer, phase flip on all nonzero states, H layer)."""
    if n < 1:
        raise ValueError(f"register size must be >= 1, got {n}")
    if f.n != n:
        raise ValueError(f"oracle arity {f.n} does not match n={n}")
    if iterations < 0:
        raise ValueError("iteration count must be >= 0")
    h_layer = [Gate1Placement(q, gates.hadamard()) for q in range(1, n + 1)]
    flip = PhaseOraclePlacement(1, _nonzero_marker(n))
    ops: list[CircuitOp] = list(h_layer)
    for _ in range(iterations):
        ops.append(PhaseOraclePlacement(1, f))
        ops += h_layer
        ops.append(flip)
        ops += h_layer
    return Circuit(n, tuple(ops))


def grover_optimal_iterations(n: int, marked_count: int) -> int:
    """floor((pi/4) * sqrt(2^n / marked_count))."""
    if n < 1:
        raise ValueError(f"register size must be >= 1, got {n}")
    if not 1 <= marked_count <= (1 << n):
        raise ValueError(f"marked count {marked_count} out of range for n={n}")
    return math.floor((math.pi / 4) * math.sqrt((1 << n) / marked_count))


def _apply(op: CircuitOp, state: StateVector) -> None:
    if isinstance(op, Gate1Placement):
        gates.apply_gate1(state, op.qubit, op.gate)
    elif isinstance(op, Gate2Placement):
        gates.apply_gate2(state, op.qubit_a, op.qubit_b, op.gate)
    elif isinstance(op, PhaseOraclePlacement):
        gates.apply_phase_oracle(state, op.oracle, op.reg_start)


def _start_state(circuit: Circuit, s0: StateVector) -> StateVector:
    if s0.num_qubits != circuit.width:
        raise ValueError(
            f"state has {s0.num_qubits} qubits, circuit needs {circuit.width}"
        )
    if not s0.is_normalized():
        raise ValueError("initial state is not normalized")
    return s0.copy()


def run(circuit: Circuit, s0: StateVector) -> StateVector:
    """Execute the circuit on a copy of ``s0`` and return the final state."""
    state = _start_state(circuit, s0)
    for op in circuit.ops:
        _apply(op, state)
    return state


def run_with_trace(circuit: Circuit, s0: StateVector) -> Trace:
    """Like :func:`run`, also snapshotting the state at every checkpoint."""
    state = _start_state(circuit, s0)
    trace = Trace()
    for op in circuit.ops:
        if isinstance(op, Checkpoint):
            trace.checkpoints[op.label] = state.copy()
        else:
            _apply(op, state)
    trace.final = state
    return trace


def simulate(circuit: Circuit, backend: str = EXACT) -> StateVector:
    """Run the circuit from |0...0> on the chosen backend."""
    return run(circuit, StateVector(circuit.width, backend))
