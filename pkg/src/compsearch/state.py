"""State vectors, bit strings and boolean oracles.

Index convention: qubit 1 is the MOST significant bit of a basis index,
so an m-qubit basis state |b_1 b_2 ... b_m> has index sum_i b_i 2^(m-i).
With two n-qubit registers the product state |j>|k> sits at index
j * 2^n + k.

Two amplitude backends exist:

* ``"exact"`` -- every amplitude is (a[x] + b[x]*sqrt(2)) / 2^h with
  int64 coordinate arrays a, b and a single shared exponent h.  All
  gates in this library scale every amplitude by the same power of
  1/sqrt(2), so one exponent suffices.  Integer growth is checked and
  raises OverflowError rather than wrapping.
* ``"float"`` -- a complex128 array.

Exact states compare with ``==`` at zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .dyadic import SQRT2, DyadicReal

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

# Amplitude tolerance for the float backend; see norm/deviation checks.
FLOAT_ATOL = 1e-12

# Integer magnitudes in exact states must stay below this after a gate.
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class BitString:
    """An n-bit value; bit(1) is the most significant bit."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    def bit(self, i: int) -> int:
        if not 1 <= i <= self.width:
            raise ValueError(f"bit index {i} out of range 1..{self.width}")
        return (self.value >> (self.width - i)) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(i) for i in range(1, self.width + 1))

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


class BooleanOracle:
    """A function f: {0, ..., 2^n - 1} -> {0, 1} held as a truth-table
    bitmask whose bit k is f(k)."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table: int) -> None:
        if n < 1:
            raise ValueError(f"oracle arity must be >= 1, got {n}")
        if not 0 <= table < (1 << (1 << n)):
            raise ValueError(f"truth table {table:#x} out of range for n={n}")
        self.n = n
        self.table = table

    @classmethod
    def from_marked(cls, n: int, marked: Iterable[int]) -> BooleanOracle:
        table = 0
        for k in marked:
            if not 0 <= k < (1 << n):
                raise ValueError(f"marked element {k} out of range for n={n}")
            table |= 1 << k
        return cls(n, table)

    @classmethod
    def constant(cls, n: int, value: int) -> BooleanOracle:
        if value not in (0, 1):
            raise ValueError("constant oracle value must be 0 or 1")
        return cls(n, ((1 << (1 << n)) - 1) if value else 0)

    def __call__(self, k: int) -> int:
        if not 0 <= k < (1 << self.n):
            raise ValueError(f"input {k} out of range for n={self.n}")
        return (self.table >> k) & 1

    def marked(self) -> tuple[int, ...]:
        return tuple(k for k in range(1 << self.n) if (self.table >> k) & 1)

    @property
    def marked_count(self) -> int:
        return self.table.bit_count()

    def truth_values(self) -> np.ndarray:
        """f(0), ..., f(2^n - 1) as a uint8 array."""
        size = 1 << self.n
        buf = self.table.to_bytes((size + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(buf, np.uint8), bitorder="little")[:size]

    def sign_array(self) -> np.ndarray:
        """(-1)^f(k) for all k, as int64."""
        return 1 - 2 * self.truth_values().astype(np.int64)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BooleanOracle):
            return self.n == other.n and self.table == other.table
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.table))

    def __repr__(self) -> str:
        return f"BooleanOracle(n={self.n}, table={self.table:#x})"


def all_oracles(n: int) -> Iterator[BooleanOracle]:
    """All 2^(2^n) oracles on n bits, in truth-table order."""
    for table in range(1 << (1 << n)):
        yield BooleanOracle(n, table)


def random_oracle(n: int, rng: np.random.Generator) -> BooleanOracle:
    """A uniformly random truth table drawn from ``rng``."""
    nbytes = ((1 << n) + 7) // 8
    table = int.from_bytes(rng.bytes(nbytes), "little")
    return BooleanOracle(n, table & ((1 << (1 << n)) - 1))


class StateVector:
    """Length-2^m amplitude array over the exact or float backend.

    ``StateVector(m)`` is |0...0>.  Gate kernels in :mod:`compsearch.gates`
    mutate states in place; ``copy()`` before applying if the original is
    still needed.
    """

    __slots__ = ("num_qubits", "backend", "_a", "_b", "_h", "_amps")

    def __init__(self, num_qubits: int, backend: str = EXACT) -> None:
        if num_qubits < 1:
            raise ValueError(f"need at least one qubit, got {num_qubits}")
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.num_qubits = num_qubits
        self.backend = backend
        size = 1 << num_qubits
        if backend == EXACT:
            self._a = np.zeros(size, dtype=np.int64)
            self._b = np.zeros(size, dtype=np.int64)
            self._a[0] = 1
            self._h = 0
            self._amps = None
        else:
            self._amps = np.zeros(size, dtype=np.complex128)
            self._amps[0] = 1.0
            self._a = self._b = None
            self._h = 0

    @property
    def num_states(self) -> int:
        return 1 << self.num_qubits

    @classmethod
    def basis_state(cls, num_qubits: int, index: int, backend: str = EXACT) -> StateVector:
        s = cls(num_qubits, backend)
        if not 0 <= index < s.num_states:
            raise ValueError(f"basis index {index} out of range")
        if backend == EXACT:
            s._a[0] = 0
            s._a[index] = 1
        else:
            s._amps[0] = 0.0
            s._amps[index] = 1.0
        return s

    @classmethod
    def from_amplitudes(cls, amps: Sequence, backend: str = EXACT) -> StateVector:
        """Build a state from explicit amplitudes.

        Exact backend accepts DyadicReal or int entries; float accepts
        anything convertible to complex.  The result is not normalized
        here; callers own that invariant.
        """
        size = len(amps)
        if size < 2 or size & (size - 1):
            raise ValueError(f"amplitude count must be a power of two >= 2, got {size}")
        m = size.bit_length() - 1
        s = cls(m, backend)
        if backend == FLOAT:
            s._amps = np.asarray(amps, dtype=np.complex128).copy()
            return s
        vals = [v if isinstance(v, DyadicReal) else DyadicReal.from_int(v) for v in amps]
        h = max(v.h for v in vals)
        s._a = np.array([v.a << (h - v.h) for v in vals], dtype=np.int64)
        s._b = np.array([v.b << (h - v.h) for v in vals], dtype=np.int64)
        s._h = h
        s._canonical_reduce()
        return s

    @classmethod
    def _from_exact_arrays(cls, num_qubits: int, a: np.ndarray, b: np.ndarray, h: int) -> StateVector:
        s = cls(num_qubits, EXACT)
        s._a = np.asarray(a, dtype=np.int64).copy()
        s._b = np.asarray(b, dtype=np.int64).copy()
        s._h = h
        s._canonical_reduce()
        return s

    def copy(self) -> StateVector:
        s = StateVector.__new__(StateVector)
        s.num_qubits = self.num_qubits
        s.backend = self.backend
        s._h = self._h
        if self.backend == EXACT:
            s._a = self._a.copy()
            s._b = self._b.copy()
            s._amps = None
        else:
            s._amps = self._amps.copy()
            s._a = s._b = None
        return s

    def amplitude(self, x: int) -> DyadicReal | complex:
        if not 0 <= x < self.num_states:
            raise ValueError(f"basis index {x} out of range")
        if self.backend == EXACT:
            return DyadicReal(int(self._a[x]), int(self._b[x]), self._h)
        return complex(self._amps[x])

    def amplitudes(self) -> list:
        return [self.amplitude(x) for x in range(self.num_states)]

    def to_float_array(self) -> np.ndarray:
        """Amplitudes as complex128, for either backend."""
        if self.backend == FLOAT:
            return self._amps.copy()
        re = np.ldexp(self._a.astype(np.float64) + SQRT2 * self._b.astype(np.float64), -self._h)
        return re.astype(np.complex128)

    def to_float(self) -> StateVector:
        s = StateVector.__new__(StateVector)
        s.num_qubits = self.num_qubits
        s.backend = FLOAT
        s._amps = self.to_float_array()
        s._a = s._b = None
        s._h = 0
        return s

    def norm_squared(self) -> DyadicReal | float:
        """Sum of squared amplitude magnitudes; exact in the exact backend."""
        if self.backend == FLOAT:
            return float(np.vdot(self._amps, self._amps).real)
        a, b = self._a, self._b
        ma = int(np.abs(a).max(initial=0))
        mb = int(np.abs(b).max(initial=0))
        # (a + b r)^2 = (a^2 + 2 b^2) + (2 a b) r over 2^(2h)
        bound = max(ma * ma + 2 * mb * mb, 2 * ma * mb) * a.size
        if bound < _INT64_SAFE:
            sa = int(np.dot(a, a)) + 2 * int(np.dot(b, b))
            sb = 2 * int(np.dot(a, b))
        else:
            ao = a.astype(object)
            bo = b.astype(object)
            sa = int((ao * ao + 2 * bo * bo).sum())
            sb = int(2 * (ao * bo).sum())
        return DyadicReal(sa, sb, 2 * self._h)

    def is_normalized(self, atol: float = FLOAT_ATOL) -> bool:
        if self.backend == EXACT:
            return self.norm_squared() == 1
        return abs(self.norm_squared() - 1.0) <= atol

    def max_abs_diff(self, other: StateVector) -> float:
        """Largest per-amplitude deviation, comparing via floats.

        Works across backends; for two exact states prefer ``==``.
        """
        if self.num_qubits != other.num_qubits:
            raise ValueError("qubit counts differ")
        return float(np.max(np.abs(self.to_float_array() - other.to_float_array())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        if self.num_qubits != other.num_qubits or self.backend != other.backend:
            return False
        if self.backend == FLOAT:
            return bool(np.array_equal(self._amps, other._amps))
        ha, hb = self._h, other._h
        da, db = max(ha, hb) - ha, max(ha, hb) - hb
        xa, xb = self._a, self._b
        ya, yb = other._a, other._b
        if da or db:
            # Align denominators; fall back to exact Python ints if the
            # shift could overflow int64.
            bits = max(
                int(np.abs(xa).max(initial=0)) | int(np.abs(xb).max(initial=0)),
                int(np.abs(ya).max(initial=0)) | int(np.abs(yb).max(initial=0)),
            ).bit_length()
            if bits + max(da, db) >= 63:
                xa, xb = xa.astype(object) << da, xb.astype(object) << da
                ya, yb = ya.astype(object) << db, yb.astype(object) << db
            else:
                xa, xb = xa << da, xb << da
                ya, yb = ya << db, yb << db
        return bool(np.array_equal(xa, ya) and np.array_equal(xb, yb))

    def __hash__(self) -> None:  # type: ignore[override]
        raise TypeError("StateVector is mutable and unhashable")

    def tensor(self, other: StateVector) -> StateVector:
        """Kronecker product; ``self``'s qubits become the high bits."""
        if self.backend != other.backend:
            raise ValueError("backends differ")
        m = self.num_qubits + other.num_qubits
        if self.backend == FLOAT:
            s = StateVector.__new__(StateVector)
            s.num_qubits = m
            s.backend = FLOAT
            s._amps = np.kron(self._amps, other._amps)
            s._a = s._b = None
            s._h = 0
            return s
        m1 = max(int(np.abs(self._a).max(initial=0)), int(np.abs(self._b).max(initial=0)))
        m2 = max(int(np.abs(other._a).max(initial=0)), int(np.abs(other._b).max(initial=0)))
        if 3 * m1 * m2 >= _INT64_SAFE:
            raise OverflowError("tensor product would exceed int64 amplitude range")
        a = np.kron(self._a, other._a) + 2 * np.kron(self._b, other._b)
        b = np.kron(self._a, other._b) + np.kron(self._b, other._a)
        return StateVector._from_exact_arrays(m, a, b, self._h + other._h)

    def _canonical_reduce(self) -> None:
        """Divide out common powers of two so the shared h is minimal."""
        if self._h == 0:
            return
        mask = int(np.bitwise_or.reduce(np.abs(self._a)) | np.bitwise_or.reduce(np.abs(self._b)))
        if mask == 0:
            self._h = 0
            return
        t = min((mask & -mask).bit_length() - 1, self._h)
        if t:
            self._a >>= t
            self._b >>= t
            self._h -= t

    def _guard_growth(self, factor: int) -> None:
        """Raise before a gate whose outputs could exceed int64."""
        cur = max(int(np.abs(self._a).max(initial=0)), int(np.abs(self._b).max(initial=0)))
        if cur and cur * factor >= _INT64_SAFE:
            raise OverflowError(
                "exact amplitude integers would exceed int64; "
                "state has grown beyond this backend's checked range"
            )

    def _check_finite(self) -> None:
        if not np.all(np.isfinite(self._amps.view(np.float64))):
            raise ArithmeticError("non-finite amplitude in float backend")

    def terms(self, max_terms: int = 16) -> str:
        """Nonzero amplitudes as a ket string, for small states."""
        out = []
        for x in range(self.num_states):
            amp = self.amplitude(x)
            if isinstance(amp, DyadicReal):
                if amp.is_zero:
                    continue
                label = str(amp)
            else:
                if abs(amp) < 1e-14:
                    continue
                label = f"{amp.real:+.6g}" if amp.imag == 0 else f"{amp:.6g}"
            out.append(f"{label}|{x:0{self.num_qubits}b}>")
            if len(out) >= max_terms:
                out.append("...")
                break
        return " ".join(out) if out else "0"

    def __repr__(self) -> str:
        return f"<StateVector {self.num_qubits} qubits, {self.backend}>"
