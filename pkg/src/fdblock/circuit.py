"""Gate-level circuit IR and dense statevector simulation.

Conventions
-----------
Qubit 0 carries the *most significant* bit of the basis index (big
endian): the basis state |b0 b1 ... b_{n-1}> has index
b0*2^(n-1) + b1*2^(n-2) + ... + b_{n-1}.  With numpy's C-order reshape of
a statevector to shape (2,)*n, tensor axis q is exactly qubit q.

Gates are listed in application order (first gate acts first).  A
controlled gate acts as the identity unless every control qubit matches
its polarity (1 = filled control, 0 = open control).

Register layouts name contiguous qubit groups from most significant to
least significant; for a layout [anc: m][sys: k] the composite basis
index of |a>|s> is a*2^k + s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import LayoutError, QubitIndexError, ShapeError, SizeError

GATE_KINDS = ("X", "Y", "Z", "H", "RY")

# Simulation caps: statevectors up to 18 qubits, full unitaries up to 12.
MAX_SIM_QUBITS = 18
MAX_UNITARY_QUBITS = 12

_RSQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """One gate: kind, target qubit, (qubit, polarity) controls, RY angle."""

    kind: str
    target: int
    controls: tuple[tuple[int, int], ...] = ()
    theta: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise QubitIndexError(f"unknown gate kind {self.kind!r}")
        if self.kind == "RY":
            if self.theta is None or not math.isfinite(self.theta):
                raise QubitIndexError("RY needs a finite angle")
        elif self.theta is not None:
            raise QubitIndexError(f"{self.kind} takes no angle")
        qubits = [q for q, _ in self.controls]
        if self.target in qubits:
            raise QubitIndexError(f"target {self.target} also appears as control")
        if len(set(qubits)) != len(qubits):
            raise QubitIndexError("duplicate control qubits")
        for q, pol in self.controls:
            if pol not in (0, 1):
                raise QubitIndexError(f"control polarity must be 0 or 1, got {pol}")
            if q < 0:
                raise QubitIndexError(f"negative qubit index {q}")
        if self.target < 0:
            raise QubitIndexError(f"negative qubit index {self.target}")


@dataclass(frozen=True)
class RegisterLayout:
    """Named registers, most significant first, e.g. (("l", 2), ("j", 3))."""

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.registers]
        if len(set(names)) != len(names):
            raise LayoutError("duplicate register names")
        for name, width in self.registers:
            if width < 1:
                raise LayoutError(f"register {name!r} must have width >= 1")

    @property
    def num_qubits(self) -> int:
        return sum(width for _, width in self.registers)

    def offset(self, name: str) -> int:
        """Index of the register's most significant qubit."""
        pos = 0
        for reg, width in self.registers:
            if reg == name:
                return pos
            pos += width
        raise LayoutError(f"no register named {name!r}")

    def width(self, name: str) -> int:
        for reg, width in self.registers:
            if reg == name:
                return width
        raise LayoutError(f"no register named {name!r}")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on num_qubits wires, with an optional layout."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    layout: RegisterLayout | None = field(default=None)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise QubitIndexError("circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            used = [g.target] + [q for q, _ in g.controls]
            if max(used) >= self.num_qubits:
                raise QubitIndexError(
                    f"gate touches qubit {max(used)} on a {self.num_qubits}-qubit circuit"
                )
        if self.layout is not None and self.layout.num_qubits != self.num_qubits:
            raise LayoutError(
                f"layout covers {self.layout.num_qubits} qubits, circuit has {self.num_qubits}"
            )

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits


def _run_gates(gates, psi: np.ndarray, num_qubits: int) -> np.ndarray:
    """Apply gates in order to psi of shape (2,)*num_qubits (+ batch axes)."""
    for g in gates:
        sel0 = [slice(None)] * psi.ndim
        for q, pol in g.controls:
            sel0[q] = pol
        sel1 = list(sel0)
        sel0[g.target] = 0
        sel1[g.target] = 1
        i0, i1 = tuple(sel0), tuple(sel1)
        if g.kind == "X":
            a = psi[i0].copy()
            psi[i0] = psi[i1]
            psi[i1] = a
        elif g.kind == "Z":
            psi[i1] = -psi[i1]
        elif g.kind == "Y":
            a = psi[i0].copy()
            psi[i0] = -1j * psi[i1]
            psi[i1] = 1j * a
        elif g.kind == "H":
            a = psi[i0].copy()
            b = psi[i1].copy()
            psi[i0] = (a + b) * _RSQRT2
            psi[i1] = (a - b) * _RSQRT2
        else:  # RY
            c = math.cos(g.theta / 2.0)
            s = math.sin(g.theta / 2.0)
            a = psi[i0].copy()
            b = psi[i1].copy()
            psi[i0] = c * a - s * b
            psi[i1] = s * a + c * b
    return psi


def apply(circuit: Circuit, vec) -> np.ndarray:
    """Return U_c @ vec where U_c is the ordered product of the gates.

    Statevectors are capped at MAX_SIM_QUBITS wires (larger than the
    grid-vector cap in linalg, which governs sampled functions).
    """
    if circuit.num_qubits > MAX_SIM_QUBITS:
        raise SizeError(
            f"{circuit.num_qubits} qubits exceeds the statevector cap {MAX_SIM_QUBITS}"
        )
    v = np.asarray(vec, dtype=np.complex128)
    if v.ndim != 1 or v.size != circuit.dim:
        raise ShapeError(f"vector shape {v.shape} != (2**{circuit.num_qubits},)")
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ShapeError("vector entries must be finite")
    psi = v.copy().reshape((2,) * circuit.num_qubits)
    return _run_gates(circuit.gates, psi, circuit.num_qubits).reshape(-1)


def apply_to_columns(circuit: Circuit, mat: np.ndarray) -> np.ndarray:
    """Apply the circuit to every column of a (2**n, k) array at once."""
    if circuit.num_qubits > MAX_SIM_QUBITS:
        raise SizeError(
            f"{circuit.num_qubits} qubits exceeds the statevector cap {MAX_SIM_QUBITS}"
        )
    m = np.asarray(mat, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != circuit.dim:
        raise ShapeError(f"expected shape ({circuit.dim}, k), got {m.shape}")
    psi = m.copy().reshape((2,) * circuit.num_qubits + (m.shape[1],))
    return _run_gates(circuit.gates, psi, circuit.num_qubits).reshape(circuit.dim, m.shape[1])


def unitary(circuit: Circuit) -> np.ndarray:
    """Full matrix of the circuit; column j equals apply(circuit, |j>)."""
    if circuit.num_qubits > MAX_UNITARY_QUBITS:
        raise SizeError(
            f"{circuit.num_qubits} qubits exceeds the full-unitary cap {MAX_UNITARY_QUBITS}"
        )
    return apply_to_columns(circuit, np.eye(circuit.dim, dtype=np.complex128))


def controlled(circuit: Circuit, controls) -> Circuit:
    """Add the given (qubit, polarity) controls to every gate.

    The controlled version of a composite equals the composite of the
    controlled gates, so this implements boxed-integer control of a whole
    subcircuit.  Control qubits must not be acted on by the circuit.
    """
    controls = tuple((int(q), int(p)) for q, p in controls)
    acted = set()
    for g in circuit.gates:
        acted.add(g.target)
        acted.update(q for q, _ in g.controls)
    overlap = acted & {q for q, _ in controls}
    if overlap:
        raise QubitIndexError(f"controls {sorted(overlap)} overlap the circuit's qubits")
    gates = tuple(
        Gate(g.kind, g.target, controls + g.controls, g.theta) for g in circuit.gates
    )
    return Circuit(circuit.num_qubits, gates, circuit.layout)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Gates of a followed by gates of b."""
    if a.num_qubits != b.num_qubits:
        raise LayoutError(f"qubit counts differ: {a.num_qubits} vs {b.num_qubits}")
    if a.layout != b.layout:
        raise LayoutError("register layouts differ")
    return Circuit(a.num_qubits, a.gates + b.gates, a.layout)


def export_text(circuit: Circuit) -> str:
    """One gate per line: ``KIND target [ctrl:+q|-q ...] [theta=<float>]``."""
    lines = []
    for g in circuit.gates:
        parts = [g.kind, str(g.target)]
        parts.extend(f"ctrl:{'+' if pol else '-'}{q}" for q, pol in g.controls)
        if g.kind == "RY":
            parts.append(f"theta={g.theta:.17g}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")
