"""Builders for the block-encoding circuits.

Every builder returns a :class:`BlockEncoding` whose ancilla wires are
the most significant qubits, so the encoded operator sits in the block
U[row*N : (row+1)*N, col*N : (col+1)*N] with row = col = 0 selecting the
all-zero ancilla state.

The cyclic shifts S+ and S- are cascades of multi-controlled X gates.
Controls of each cascade gate are stored innermost-last (least
significant cascade control appended last); builders prepend their own
selection controls, which keeps control tuples of consecutive cascade
gates prefix-nested.  The resource model exploits that nesting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, Gate, RegisterLayout
from .errors import ParameterError, SizeError

Control = tuple[int, int]


@dataclass(frozen=True)
class BlockEncoding:
    """Circuit plus its declared (m, alpha, system size) contract."""

    circuit: Circuit
    m: int
    alpha: float
    system_dim: int
    label: str

    def __post_init__(self):
        system_qubits = self.system_dim.bit_length() - 1
        if 1 << system_qubits != self.system_dim:
            raise ParameterError(f"system_dim {self.system_dim} is not a power of two")
        if self.circuit.num_qubits != self.m + system_qubits:
            raise ParameterError(
                f"{self.circuit.num_qubits} qubits != m={self.m} + {system_qubits} system qubits"
            )
        if abs(self.alpha) > 1.0:
            raise ParameterError(f"|alpha| = {abs(self.alpha)} exceeds 1")


def alpha_d(dim: int) -> float:
    """Sub-normalization dim / 2**ceil(log2 dim); 1 when dim is a power of two."""
    if dim < 1:
        raise ParameterError("dim must be >= 1")
    return dim / (1 << ancilla_axis_qubits(dim))


def ancilla_axis_qubits(dim: int) -> int:
    """ceil(log2 dim): width of the axis-selection register."""
    if dim < 1:
        raise ParameterError("dim must be >= 1")
    return (dim - 1).bit_length()


def _shift_gates(direction: int, n: int, offset: int, prefix: tuple[Control, ...]):
    """Cascade of multi-controlled X implementing |j> -> |j + direction mod 2**n>.

    Wires offset..offset+n-1 hold j big-endian.  The decrement flips the
    least significant wire first and ripples borrows upward; the
    increment runs the reverse cascade.  ``prefix`` controls are
    prepended to every gate.
    """
    lo, hi = offset, offset + n - 1
    targets = range(hi, lo - 1, -1) if direction < 0 else range(lo, hi + 1)
    gates = []
    for t in targets:
        cascade = tuple((c, 1) for c in range(hi, t, -1))
        gates.append(Gate("X", t, prefix + cascade))
    return gates


def shift_circuit(direction: int, n: int) -> Circuit:
    """Standalone cyclic shift by +-1 on an n-qubit register."""
    if direction not in (1, -1):
        raise ParameterError(f"direction must be +1 or -1, got {direction}")
    if n < 1:
        raise ParameterError("n must be >= 1")
    layout = RegisterLayout((("j", n),))
    return Circuit(n, tuple(_shift_gates(direction, n, 0, ())), layout)


# Builders only assemble gate lists, so they allow circuits beyond the
# statevector cap; apply/unitary/extract enforce the simulation limits.
MAX_BUILD_QUBITS = 64


def _check_build_size(num_qubits: int):
    if num_qubits > MAX_BUILD_QUBITS:
        raise SizeError(f"{num_qubits} qubits is beyond the supported range")


def encode_laplace_1d(n: int) -> BlockEncoding:
    """Two-ancilla encoding of the scaled 1-d periodic second difference.

    Layout [l:2][j:n]; m = 2, alpha = 1.  The (0,0) block is the
    circulant with diagonal -1/2 and neighbor entries 1/4.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    _check_build_size(n + 2)
    l0, l1 = 0, 1
    gates = [Gate("H", l0), Gate("H", l1), Gate("Z", l0), Gate("Z", l1)]
    gates += _shift_gates(-1, n, 2, ((l1, 0),))
    gates += _shift_gates(+1, n, 2, ((l0, 1),))
    gates += [Gate("H", l0), Gate("H", l1)]
    layout = RegisterLayout((("l", 2), ("j", n)))
    circuit = Circuit(n + 2, tuple(gates), layout)
    return BlockEncoding(circuit, 2, 1.0, 1 << n, f"laplace_1d n={n}")


def encode_laplace_dd(dim: int, n: int) -> BlockEncoding:
    """Encoding of the scaled D-dim Laplacian; m = 2 + ceil(log2 D).

    Layout [k:dhat][l:2][j(D-1):n]...[j(0):n].  A uniform superposition
    over the axis register k selects which axis register is shifted;
    axis patterns k >= dim leave the grid registers untouched, which is
    what makes alpha = dim/2**dhat when dim is not a power of two.
    """
    if dim < 1:
        raise ParameterError("dim must be >= 1")
    if n < 1:
        raise ParameterError("n must be >= 1")
    if dim == 1:
        return encode_laplace_1d(n)
    dhat = ancilla_axis_qubits(dim)
    m = 2 + dhat
    _check_build_size(m + n * dim)
    l0, l1 = dhat, dhat + 1

    def axis_offset(d: int) -> int:
        return m + (dim - 1 - d) * n

    gates = [Gate("H", k) for k in range(dhat)]
    gates += [Gate("H", l0), Gate("H", l1), Gate("Z", l0), Gate("Z", l1)]
    for d in range(dim):
        pattern = tuple((b, (d >> (dhat - 1 - b)) & 1) for b in range(dhat))
        gates += _shift_gates(-1, n, axis_offset(d), pattern + ((l1, 0),))
        gates += _shift_gates(+1, n, axis_offset(d), pattern + ((l0, 1),))
    gates += [Gate("H", l0), Gate("H", l1)]
    gates += [Gate("H", k) for k in range(dhat)]

    registers = [("k", dhat), ("l", 2)]
    registers += [(f"j{d}", n) for d in range(dim - 1, -1, -1)]
    circuit = Circuit(m + n * dim, tuple(gates), RegisterLayout(tuple(registers)))
    system_dim = 1 << (n * dim)
    return BlockEncoding(circuit, m, alpha_d(dim), system_dim, f"laplace_dd D={dim} n={n}")


def _banded_circuit(n: int, a0: float, a1: float, am1: float) -> Circuit:
    if n < 1:
        raise ParameterError("n must be >= 1")
    if a0 <= 0.0:
        raise ParameterError("a0 must be positive")
    for name, val in (("a0-1", a0 - 1.0), ("a1", a1), ("am1", am1)):
        if abs(val) > 1.0:
            raise ParameterError(f"|{name}| = {abs(val)} > 1: arccos undefined")
    _check_build_size(n + 3)
    l0, l1, anc = 0, 1, 2
    theta0 = 2.0 * math.acos(a0 - 1.0)
    theta1 = 2.0 * math.acos(a1)
    theta2 = 2.0 * math.acos(am1)
    gates = [Gate("H", l0), Gate("H", l1)]
    gates += [
        Gate("RY", anc, ((l0, 0), (l1, 0)), theta0),
        Gate("RY", anc, ((l0, 1), (l1, 0)), theta1),
        Gate("RY", anc, ((l0, 0), (l1, 1)), theta2),
    ]
    gates += _shift_gates(-1, n, 3, ((l1, 1),))
    gates += _shift_gates(+1, n, 3, ((l0, 1),))
    gates += [Gate("H", l0), Gate("H", l1)]
    layout = RegisterLayout((("l", 2), ("a", 1), ("j", n)))
    return Circuit(n + 3, tuple(gates), layout)


def encode_banded_lcu(n: int, a0: float, a1: float, am1: float) -> BlockEncoding:
    """Rotation-based encoding of the banded circulant with row (a0, am1, .., a1).

    Layout [l:2][a:1][j:n]; m = 3.  The (0,0) block is A/4, so alpha is
    1/4 with the banded matrix itself as the target.
    """
    circuit = _banded_circuit(n, a0, a1, am1)
    label = f"banded_lcu n={n} a0={a0!r} a1={a1!r} am1={am1!r}"
    return BlockEncoding(circuit, 3, 0.25, 1 << n, label)


def encode_laplace_1d_lcu(n: int) -> BlockEncoding:
    """Banded-circulant instance encoding -1/4 times the scaled 1-d Laplacian.

    Coefficients (1/2, -1/4, -1/4) make A the negated scaled Laplacian,
    so the (0,0) block equals alpha = -1/4 times the scaled Laplacian.
    """
    circuit = _banded_circuit(n, 0.5, -0.25, -0.25)
    return BlockEncoding(circuit, 3, -0.25, 1 << n, f"laplace_1d_lcu n={n}")


def encode_derivative_1d(n: int) -> BlockEncoding:
    """Single-ancilla encoding of the scaled central difference h*D.

    Layout [l:1][j:n]; m = 1, alpha = 1.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    _check_build_size(n + 1)
    gates = [Gate("H", 0), Gate("Z", 0)]
    gates += _shift_gates(-1, n, 1, ((0, 0),))
    gates += _shift_gates(+1, n, 1, ((0, 1),))
    gates += [Gate("H", 0)]
    layout = RegisterLayout((("l", 1), ("j", n)))
    circuit = Circuit(n + 1, tuple(gates), layout)
    return BlockEncoding(circuit, 1, 1.0, 1 << n, f"derivative_1d n={n}")


def _axis_shifts_2d(n: int, k: int, l: int, offset1: int, offset0: int):
    """Axis-selected shifts shared by the 2-d first-order encodings."""
    gates = []
    gates += _shift_gates(-1, n, offset0, ((k, 0), (l, 0)))
    gates += _shift_gates(+1, n, offset0, ((k, 0), (l, 1)))
    gates += _shift_gates(-1, n, offset1, ((k, 1), (l, 0)))
    gates += _shift_gates(+1, n, offset1, ((k, 1), (l, 1)))
    return gates


def encode_gradient_2d(n: int) -> BlockEncoding:
    """Encoding stacking both axis derivatives in the first block column.

    Layout [l:1][k:1][j1:n][j0:n]; m = 2, alpha = 1/sqrt(2).  Block (0,0)
    is the axis-0 derivative, block (1,0) the axis-1 derivative, each
    times 1/sqrt(2).
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    _check_build_size(2 * n + 2)
    l, k = 0, 1
    off1, off0 = 2, 2 + n
    gates = [Gate("H", k), Gate("H", l), Gate("Z", l)]
    gates += _axis_shifts_2d(n, k, l, off1, off0)
    gates += [Gate("H", l)]
    layout = RegisterLayout((("l", 1), ("k", 1), ("j1", n), ("j0", n)))
    circuit = Circuit(2 * n + 2, tuple(gates), layout)
    return BlockEncoding(circuit, 2, 1.0 / math.sqrt(2.0), 1 << (2 * n), f"gradient_2d n={n}")


def encode_divergence_2d(n: int) -> BlockEncoding:
    """Encoding placing both axis derivatives in the first block row.

    Same layout and contract as the gradient; the axis register is mixed
    after the shifts instead of before.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    _check_build_size(2 * n + 2)
    l, k = 0, 1
    off1, off0 = 2, 2 + n
    gates = [Gate("H", l), Gate("Z", l)]
    gates += _axis_shifts_2d(n, k, l, off1, off0)
    gates += [Gate("H", l), Gate("H", k)]
    layout = RegisterLayout((("l", 1), ("k", 1), ("j1", n), ("j0", n)))
    circuit = Circuit(2 * n + 2, tuple(gates), layout)
    return BlockEncoding(circuit, 2, 1.0 / math.sqrt(2.0), 1 << (2 * n), f"divergence_2d n={n}")


def encode_wave_2d(n: int) -> BlockEncoding:
    """Encoding of the first-order wave operator on a 2-d grid.

    Layout [l:1][k0:1][k1:1][j1:n][j0:n]; m = 3, alpha = 1/sqrt(2).
    Components are indexed by (k0, k1) within the zero-l block grid:
    the pressure component 2 couples to the velocity components 0 and 1
    through the axis derivatives, the antidiagonal pattern

        block(0,2) = block(2,0) = axis-0 derivative / sqrt(2)
        block(1,2) = block(2,1) = axis-1 derivative / sqrt(2)

    with blocks (0,0), (0,1), (1,0), (1,1), (2,2) all zero.  k1 selects
    the shifted axis; a Hadamard on k1 fans the pressure component out
    over both axes on the way in (k0 = 1) and collects the velocity
    components on the way out (k0 = 0).  The closing X on k0 swaps the
    velocity and pressure halves so that input and output components are
    indexed identically.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    _check_build_size(2 * n + 3)
    l, k0, k1 = 0, 1, 2
    off1, off0 = 3, 3 + n
    gates = [Gate("H", k1, ((k0, 1),)), Gate("H", l), Gate("Z", l)]
    gates += _axis_shifts_2d(n, k1, l, off1, off0)
    gates += [Gate("H", l), Gate("H", k1, ((k0, 0),)), Gate("X", k0)]
    layout = RegisterLayout((("l", 1), ("k0", 1), ("k1", 1), ("j1", n), ("j0", n)))
    circuit = Circuit(2 * n + 3, tuple(gates), layout)
    return BlockEncoding(circuit, 3, 1.0 / math.sqrt(2.0), 1 << (2 * n), f"wave_2d n={n}")
