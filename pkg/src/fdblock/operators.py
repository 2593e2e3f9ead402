"""Classical reference operators on the uniform periodic grid.

The grid on [0,1]^D has N = 2**n points per axis with width h = 1/N; the
endpoint x=1 is excluded (periodic wrap).  Grid values are vectorized
with the axis-0 coordinate fastest-varying, i.e. the flat index of the
point (j0*h, j1*h, ..., j_{D-1}*h) is

    j_{D-1} * N^(D-1) + ... + j_1 * N + j0 .

Matrices are built dense and literal; circulant structure is only
exploited by the roll-based appliers, which evaluate the same stencils
without forming matrices and therefore work beyond the dense cap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ParameterError, ShapeError, SizeError
from .linalg import MATRIX_DIM_CAP, VECTOR_DIM_CAP, ComplexMatrix, kron, norm2


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid: dim axes, n qubits (N = 2**n points) each."""

    dim: int
    n: int

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterError("dim must be >= 1")
        if self.n < 1:
            raise ParameterError("n must be >= 1")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def h(self) -> float:
        return 1.0 / self.N

    @property
    def npoints(self) -> int:
        return self.N**self.dim

    @property
    def num_qubits(self) -> int:
        return self.n * self.dim


@dataclass(frozen=True)
class GridFunction:
    """Normalized samples of a scalar field plus the discarded 2-norm."""

    spec: GridSpec
    values: np.ndarray
    raw_norm: float

    def __post_init__(self):
        if self.values.size != self.spec.npoints:
            raise ShapeError(
                f"{self.values.size} values on a {self.spec.npoints}-point grid"
            )
        if abs(norm2(self.values) - 1.0) > 1e-12:
            raise DegenerateInputError("grid function values must have unit norm")


def lambda_max(dim: int, n: int) -> float:
    """Largest-magnitude eigenvalue 4*dim/h**2 of the discrete Laplacian."""
    h = 1.0 / (1 << n)
    return 4.0 * dim / h**2


def _circulant(n: int, stencil: dict[int, float]) -> ComplexMatrix:
    """N x N circulant; stencil maps offset -> coefficient, offsets mod N.

    Offsets are accumulated, so colliding entries (e.g. +1 and -1 at
    N = 2) sum, exactly as the wrapped stencil does.
    """
    N = 1 << n
    if N > MATRIX_DIM_CAP:
        raise SizeError(f"dimension {N} exceeds dense cap {MATRIX_DIM_CAP}")
    m = np.zeros((N, N), dtype=np.complex128)
    for off, coeff in stencil.items():
        for i in range(N):
            m[i, (i + off) % N] += coeff
    return m


def laplacian_1d(n: int) -> ComplexMatrix:
    """Second-difference operator: diagonal -2/h^2, neighbors (and wrap) 1/h^2."""
    h = 1.0 / (1 << n)
    return _circulant(n, {0: -2.0 / h**2, 1: 1.0 / h**2, -1: 1.0 / h**2})


def scaled_laplacian_1d(n: int) -> ComplexMatrix:
    """laplacian_1d divided by its largest eigenvalue magnitude 4/h^2."""
    return laplacian_1d(n) / lambda_max(1, n)


def laplacian_dd(dim: int, n: int) -> ComplexMatrix:
    """Tensor sum of 1-d Laplacians: sum_d I x .. x L x .. x I (axis d)."""
    N = 1 << n
    if N**dim > MATRIX_DIM_CAP:
        raise SizeError(f"dimension {N**dim} exceeds dense cap {MATRIX_DIM_CAP}")
    l1 = laplacian_1d(n)
    eye = np.eye(N, dtype=np.complex128)
    total = np.zeros((N**dim, N**dim), dtype=np.complex128)
    for d in range(dim):
        term = np.eye(1, dtype=np.complex128)
        for axis in range(dim - 1, -1, -1):  # most significant factor first
            term = kron(term, l1 if axis == d else eye)
        total += term
    return total


def scaled_laplacian_dd(dim: int, n: int) -> ComplexMatrix:
    """laplacian_dd divided by 4*dim/h^2; spectral norm 1."""
    return laplacian_dd(dim, n) / lambda_max(dim, n)


def central_difference_1d(n: int) -> ComplexMatrix:
    """Antisymmetric first-difference operator with entries +-1/(2h)."""
    h = 1.0 / (1 << n)
    return _circulant(n, {1: 1.0 / (2 * h), -1: -1.0 / (2 * h)})


def trapezoid_1d(n: int) -> ComplexMatrix:
    """Row-wise trapezoidal quadrature weights h/2 * (1, 2, 1)."""
    h = 1.0 / (1 << n)
    return _circulant(n, {0: h, 1: h / 2, -1: h / 2})


def banded_circulant(n: int, a0: float, a1: float, am1: float) -> ComplexMatrix:
    """Circulant with diagonal a0, superdiagonal am1, subdiagonal a1 (wrapped)."""
    return _circulant(n, {0: a0, 1: am1, -1: a1})


def first_order_tensorized(axis: int, dim: int, n: int) -> ComplexMatrix:
    """h*central_difference placed on one axis of a 2-d grid."""
    if dim != 2:
        raise ParameterError(f"only dim=2 is supported, got {dim}")
    if axis not in (0, 1):
        raise ParameterError(f"axis must be 0 or 1, got {axis}")
    N = 1 << n
    h = 1.0 / N
    d1 = h * central_difference_1d(n)
    eye = np.eye(N, dtype=np.complex128)
    return kron(eye, d1) if axis == 0 else kron(d1, eye)


def grid_axes(spec: GridSpec) -> list[np.ndarray]:
    """Coordinate arrays (x0, ..., x_{D-1}) broadcast over the grid tensor.

    The returned arrays have shape (N,)*dim with tensor axis a holding
    coordinate x_{dim-1-a}, matching the vectorization order.
    """
    pts = np.arange(spec.N) * spec.h
    mesh = np.meshgrid(*([pts] * spec.dim), indexing="ij")
    return [mesh[spec.dim - 1 - d] for d in range(spec.dim)]


def sample_grid(f, spec: GridSpec) -> np.ndarray:
    """Raw (unnormalized) samples of f on the grid, flattened."""
    if spec.npoints > VECTOR_DIM_CAP:
        raise SizeError(f"{spec.npoints} grid points exceed cap {VECTOR_DIM_CAP}")
    vals = np.asarray(f(*grid_axes(spec)), dtype=np.complex128)
    if vals.shape != (spec.N,) * spec.dim:
        raise ShapeError(f"field returned shape {vals.shape}")
    if np.max(np.abs(vals.imag)) > 0.0:
        raise ParameterError("scalar fields must be real-valued")
    if not np.all(np.isfinite(vals.real)):
        raise ShapeError("field samples must be finite")
    return vals.reshape(-1)


def sample_function(f, spec: GridSpec) -> GridFunction:
    """Sample f, normalize to unit 2-norm, and keep the raw norm."""
    vals = sample_grid(f, spec)
    raw = norm2(vals)
    if raw == 0.0:
        raise DegenerateInputError("all samples are zero; cannot normalize")
    return GridFunction(spec, vals / raw, raw)


def _as_grid_tensor(spec: GridSpec, values: np.ndarray) -> np.ndarray:
    v = np.asarray(values, dtype=np.complex128)
    if v.size != spec.npoints:
        raise ShapeError(f"expected {spec.npoints} values, got {v.size}")
    return v.reshape((spec.N,) * spec.dim)


def apply_laplacian(spec: GridSpec, values: np.ndarray) -> np.ndarray:
    """Second-difference stencil applied via rolls; same result as the matrix."""
    v = _as_grid_tensor(spec, values)
    out = np.zeros_like(v)
    for d in range(spec.dim):
        ax = spec.dim - 1 - d
        out += np.roll(v, 1, axis=ax) + np.roll(v, -1, axis=ax) - 2.0 * v
    return (out / spec.h**2).reshape(-1)


def apply_scaled_laplacian(spec: GridSpec, values: np.ndarray) -> np.ndarray:
    """apply_laplacian divided by 4*dim/h^2."""
    return apply_laplacian(spec, values) / lambda_max(spec.dim, spec.n)


def apply_banded(a0: float, a1: float, am1: float, values: np.ndarray) -> np.ndarray:
    """1-d circulant with diagonal a0, superdiagonal am1, subdiagonal a1."""
    v = np.asarray(values, dtype=np.complex128)
    return a0 * v + am1 * np.roll(v, -1) + a1 * np.roll(v, 1)


def apply_first_order(axis: int, spec: GridSpec, values: np.ndarray) -> np.ndarray:
    """Scaled central difference h*D along one axis, via rolls."""
    if not 0 <= axis < spec.dim:
        raise ParameterError(f"axis {axis} out of range for dim {spec.dim}")
    v = _as_grid_tensor(spec, values)
    ax = spec.dim - 1 - axis
    return (0.5 * (np.roll(v, -1, axis=ax) - np.roll(v, 1, axis=ax))).reshape(-1)
