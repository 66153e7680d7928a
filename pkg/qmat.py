# qmat.py
"""Small dense complex linear algebra for two-qubit games.

Basis order for two qubits is |00>, |01>, |10>, |11>, Alice's qubit in the
left slot, so `kron(u_a, u_b)` acts with u_a on Alice and u_b on Bob.
Matrices are immutable values; every operation returns a fresh matrix.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

import config
from errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]
NORM_TOL = 1e-9


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    entries: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.entries)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError(f"matrix must be 2-D and non-empty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("matrix entries must be finite")
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "ComplexMatrix":
        return cls(np.array(rows, dtype=np.complex128))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def diag(cls, values: Iterable[Number]) -> "ComplexMatrix":
        return cls(np.diag(np.asarray(list(values), dtype=np.complex128)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ComplexMatrix":
        return cls(np.zeros((rows, cols), dtype=np.complex128))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        return complex(self.entries[idx])

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}",
                                 details={"left": self.shape, "right": other.shape})
        return ComplexMatrix(self.entries + other.entries)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return self + other.scale(-1)

    def scale(self, factor: Number) -> "ComplexMatrix":
        return ComplexMatrix(self.entries * factor)

    def __rmul__(self, factor: Number) -> "ComplexMatrix":
        return self.scale(factor)

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return matmul(self, other)

    def allclose(self, other: "ComplexMatrix", tol: float = config.PAYOFF_TOL) -> bool:
        if self.shape != other.shape:
            return False
        return bool(np.max(np.abs(self.entries - other.entries)) <= tol)

    def is_hermitian(self, tol: float = config.PAYOFF_TOL) -> bool:
        return self.is_square and self.allclose(adjoint(self), tol)

    def is_diagonal(self, tol: float = 0.0) -> bool:
        if not self.is_square:
            return False
        off = self.entries - np.diag(np.diag(self.entries))
        return bool(np.max(np.abs(off)) <= tol)

    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).copy()

    def __repr__(self) -> str:
        return f"ComplexMatrix({self.rows}x{self.cols}, {self.entries.tolist()!r})"


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size != 4:
            raise DimensionError(f"two-qubit state needs 4 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise DomainError("amplitudes must be finite")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized (squared norm {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amplitudes: Sequence[Number]) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise DomainError("cannot normalize the zero vector")
        return cls(amps / norm)

    @classmethod
    def basis(cls, bits: str) -> "StateVector":
        if bits not in ("00", "01", "10", "11"):
            raise DomainError(f"unknown basis label {bits!r}")
        amps = np.zeros(4, dtype=np.complex128)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    def apply(self, op: ComplexMatrix) -> "StateVector":
        if op.shape != (4, 4):
            raise DimensionError(f"operator shape {op.shape} does not act on a two-qubit state")
        return StateVector(op.entries @ self.amplitudes)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


# single-qubit constants
I2 = ComplexMatrix.identity(2)
X = ComplexMatrix.from_rows([[0, 1], [1, 0]])
Z = ComplexMatrix.from_rows([[1, 0], [0, -1]])
I4 = ComplexMatrix.identity(4)


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}",
                             details={"left": a.shape, "right": b.shape})
    return ComplexMatrix(a.entries @ b.entries)


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return ComplexMatrix(np.kron(a.entries, b.entries))


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    return ComplexMatrix(a.entries.conj().T)


def trace(a: ComplexMatrix) -> complex:
    if not a.is_square:
        raise DimensionError(f"trace needs a square matrix, got {a.rows}x{a.cols}",
                             details={"shape": a.shape})
    return complex(np.trace(a.entries))


def outer(s: StateVector) -> ComplexMatrix:
    """|s><s| as a 4x4 projector."""
    return ComplexMatrix(np.outer(s.amplitudes, s.amplitudes.conj()))


def is_unitary(a: ComplexMatrix, tol: float = config.UNITARY_TOL) -> bool:
    if not a.is_square:
        raise DimensionError(f"unitarity needs a square matrix, got {a.rows}x{a.cols}",
                             details={"shape": a.shape})
    residue = a.entries.conj().T @ a.entries - np.eye(a.rows)
    return bool(np.max(np.abs(residue)) <= tol)


def conjugate(u: ComplexMatrix, rho: ComplexMatrix) -> ComplexMatrix:
    """u rho u^dagger."""
    return matmul(matmul(u, rho), adjoint(u))
