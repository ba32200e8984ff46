"""Phase tables, phase states, density matrices and partial traces.

Qubit 1 is the most significant bit of a basis index: for ``n = 3`` the index
``j = 4`` is ``|100>``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    EmptyKeepSet,
    IndexOutOfRange,
    InvalidQubitIndex,
    ParseError,
    QOutOfRange,
    StateError,
)
from .linalg import hermiticity_error

TWO_PI = 2.0 * math.pi

#: Default guard on register size; density matrices are dense (4**n entries).
MAX_QUBITS = 10


def wrap_angle(x):
    """Reduce angles into ``[0, 2*pi)``."""
    r = np.mod(x, TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs.
    return np.where(r >= TWO_PI, 0.0, r)


def wrap_residual(x):
    """Reduce angle differences into ``(-pi, pi]``."""
    r = np.pi - np.mod(np.pi - np.asarray(x, dtype=float), TWO_PI)
    return r


def _check_n(n: int, max_qubits: int | None) -> None:
    if n < 1:
        raise StateError(f"qubit count must be >= 1, got {n}")
    limit = MAX_QUBITS if max_qubits is None else max_qubits
    if n > limit:
        raise StateError(f"n={n} exceeds the size guard of {limit} qubits")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PhaseTable:
    """Global phase function ``f: {0..2**n-1} -> [0, 2*pi)``."""

    n: int
    phases: np.ndarray

    def __init__(self, n: int, phases: Iterable[float], max_qubits: int | None = None):
        n = int(n)
        _check_n(n, max_qubits)
        p = np.array(list(phases) if not isinstance(phases, np.ndarray) else phases, dtype=float)
        if p.shape != (2**n,):
            raise StateError(f"expected {2**n} phases for n={n}, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise StateError("phases must be finite")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "phases", _frozen(wrap_angle(p).astype(float)))

    def __len__(self) -> int:
        return self.phases.size

    def __getitem__(self, j: int) -> float:
        return float(self.phases[j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.phases, other.phases)

    def __add__(self, other: "PhaseTable") -> "PhaseTable":
        if self.n != other.n:
            raise StateError("cannot add phase tables of different size")
        return PhaseTable(self.n, self.phases + other.phases)

    @classmethod
    def constant(cls, n: int, c: float = 0.0) -> "PhaseTable":
        return cls(n, np.full(2**n, float(c)))

    @classmethod
    def single(cls, n: int, j: int, theta: float) -> "PhaseTable":
        """All phases zero except ``f(j) = theta``."""
        p = np.zeros(2**n)
        p[j] = theta
        return cls(n, p)

    @classmethod
    def from_dict(cls, d: dict) -> "PhaseTable":
        try:
            return cls(int(d["n"]), [float(x) for x in d["phases"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid phase table: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "PhaseTable":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ParseError("phase table JSON must be an object")
        return cls.from_dict(d)

    @classmethod
    def load(cls, path: str | Path) -> "PhaseTable":
        return cls.from_json(Path(path).read_text())

    def to_dict(self) -> dict:
        return {"n": self.n, "phases": [float(x) for x in self.phases]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True, eq=False)
class PureState:
    n: int
    amplitudes: np.ndarray

    def __init__(self, n: int, amplitudes, atol: float = 1e-12):
        a = np.array(amplitudes, dtype=np.complex128)
        if a.shape != (2**n,):
            raise StateError(f"expected {2**n} amplitudes for n={n}, got shape {a.shape}")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > atol:
            raise StateError(f"state is not normalized: <psi|psi> = {norm!r}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "amplitudes", _frozen(a))

    @classmethod
    def basis(cls, n: int, j: int = 0) -> "PureState":
        a = np.zeros(2**n, dtype=np.complex128)
        a[j] = 1.0
        return cls(n, a)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on ``n`` qubits.

    Hermiticity and trace are checked on construction. Positivity is not
    re-verified here (that needs an eigendecomposition); builders in this
    module only produce PSD matrices.
    """

    n: int
    matrix: np.ndarray

    def __init__(self, n: int, matrix, atol: float = 1e-12):
        m = np.array(matrix, dtype=np.complex128)
        d = 2**n
        if m.shape != (d, d):
            raise StateError(f"expected a {d}x{d} matrix for n={n}, got {m.shape}")
        herr = hermiticity_error(m)
        if herr > atol:
            raise StateError(f"density matrix not Hermitian (max deviation {herr:.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > atol:
            raise StateError(f"density matrix trace is {tr!r}, expected 1")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def allclose(self, other: "DensityMatrix | np.ndarray", atol: float = 1e-12) -> bool:
        m = other.matrix if isinstance(other, DensityMatrix) else np.asarray(other)
        return m.shape == self.matrix.shape and bool(np.allclose(self.matrix, m, rtol=0, atol=atol))


def build_phase_state(t: PhaseTable) -> PureState:
    amps = np.exp(1j * t.phases) / math.sqrt(2**t.n)
    return PureState(t.n, amps)


def density_of(s: PureState) -> DensityMatrix:
    a = s.amplitudes
    return DensityMatrix(s.n, np.outer(a, a.conj()))


def apply_phase(rho: DensityMatrix, j: int, theta: float) -> DensityMatrix:
    """Conjugate ``rho`` by ``diag(1, .., exp(i*theta) at j, .., 1)``."""
    if not 0 <= j < rho.dim:
        raise IndexOutOfRange(f"basis index {j} outside [0, {rho.dim})")
    u = np.ones(rho.dim, dtype=np.complex128)
    u[j] = np.exp(1j * theta)
    return apply_diagonal_unitary(rho, u)


def apply_diagonal_unitary(rho: DensityMatrix, diag) -> DensityMatrix:
    u = np.asarray(diag, dtype=np.complex128)
    return DensityMatrix(rho.n, u[:, None] * rho.matrix * u.conj()[None, :])


def apply_phase_table(rho: DensityMatrix, t: PhaseTable) -> DensityMatrix:
    if t.n != rho.n:
        raise StateError("phase table and density matrix sizes differ")
    return apply_diagonal_unitary(rho, np.exp(1j * t.phases))


def plus_minus_mixture(q: float) -> np.ndarray:
    """Single-qubit ``(1-q)|+><+| + q|-><-|``."""
    a = 0.5 - q
    return np.array([[0.5, a], [a, 0.5]], dtype=np.complex128)


def build_mixed_plus_minus(q: float, n: int, max_qubits: int | None = None) -> DensityMatrix:
    if not 0.0 <= q <= 0.5:
        raise QOutOfRange(f"q must lie in [0, 1/2], got {q}")
    _check_n(n, max_qubits)
    one = plus_minus_mixture(q)
    m = one
    for _ in range(n - 1):
        m = np.kron(m, one)
    return DensityMatrix(n, m)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduce ``rho`` to the qubits in ``keep`` (1-based, strictly increasing)."""
    keep = [int(k) for k in keep]
    if not keep:
        raise EmptyKeepSet("keep set is empty")
    n = rho.n
    for k in keep:
        if not 1 <= k <= n:
            raise InvalidQubitIndex(f"qubit {k} outside 1..{n}")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise InvalidQubitIndex(f"keep set must be strictly increasing, got {keep}")
    if len(keep) == n:
        return rho
    traced = [k for k in range(1, n + 1) if k not in keep]
    t = rho.matrix.reshape((2,) * (2 * n))
    # axis i-1 is the row index of qubit i, axis n+i-1 its column index
    perm = [k - 1 for k in keep] + [k - 1 for k in traced]
    perm += [n + k - 1 for k in keep] + [n + k - 1 for k in traced]
    t = t.transpose(perm)
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    t = t.reshape(dk, dt, dk, dt)
    red = np.einsum("ajbj->ab", t)
    return DensityMatrix(len(keep), red)


def purity(rho: DensityMatrix) -> float:
    """``tr(rho**2)``; uses Hermiticity so no matrix product is formed."""
    return float(np.sum(np.abs(rho.matrix) ** 2))


def single_qubit_purities(rho: DensityMatrix) -> list[float]:
    return [purity(partial_trace(rho, [k])) for k in range(1, rho.n + 1)]


def is_product_by_purity(t: PhaseTable, tol: float = 1e-9) -> bool:
    """Brute-force product test: every one-qubit marginal of the phase state is pure."""
    return is_product_state(build_phase_state(t), tol)


def is_product_state(s: PureState, tol: float = 1e-9) -> bool:
    """True when every one-qubit marginal of ``s`` is pure within ``tol``."""
    rho = density_of(s)
    return all(abs(p - 1.0) <= tol for p in single_qubit_purities(rho))
