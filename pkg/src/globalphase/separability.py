"""Linearity criterion for entangling global phase functions.

A phase table generates no entanglement exactly when it is affine over the
bits of the index, ``f(j) = theta . bits(j) + theta0 (mod 2*pi)``. Two
independent tests are provided: an explicit list of phase-difference
constraints, and a direct affine fit anchored at index 0 and the single-bit
indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .states import PhaseTable, wrap_angle, wrap_residual

DEFAULT_TOL = 1e-9


def bits(j: int, n: int) -> np.ndarray:
    """Bits of ``j`` as a length-``n`` vector, qubit 1 first (most significant)."""
    return np.array([(j >> (n - 1 - i)) & 1 for i in range(n)], dtype=int)


def bit_matrix(n: int) -> np.ndarray:
    """``(2**n, n)`` matrix whose row ``j`` is ``bits(j, n)``."""
    j = np.arange(2**n)[:, None]
    shifts = np.arange(n - 1, -1, -1)[None, :]
    return (j >> shifts) & 1


def single_bit_index(i: int, n: int) -> int:
    """Basis index with only qubit ``i`` (1-based) set."""
    return 1 << (n - i)


@dataclass(frozen=True, eq=False)
class LinearPhaseForm:
    theta0: float
    theta: np.ndarray

    def __init__(self, theta0: float, theta):
        th = np.array(theta, dtype=float).reshape(-1)
        object.__setattr__(self, "theta0", float(wrap_angle(theta0)))
        th = wrap_angle(th).astype(float)
        th.setflags(write=False)
        object.__setattr__(self, "theta", th)

    @property
    def n(self) -> int:
        return self.theta.size

    def evaluate(self, j) -> np.ndarray | float:
        j = np.asarray(j)
        b = (j[..., None] >> np.arange(self.n - 1, -1, -1)) & 1
        out = wrap_angle(b @ self.theta + self.theta0)
        return float(out) if out.ndim == 0 else out

    def table(self) -> PhaseTable:
        return PhaseTable(self.n, self.evaluate(np.arange(2**self.n)))

    def to_dict(self) -> dict:
        return {"theta0": self.theta0, "theta": [float(x) for x in self.theta]}

    def allclose(self, other: "LinearPhaseForm", atol: float = 1e-12) -> bool:
        if self.n != other.n:
            return False
        d = wrap_residual(np.append(self.theta - other.theta, self.theta0 - other.theta0))
        return bool(np.all(np.abs(d) <= atol))


class Constraint(NamedTuple):
    """``[f(a) - f(b)] - [f(c) - f(d)] = 0 (mod 2*pi)``."""

    a: int
    b: int
    c: int
    d: int

    def residual(self, t: PhaseTable) -> float:
        f = t.phases
        return float(wrap_residual((f[self.a] - f[self.b]) - (f[self.c] - f[self.d])))


class Violation(NamedTuple):
    constraint: Constraint
    residual: float

    def to_json(self) -> str:
        return json.dumps({"constraint": list(self.constraint), "residual": self.residual})


def constraint_list(n: int) -> list[Constraint]:
    """All ``2**n - (n + 1)`` constraints, grouped by stride ``2**(k-1)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = []
    for k in range(1, n + 1):
        h = 2 ** (k - 1)
        step = 2**k
        for m in range(1, 2 ** (n - k)):
            out.append(Constraint(0, h, m * step, m * step + h))
    return out


def check_constraints(t: PhaseTable, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Constraints violated by ``t`` beyond ``tol`` radians; empty iff product."""
    out = []
    for c in constraint_list(t.n):
        r = c.residual(t)
        if abs(r) > tol:
            out.append(Violation(c, r))
    return out


def fit_linear(t: PhaseTable, tol: float = DEFAULT_TOL) -> LinearPhaseForm | None:
    """Affine phase form reproducing ``t``, or ``None`` when none exists."""
    f = t.phases
    n = t.n
    theta0 = f[0]
    theta = [f[single_bit_index(i, n)] - theta0 for i in range(1, n + 1)]
    form = LinearPhaseForm(theta0, theta)
    pred = bit_matrix(n) @ form.theta + form.theta0
    if np.all(np.abs(wrap_residual(f - pred)) <= tol):
        return form
    return None


def is_entangling(t: PhaseTable, tol: float = DEFAULT_TOL) -> bool:
    return fit_linear(t, tol) is None
