"""Deutsch-Jozsa with phase oracles, plus the two classical baselines."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import NotPromise, ParseError, PromiseViolated, StateError
from .separability import LinearPhaseForm, single_bit_index
from .states import PhaseTable, PureState, wrap_residual

EPS = 1e-9
VALUE_TOL = 1e-9


class Verdict(str, enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    INCONCLUSIVE = "inconclusive"


class OracleKind(str, enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    LINEAR = "linear"
    EXPLICIT = "explicit"


@dataclass
class QueryLog:
    queries: list[int] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.queries)


def _close(a: float, b: float, tol: float = VALUE_TOL) -> bool:
    return abs(float(wrap_residual(a - b))) <= tol


@dataclass(frozen=True)
class OracleSpec:
    """A phase oracle ``j -> f(j)`` together with the promise it was built under."""

    kind: OracleKind
    table: PhaseTable
    form: LinearPhaseForm | None = None

    def __post_init__(self):
        if self.kind is OracleKind.BALANCED and not is_balanced(self.table):
            raise StateError("balanced oracle needs equally many phases 0 and pi")

    @property
    def n(self) -> int:
        return self.table.n

    @classmethod
    def constant(cls, n: int, c: float = 0.0) -> "OracleSpec":
        return cls(OracleKind.CONSTANT, PhaseTable.constant(n, c))

    @classmethod
    def balanced(cls, table: PhaseTable) -> "OracleSpec":
        return cls(OracleKind.BALANCED, table)

    @classmethod
    def balanced_from_bits(cls, n: int, ones) -> "OracleSpec":
        """Balanced oracle with phase pi exactly on the indices in ``ones``."""
        p = np.zeros(2**n)
        p[list(ones)] = math.pi
        return cls.balanced(PhaseTable(n, p))

    @classmethod
    def linear(cls, form: LinearPhaseForm) -> "OracleSpec":
        return cls(OracleKind.LINEAR, form.table(), form)

    @classmethod
    def explicit(cls, table: PhaseTable) -> "OracleSpec":
        return cls(OracleKind.EXPLICIT, table)

    def query(self, j: int, log: QueryLog | None = None) -> float:
        if log is not None:
            log.queries.append(int(j))
        return float(self.table.phases[j])

    @classmethod
    def from_dict(cls, d: dict) -> "OracleSpec":
        try:
            n = int(d["n"])
            kind = OracleKind(d["kind"])
            if kind is OracleKind.CONSTANT:
                return cls.constant(n, float(d.get("c", 0.0)))
            if kind is OracleKind.LINEAR:
                form = LinearPhaseForm(float(d.get("theta0", 0.0)), [float(x) for x in d["theta"]])
                if form.n != n:
                    raise ParseError(f"linear oracle has {form.n} angles for n={n}")
                return cls.linear(form)
            table = PhaseTable(n, [float(x) for x in d["phases"]])
            if kind is OracleKind.BALANCED:
                return cls.balanced(table)
            return cls.explicit(table)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid oracle: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "OracleSpec":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ParseError("oracle JSON must be an object")
        return cls.from_dict(d)

    @classmethod
    def load(cls, path: str | Path) -> "OracleSpec":
        return cls.from_json(Path(path).read_text())


def is_constant(t: PhaseTable, tol: float = VALUE_TOL) -> bool:
    return bool(np.all(np.abs(wrap_residual(t.phases - t.phases[0])) <= tol))


def is_balanced(t: PhaseTable, tol: float = VALUE_TOL) -> bool:
    r0 = np.abs(wrap_residual(t.phases)) <= tol
    rpi = np.abs(wrap_residual(t.phases - math.pi)) <= tol
    half = len(t) // 2
    return bool(np.all(r0 | rpi) and r0.sum() == half and rpi.sum() == half)


def hadamard_all(s: PureState) -> PureState:
    """Apply ``H`` to every qubit with the in-place butterfly, O(n 2**n)."""
    a = s.amplitudes.copy()
    size = a.size
    h = 1
    while h < size:
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        y = v[:, 1, :]
        v[:, 0, :] = x + y
        v[:, 1, :] = x - y
        h *= 2
    a /= math.sqrt(size)
    return PureState(s.n, a, atol=1e-10)


def apply_oracle(s: PureState, oracle: OracleSpec) -> PureState:
    return PureState(s.n, s.amplitudes * np.exp(1j * oracle.table.phases), atol=1e-10)


@dataclass(frozen=True)
class DJResult:
    prob_zero: float
    verdict: Verdict
    final_state: PureState
    phased_state: PureState

    @property
    def stages(self) -> list[PureState]:
        start = PureState.basis(self.final_state.n, 0)
        return [start, hadamard_all(start), self.phased_state, self.final_state]


def dj_run(oracle: OracleSpec, eps: float = EPS) -> DJResult:
    start = PureState.basis(oracle.n, 0)
    phased = apply_oracle(hadamard_all(start), oracle)
    final = hadamard_all(phased)
    p0 = float(abs(final.amplitudes[0]) ** 2)
    if p0 > 1.0 - eps:
        verdict = Verdict.CONSTANT
    elif p0 < eps:
        verdict = Verdict.BALANCED
    else:
        verdict = Verdict.INCONCLUSIVE
    return DJResult(p0, verdict, final, phased)


def classical_decide_general(oracle: OracleSpec, log: QueryLog | None = None) -> Verdict:
    """Deterministic classical constant-vs-balanced decision.

    Queries ascending indices until a value differs from ``f(0)`` (balanced)
    or ``2**(n-1) + 1`` equal values have been seen (constant).
    """
    if not (is_constant(oracle.table) or is_balanced(oracle.table)):
        raise NotPromise("oracle table is neither constant nor balanced")
    log = QueryLog() if log is None else log
    budget = 2 ** (oracle.n - 1) + 1
    first = oracle.query(0, log)
    for j in range(1, budget):
        if not _close(oracle.query(j, log), first):
            return Verdict.BALANCED
    return Verdict.CONSTANT


def classical_recover_linear(
    oracle: OracleSpec,
    log: QueryLog | None = None,
    spot_checks: int = 16,
    seed: int = 0,
    tol: float = VALUE_TOL,
) -> tuple[LinearPhaseForm, QueryLog]:
    """Recover an affine phase function with ``n + 1`` oracle queries.

    The recovered form is then compared with the oracle table on a random
    sample of ``spot_checks`` indices (0 disables this). Those comparisons
    are not logged as queries; they only guard against a broken promise.
    """
    log = QueryLog() if log is None else log
    n = oracle.n
    theta0 = oracle.query(0, log)
    theta = [oracle.query(single_bit_index(i, n), log) - theta0 for i in range(1, n + 1)]
    form = LinearPhaseForm(theta0, theta)
    if spot_checks:
        rng = np.random.default_rng(seed)
        size = 2**n
        idx = np.arange(size) if size <= spot_checks else rng.choice(size, spot_checks, replace=False)
        diff = wrap_residual(form.evaluate(idx) - oracle.table.phases[idx])
        if np.any(np.abs(diff) > tol):
            raise PromiseViolated("oracle is not an affine phase function")
    return form, log
