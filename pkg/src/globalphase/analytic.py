"""Closed forms for the three-qubit one- and two-phase examples.

Eigenvalue pairs returned here follow the "times 64" convention: an
eigenvalue ``lam`` of ``rho @ rho~`` is reported as ``64 * lam``. The
concurrence is then ``(sqrt(lam_plus) - sqrt(lam_minus)) / 8``. Nothing
outside this module uses that scaling.

Reduced states covered (three qubits A, B, C with phases on the listed kets):

* one-param:  ``e^{i theta}`` on |000>, any pair of qubits
* bc:         ``theta`` on |000>, ``sigma`` on |001>, qubits B, C
* bc-prime:   ``theta`` on |000>, ``sigma`` on |011>, qubits B, C
* ab:         ``theta`` on |000>, ``sigma`` on |001>, qubits A, B
* mixed:      ``theta`` on |000> of ``[(1-q)|+><+| + q|-><-|]^{x3}``, any pair
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import eof_of_concurrence
from .exceptions import QOutOfRange
from .states import DensityMatrix, wrap_angle

SQRT2 = math.sqrt(2.0)
SCALE = 64.0


@dataclass(frozen=True)
class TwoParamPoint:
    theta: float
    sigma: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(wrap_angle(self.theta)))
        object.__setattr__(self, "sigma", float(wrap_angle(self.sigma)))

    @property
    def t(self) -> float:
        return 1.0 - math.cos(self.theta)

    @property
    def s(self) -> float:
        return 1.0 - math.cos(self.sigma)

    @property
    def r(self) -> float:
        return 1.0 - math.cos(self.theta + self.sigma)

    @property
    def u(self) -> float:
        return 1.0 - math.cos(self.theta - self.sigma)


def _point(point, sigma=None) -> TwoParamPoint:
    if isinstance(point, TwoParamPoint):
        return point
    return TwoParamPoint(point, sigma)


def concurrence_from_lambdas(lam_plus: float, lam_minus: float) -> float:
    c = (math.sqrt(max(lam_plus, 0.0)) - math.sqrt(max(lam_minus, 0.0))) / 8.0
    return max(c, 0.0)


def lambda_one_param(theta: float) -> tuple[float, float]:
    t = 1.0 - math.cos(theta)
    return 2.0 * (SQRT2 + 1.0) ** 2 * t, 2.0 * (SQRT2 - 1.0) ** 2 * t


def concurrence_one_param(theta: float) -> float:
    return math.sqrt(1.0 - math.cos(theta)) / (2.0 * SQRT2)


def p_one_param(theta: float) -> float:
    return 0.5 * (1.0 + math.sqrt(1.0 - (1.0 - math.cos(theta)) / 8.0))


def lambda_bc_two_param(point, sigma=None) -> tuple[float, float]:
    pt = _point(point, sigma)
    return lambda_one_param(pt.theta - pt.sigma)


def concurrence_bc_two_param(point, sigma=None) -> float:
    pt = _point(point, sigma)
    return math.sqrt(pt.u) / (2.0 * SQRT2)


def lambda_bc_prime(point, sigma=None) -> tuple[float, float]:
    pt = _point(point, sigma)
    t, s, r = pt.t, pt.s, pt.r
    root = 2.0 * math.sqrt(max(2.0 * r * (r + t * s), 0.0))
    base = 3.0 * r + 2.0 * t * s
    return 2.0 * (base + root), max(2.0 * (base - root), 0.0)


def lambda_ab(point, sigma=None) -> tuple[float, float]:
    pt = _point(point, sigma)
    ts = pt.t + pt.s
    root = 2.0 * math.sqrt(max(2.0 * ts * (2.0 * ts - pt.u), 0.0))
    base = 4.0 * ts - pt.u
    return 2.0 * (base + root), max(2.0 * (base - root), 0.0)


def concurrence_of(case: str, theta: float, sigma: float = 0.0) -> float:
    """Closed-form concurrence for one of the pure-state cases."""
    if case == "one-param":
        return concurrence_one_param(theta)
    if case == "bc":
        return concurrence_bc_two_param(theta, sigma)
    if case == "bc-prime":
        return concurrence_from_lambdas(*lambda_bc_prime(theta, sigma))
    if case == "ab":
        return concurrence_from_lambdas(*lambda_ab(theta, sigma))
    raise ValueError(f"no closed-form concurrence for case {case!r}")


def eof_of(case: str, theta: float, sigma: float = 0.0) -> float:
    return eof_of_concurrence(concurrence_of(case, theta, sigma))


def _mixture(*vectors) -> np.ndarray:
    m = sum(np.outer(v, np.conj(v)) for v in vectors)
    return m / 8.0


def rho_bc_one_param(theta: float) -> DensityMatrix:
    tau = np.exp(1j * theta)
    a = 1.0 + tau
    m = np.array(
        [
            [2, a, a, a],
            [a.conjugate(), 2, 2, 2],
            [a.conjugate(), 2, 2, 2],
            [a.conjugate(), 2, 2, 2],
        ],
        dtype=np.complex128,
    )
    return DensityMatrix(2, m / 8.0)


def rho_bc_two_param(theta: float, sigma: float) -> DensityMatrix:
    tau, zeta = np.exp(1j * theta), np.exp(1j * sigma)
    return DensityMatrix(2, _mixture([tau, zeta, 1, 1], [1, 1, 1, 1]))


def rho_bc_prime(theta: float, sigma: float) -> DensityMatrix:
    tau, zeta = np.exp(1j * theta), np.exp(1j * sigma)
    return DensityMatrix(2, _mixture([tau, 1, 1, zeta], [1, 1, 1, 1]))


def rho_ab(theta: float, sigma: float) -> DensityMatrix:
    tau, zeta = np.exp(1j * theta), np.exp(1j * sigma)
    return DensityMatrix(2, _mixture([tau, 1, 1, 1], [zeta, 1, 1, 1]))


def rho_mixed_one_param(theta: float, q: float) -> DensityMatrix:
    if not 0.0 <= q <= 0.5:
        raise QOutOfRange(f"q must lie in [0, 1/2], got {q}")
    tau = np.exp(1j * theta)
    al = 0.5 - q
    b = (1.0 + tau) * al
    bc = b.conjugate()
    m = np.array(
        [
            [1, b, b, 2 * b * al],
            [bc, 1, 4 * al**2, 2 * al],
            [bc, 4 * al**2, 1, 2 * al],
            [2 * bc * al, 2 * al, 2 * al, 1],
        ],
        dtype=np.complex128,
    )
    return DensityMatrix(2, m / 4.0)
