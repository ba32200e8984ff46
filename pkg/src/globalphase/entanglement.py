"""Wootters concurrence and entanglement of formation for two-qubit states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import POutOfRange, WrongDimension
from .linalg import DEFAULT_TOL, hermitian_eigenvalues, psd_sqrt
from .states import DensityMatrix

# sigma_y (x) sigma_y is real: the antidiagonal (-1, 1, 1, -1).
SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128
)

CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class EntanglementReport:
    lambdas: tuple[float, float, float, float]
    concurrence: float
    p: float
    eof: float


def _matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if rho.n != 2:
            raise WrongDimension(f"expected a two-qubit state, got n={rho.n}")
        return rho.matrix
    m = np.asarray(rho, dtype=np.complex128)
    if m.shape != (4, 4):
        raise WrongDimension(f"expected a 4x4 matrix, got {m.shape}")
    return m


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)``."""
    m = _matrix(rho)
    return SIGMA_YY @ m.conj() @ SIGMA_YY


def wootters_singular_values(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho @ spin_flip(rho)``, descending.

    With ``T = sqrt(rho) Y sqrt(rho)*`` we have ``sqrt(rho) rho~ sqrt(rho) = T T^H``,
    so the wanted roots are the singular values of ``T``. They are read off the
    Hermitian dilation ``[[0, T], [T^H, 0]]`` whose spectrum is ``+-sigma``; this
    keeps the error in each root at machine precision instead of the
    square root of it.
    """
    m = _matrix(rho)
    s = psd_sqrt(m, tol)
    t = s @ SIGMA_YY @ s.conj()
    dil = np.zeros((8, 8), dtype=np.complex128)
    dil[:4, 4:] = t
    dil[4:, :4] = t.conj().T
    w = hermitian_eigenvalues(dil, tol)
    sv = np.clip(w[:4], 0.0, None)
    return sv


def wootters_lambdas(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of ``rho @ spin_flip(rho)`` in descending order (true scale)."""
    lam = wootters_singular_values(rho, tol) ** 2
    lam[(lam < 0) & (lam >= -CLAMP_TOL)] = 0.0
    return lam


def _concurrence_from_roots(roots) -> float:
    r = np.sort(np.asarray(roots, dtype=float))[::-1]
    c = r[0] - r[1] - r[2] - r[3]
    return float(min(max(c, 0.0), 1.0))


def concurrence(rho, tol: float = DEFAULT_TOL) -> float:
    return _concurrence_from_roots(wootters_singular_values(rho, tol))


def binary_entropy(p: float) -> float:
    """Shannon entropy of a biased coin, in bits."""
    if not 0.0 <= p <= 1.0:
        raise POutOfRange(f"p must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


def p_of_concurrence(c: float) -> float:
    return 0.5 * (1.0 + math.sqrt(max(1.0 - c * c, 0.0)))


def eof_of_concurrence(c: float) -> float:
    return binary_entropy(p_of_concurrence(c))


def entanglement_of_formation(rho, tol: float = DEFAULT_TOL) -> EntanglementReport:
    roots = wootters_singular_values(rho, tol)
    c = _concurrence_from_roots(roots)
    p = p_of_concurrence(c)
    lam = tuple(float(x) for x in roots**2)
    return EntanglementReport(lambdas=lam, concurrence=c, p=p, eof=binary_entropy(p))
