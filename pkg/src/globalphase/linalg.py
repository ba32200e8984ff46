"""Dense complex Hermitian linear algebra.

Matrices are plain ``numpy`` complex128 arrays. The eigensolver is a cyclic
Jacobi method written out here rather than delegated to LAPACK, so that the
whole entanglement pipeline runs through one small, auditable routine.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import NoConvergence, NotHermitian, NotPSD

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 60

__all__ = [
    "DEFAULT_TOL",
    "as_matrix",
    "is_hermitian",
    "is_psd",
    "trace",
    "hermitian_eigensystem",
    "hermitian_eigenvalues",
    "psd_sqrt",
]


def as_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_error(m: np.ndarray) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    return hermiticity_error(as_matrix(m)) <= tol


def is_psd(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        return False
    w, _ = hermitian_eigensystem(m, tol)
    return bool(w.size == 0 or w[-1] >= -tol)


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _rotate_columns(m, p, q, c, s, u10, u11):
    mp = m[:, p].copy()
    mq = m[:, q]
    m[:, p] = c * mp + u10 * mq
    m[:, q] = s * mp + u11 * mq


def hermitian_eigensystem(m, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS):
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classical real Jacobi rotation to the resulting real 2x2 block.

    Returns:
        (eigenvalues, eigenvectors): eigenvalues as a descending float array,
        eigenvectors as the columns of a unitary matrix in matching order.

    Raises:
        NotHermitian: if ``max|M - M^H| > tol``.
        NoConvergence: if the off-diagonal norm is still above ``tol`` after
            ``max_sweeps`` full sweeps.
    """
    a = as_matrix(m)
    err = hermiticity_error(a)
    if err > tol:
        raise NotHermitian(f"max |M - M^H| = {err:.3e} exceeds tol {tol:.3e}")
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)
    if n == 0:
        return np.zeros(0), v

    scale = float(np.linalg.norm(a))
    target = 1e-15 * scale
    for _ in range(max_sweeps):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300 or mag <= 1e-18 * scale:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u10 = -s * phase.conjugate()
                u11 = c * phase.conjugate()
                _rotate_columns(a, p, q, c, s, u10, u11)
                _rotate_columns(v, p, q, c, s, u10, u11)
                # rows: A <- U^H A, using Hermiticity of the column-rotated matrix
                a[p, :] = a[:, p].conj()
                a[q, :] = a[:, q].conj()
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
    else:
        off = _off_norm(a)
        if off > tol:
            raise NoConvergence(
                f"off-diagonal norm {off:.3e} > tol after {max_sweeps} sweeps"
            )

    w = np.real(np.diag(a)).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    return hermitian_eigensystem(m, tol)[0]


def psd_sqrt(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-tol, 0)`` are treated as rounding noise and clamped to
    zero; anything more negative raises :class:`NotPSD`.
    """
    w, v = hermitian_eigensystem(m, tol)
    if w.size and w[-1] < -tol:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} < -{tol:.1e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    r = (v * root) @ v.conj().T
    return 0.5 * (r + r.conj().T)
