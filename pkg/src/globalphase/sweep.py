"""Parameter sweeps comparing the numeric pipeline with the closed forms."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Iterator, Sequence

import numpy as np

from . import analytic
from .entanglement import concurrence, eof_of_concurrence
from .exceptions import ConfigError
from .states import (
    PhaseTable,
    apply_phase,
    build_mixed_plus_minus,
    build_phase_state,
    density_of,
    partial_trace,
)

CASES = ("one-param", "bc", "bc-prime", "ab", "mixed")
AGREEMENT_TOL = 1e-8

# (index receiving sigma, qubits kept) for the pure three-qubit cases
_PURE_LAYOUT = {
    "one-param": (None, (2, 3)),
    "bc": (1, (2, 3)),
    "bc-prime": (3, (2, 3)),
    "ab": (1, (1, 2)),
}


@dataclass(frozen=True)
class SweepConfig:
    case: str
    steps: int = 101
    theta: float | None = None
    sigma: float | None = None
    q: float | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise ConfigError(f"unknown case {self.case!r}; expected one of {', '.join(CASES)}")
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        if self.q is not None and not 0.0 <= self.q <= 0.5:
            raise ConfigError(f"q must lie in [0, 1/2], got {self.q}")
        if self.case == "mixed" and self.sigma is not None:
            raise ConfigError("the mixed case has no sigma axis")
        if self.case != "mixed" and self.q is not None:
            raise ConfigError("only the mixed case has a q axis")
        if self.case == "one-param" and self.sigma is not None:
            raise ConfigError("the one-param case has no sigma axis")

    @property
    def second_axis(self) -> str | None:
        if self.case == "one-param":
            return None
        return "q" if self.case == "mixed" else "sigma"


def angle_grid(steps: int) -> np.ndarray:
    """``steps`` evenly spaced angles from 0 up to just below ``2*pi``.

    The final point would be ``2*pi`` itself; it is replaced by the largest
    double below it so the grid stays inside the half-open period while odd
    step counts still land exactly on ``pi``.
    """
    # 2*i/(steps-1) is exact whenever it is 1, so pi itself is hit exactly
    g = math.pi * (2.0 * np.arange(steps) / (steps - 1))
    g[-1] = np.nextafter(2.0 * math.pi, 0.0)
    return g


def q_grid(steps: int) -> np.ndarray:
    return np.linspace(0.0, 0.5, steps)


def numeric_reduced_state(case: str, theta: float, second: float = 0.0):
    """Two-qubit reduced state built from the full three-qubit construction."""
    if case == "mixed":
        rho = apply_phase(build_mixed_plus_minus(second, 3), 0, theta)
        return partial_trace(rho, [2, 3])
    sigma_index, keep = _PURE_LAYOUT[case]
    phases = np.zeros(8)
    phases[0] = theta
    if sigma_index is not None:
        phases[sigma_index] = second
    rho = density_of(build_phase_state(PhaseTable(3, phases)))
    return partial_trace(rho, list(keep))


def analytic_concurrence(case: str, theta: float, second: float = 0.0) -> float:
    if case == "mixed":
        # no closed-form spectrum; the closed-form matrix goes through Wootters
        return concurrence(analytic.rho_mixed_one_param(theta, second))
    return analytic.concurrence_of(case, theta, second)


def _grid(config: SweepConfig) -> Iterator[tuple[float, float]]:
    thetas = [config.theta] if config.theta is not None else angle_grid(config.steps)
    if config.second_axis is None:
        for th in thetas:
            yield float(th), 0.0
        return
    if config.second_axis == "q":
        seconds = [config.q] if config.q is not None else q_grid(config.steps)
    else:
        seconds = [config.sigma] if config.sigma is not None else angle_grid(config.steps)
    for th in thetas:
        for s in seconds:
            yield float(th), float(s)


def header(config: SweepConfig) -> list[str]:
    cols = ["theta"]
    if config.second_axis:
        cols.append(config.second_axis)
    return cols + [
        "concurrence_numeric",
        "eof_numeric",
        "concurrence_analytic",
        "eof_analytic",
        "abs_diff",
    ]


def _row(case: str, two_axes: bool, th: float, second: float) -> list[float]:
    cn = concurrence(numeric_reduced_state(case, th, second))
    ca = analytic_concurrence(case, th, second)
    en, ea = eof_of_concurrence(cn), eof_of_concurrence(ca)
    diff = max(abs(cn - ca), abs(en - ea))
    lead = [th, second] if two_axes else [th]
    return lead + [cn, en, ca, ea, diff]


def _rows_chunk(case: str, two_axes: bool, points) -> list[list[float]]:
    return [_row(case, two_axes, th, s) for th, s in points]


def sweep_rows(config: SweepConfig, jobs: int = 1) -> list[list[float]]:
    """Evaluate every grid point; rows come back in grid order for any ``jobs``."""
    points = list(_grid(config))
    two = config.second_axis is not None
    if jobs <= 1 or len(points) < 2 * jobs:
        return _rows_chunk(config.case, two, points)
    size = -(-len(points) // (4 * jobs))
    chunks = [points[i : i + size] for i in range(0, len(points), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_rows_chunk, repeat(config.case), repeat(two), chunks)
        return [row for part in parts for row in part]


def format_csv(head: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    for r in rows:
        w.writerow([f"{x:.17g}" for x in r])
    return buf.getvalue()


def sweep(config: SweepConfig, jobs: int = 1) -> tuple[str, float]:
    """Run a sweep; returns the CSV text and the largest ``abs_diff`` seen."""
    rows = sweep_rows(config, jobs)
    worst = max((r[-1] for r in rows), default=0.0)
    return format_csv(header(config), rows), worst
