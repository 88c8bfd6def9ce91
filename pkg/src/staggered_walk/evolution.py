"""Direct-space steppers: coinless half-steps, the coined flip-flop walk and the classical walk.

One coinless step applies the odd-pair half-step (pairs ``(2m, 2m+1)``) first
and the even-pair half-step (pairs ``(2m+1, 2m+2)``) second. Both use the
same 2x2 block ``[[1, i], [i, 1]] / sqrt(2)``. From a single site this gives

    |n> -> (i|n-1> + |n> + i|n+1> - |n + 2(-1)^n>) / 2
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .kernels import get_backend
from .state import (
    AmplitudeField,
    Circle,
    TwoComponentField,
    WalkError,
    WindowOverflowError,
    pack,
    unpack,
)

HALF_STEP_BLOCK = np.array([[1, 1j], [1j, 1]], dtype=np.complex128) / math.sqrt(2)
COIN = HALF_STEP_BLOCK.copy()
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PROJ_UP = (np.eye(2) + SIGMA_3) / 2
PROJ_DOWN = (np.eye(2) - SIGMA_3) / 2


class WalkKind(enum.Enum):
    COINLESS = "coinless"
    COINED = "coined"
    CLASSICAL = "classical"


def _check_edges(f: AmplitudeField, psi: np.ndarray) -> None:
    if not f.periodic and (psi[0] != 0 or psi[-1] != 0):
        raise WindowOverflowError(
            f"amplitude reached the window edge [{f.n_lo}, {f.n_hi}] at t={f.time}; widen the window"
        )


def half_step_odd(f: AmplitudeField, backend: str | None = None) -> AmplitudeField:
    """Mix each pair ``(2m, 2m+1)``: ``|n> -> (|n> + i|n + (-1)^n>) / sqrt(2)``."""
    psi = f.amplitudes.copy()
    get_backend(backend).half_step_odd(psi)
    return f.with_amplitudes(psi)


def half_step_even(f: AmplitudeField, backend: str | None = None) -> AmplitudeField:
    """Mix each pair ``(2m+1, 2m+2)``: ``|n> -> (|n> + i|n - (-1)^n>) / sqrt(2)``.

    On a line the edge sites pair with sites outside the window, so they must
    be empty.
    """
    psi = f.amplitudes.copy()
    _check_edges(f, psi)
    get_backend(backend).half_step_even(psi, f.periodic)
    return f.with_amplitudes(psi)


def step_coinless(f: AmplitudeField, backend: str | None = None) -> AmplitudeField:
    return evolve(f, 1, WalkKind.COINLESS, backend=backend)


def evolve(
    f: AmplitudeField,
    steps: int,
    kind: WalkKind = WalkKind.COINLESS,
    backend: str | None = None,
) -> AmplitudeField:
    """Advance ``f`` by ``steps`` steps of the coinless or (packed) coined walk.

    Raises
    ------
    WindowOverflowError
        If the line window is too small for the requested number of steps.
    """
    kind = WalkKind(kind)
    if steps < 0:
        raise WalkError("steps must be non-negative")
    if kind is WalkKind.CLASSICAL:
        raise WalkError("the classical walk evolves probabilities; use evolve_classical")
    if kind is WalkKind.COINED:
        return unpack(evolve_coined(pack(f), steps))
    psi = f.amplitudes.copy()
    done = get_backend(backend).coinless_steps(psi, steps, f.periodic)
    if done < steps:
        raise WindowOverflowError(
            f"window [{f.n_lo}, {f.n_hi}] overflowed at t={f.time + done}; it cannot hold {steps} steps"
        )
    return f.with_amplitudes(psi, f.time + steps)


def step_coined(psi: TwoComponentField) -> TwoComponentField:
    """One step of the coined flip-flop walk: coin on every cell, then the shift.

    The shift keeps ``1/sqrt(2)`` of each cell in place and sends the up
    component one cell back and the down component one cell forward, flipping
    them with ``sigma_1`` and a factor ``i/sqrt(2)``.
    """
    s = 1 / math.sqrt(2)
    cells = psi.cells @ COIN.T
    back = cells @ (1j * s * SIGMA_1 @ PROJ_UP).T  # lands on N-1
    fwd = cells @ (1j * s * SIGMA_1 @ PROJ_DOWN).T  # lands on N+1
    out = s * cells
    if isinstance(psi.boundary, Circle):
        out += np.roll(back, -1, axis=0) + np.roll(fwd, 1, axis=0)
    else:
        if np.any(back[0] != 0) or np.any(fwd[-1] != 0):
            raise WindowOverflowError(f"coined walk left the cell window at t={psi.time}")
        out[:-1] += back[1:]
        out[1:] += fwd[:-1]
    return replace(psi, cells=out, time=psi.time + 1)


def evolve_coined(psi: TwoComponentField, steps: int) -> TwoComponentField:
    for _ in range(steps):
        psi = step_coined(psi)
    return psi


@dataclass(frozen=True, eq=False)
class ClassicalDistribution:
    """Probabilities ``probs[i]`` of site ``n_lo + i`` for the classical symmetric walk."""

    probs: np.ndarray
    n_lo: int
    time: int = 0

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.n_lo, self.n_lo + self.probs.size)

    @classmethod
    def origin(cls, t_max: int) -> ClassicalDistribution:
        probs = np.zeros(2 * t_max + 3)
        probs[t_max + 1] = 1.0
        return cls(probs, -t_max - 1)


def step_classical(dist: ClassicalDistribution, backend: str | None = None) -> ClassicalDistribution:
    return evolve_classical(dist, 1, backend)


def evolve_classical(dist: ClassicalDistribution, steps: int, backend: str | None = None) -> ClassicalDistribution:
    p = dist.probs.astype(np.float64, copy=True)
    done = get_backend(backend).classical_steps(p, steps)
    if done < steps:
        raise WindowOverflowError(f"classical walk left its window at t={dist.time + done}")
    return replace(dist, probs=p, time=dist.time + steps)
