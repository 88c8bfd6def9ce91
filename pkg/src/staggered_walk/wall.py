"""Coinless walk with an absorbing wall between sites -1 and 0.

After every full step the state is projected onto ``n >= 0``. The only site a
step can reach below the wall is ``n = -1``, whose amplitude is
``(i psi(0) - psi(1)) / 2``; its squared magnitude is the probability absorbed
in that step. The surviving state is never renormalised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolution import evolve
from .kernels import get_backend
from .state import AmplitudeField, InitialState, WalkError, WindowOverflowError, make_initial


@dataclass(frozen=True, eq=False)
class AbsorptionSeries:
    """Cumulative absorption ``values[t]`` for ``t = 0 .. t_max`` and the surviving field."""

    values: np.ndarray
    final: AmplitudeField

    @property
    def survival(self) -> np.ndarray:
        return 1.0 - self.values


def leak_amplitude(f: AmplitudeField) -> complex:
    """Amplitude a step sends across the wall to ``n = -1``."""
    return 0.5 * (1j * f.amplitude(0) - f.amplitude(1))


def _check_wall_support(f: AmplitudeField) -> None:
    if f.periodic:
        raise WalkError("the absorbing wall is only defined on a line")
    if f.n_lo > -2:
        raise WalkError("line window must extend to n <= -2 to hold the wall")
    if np.any(f.amplitudes[: -f.n_lo] != 0):
        raise WalkError("state has support below the wall (n < 0)")


def _wall_run(f: AmplitudeField, steps: int, backend: str | None) -> tuple[AmplitudeField, np.ndarray]:
    _check_wall_support(f)
    psi = f.amplitudes.copy()
    absorbed = np.zeros(steps)
    done = get_backend(backend).wall_steps(psi, steps, -f.n_lo, absorbed)
    if done < steps:
        raise WindowOverflowError(f"window [{f.n_lo}, {f.n_hi}] overflowed at t={f.time + done}")
    return f.with_amplitudes(psi, f.time + steps), absorbed


def step_with_wall(f: AmplitudeField, backend: str | None = None) -> tuple[AmplitudeField, float]:
    """One step followed by projection onto ``n >= 0``; returns the new field and the absorbed probability."""
    g, absorbed = _wall_run(f, 1, backend)
    return g, float(absorbed[0])


def run_absorption(
    kind: InitialState, t_max: int, wall: bool = True, backend: str | None = None
) -> AbsorptionSeries:
    """Absorption series ``P_abs(0..t_max)`` for a walk started on ``n >= 0``.

    With ``wall=False`` the walk runs freely and the series records
    ``1 - sum |psi|^2``, which stays at rounding level.
    """
    if t_max < 0:
        raise WalkError("t_max must be non-negative")
    f = make_initial(kind, t_max=t_max)
    if not wall:
        values = np.zeros(t_max + 1)
        for t in range(1, t_max + 1):
            f = evolve(f, 1, backend=backend)
            values[t] = 1.0 - f.norm_squared()
        return AbsorptionSeries(values, f)
    final, absorbed = _wall_run(f, t_max, backend)
    return AbsorptionSeries(np.concatenate([[0.0], np.cumsum(absorbed)]), final)


@dataclass(frozen=True)
class AsymptoteEstimate:
    value: float
    converged: bool
    last_increment: float


def estimate_asymptote(series, tol: float = 1e-10, window: int = 8) -> AsymptoteEstimate:
    """Final value of an absorption series, flagged converged when the last ``window`` increments are below ``tol``."""
    values = np.asarray(getattr(series, "values", series), dtype=float)
    if values.size < 16:
        raise WalkError("need at least 16 points to estimate an asymptote")
    inc = np.abs(np.diff(values[-(window + 1):]))
    return AsymptoteEstimate(float(values[-1]), bool(np.all(inc < tol)), float(inc[-1]))
