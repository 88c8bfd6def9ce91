"""Amplitude fields over integer sites, initial states, distributions and moments.

A field stores a dense complex array together with the absolute label of its
first site. Line windows are always *aligned*: they start on an even site and
hold an even number of sites, so both half-step pairings ``(2m, 2m+1)`` and
``(2m+1, 2m+2)`` map onto fixed strides of the array. Parity is always taken
from the absolute site label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12


class WalkError(ValueError):
    """Invalid configuration or state for a walk operation."""


class WindowOverflowError(WalkError):
    """Amplitude reached the edge of a line window (the window was sized for fewer steps)."""


@dataclass(frozen=True)
class Line:
    """Open line boundary; the window lives on the field itself."""

    periodic = False


@dataclass(frozen=True)
class Circle:
    """Ring of ``size`` sites labelled ``0 .. size-1``."""

    size: int
    periodic = True

    def __post_init__(self):
        if self.size % 2:
            raise WalkError(f"circle size must be even, got {self.size}")
        if self.size < 4:
            raise WalkError(f"circle size must be at least 4, got {self.size}")


Boundary = Line | Circle


@dataclass(frozen=True)
class InitialState:
    """Initial amplitude specification.

    ``kind`` is one of ``"origin"``, ``"symmetric"`` or ``"custom"``; custom
    states carry explicit ``(site, amplitude)`` pairs.
    """

    kind: str
    amplitudes: tuple[tuple[int, complex], ...] = ()

    @classmethod
    def origin(cls) -> InitialState:
        return cls("origin")

    @classmethod
    def symmetric(cls) -> InitialState:
        return cls("symmetric")

    @classmethod
    def custom(cls, amplitudes: Iterable[tuple[int, complex]]) -> InitialState:
        return cls("custom", tuple((int(n), complex(a)) for n, a in amplitudes))

    def site_amplitudes(self) -> list[tuple[int, complex]]:
        if self.kind == "origin":
            return [(0, 1.0 + 0j)]
        if self.kind == "symmetric":
            s = 1 / math.sqrt(2)
            return [(0, s + 0j), (1, s + 0j)]
        if self.kind == "custom":
            return list(self.amplitudes)
        raise WalkError(f"unknown initial state kind {self.kind!r}")

    @property
    def center(self) -> float:
        """Mirror centre of the walk: 1/2 for the symmetric pair, else 0."""
        return 0.5 if self.kind == "symmetric" else 0.0


@dataclass(frozen=True, eq=False)
class AmplitudeField:
    """Complex amplitudes over a line window or a ring at integer time ``time``.

    ``amplitudes[i]`` is the amplitude of site ``n_lo + i``.
    """

    amplitudes: np.ndarray
    n_lo: int = 0
    boundary: Boundary = field(default_factory=Line)
    time: int = 0

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1:
            raise WalkError("amplitudes must be one-dimensional")
        if isinstance(self.boundary, Circle):
            if self.n_lo != 0 or amps.size != self.boundary.size:
                raise WalkError("circle field must cover sites 0..N-1")
        elif self.n_lo % 2 or amps.size % 2:
            raise WalkError("line window must start on an even site and hold an even number of sites")

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.n_lo, self.n_lo + self.amplitudes.size)

    @property
    def n_hi(self) -> int:
        return self.n_lo + self.amplitudes.size - 1

    @property
    def periodic(self) -> bool:
        return isinstance(self.boundary, Circle)

    def with_amplitudes(self, amplitudes: np.ndarray, time: int | None = None) -> AmplitudeField:
        return replace(self, amplitudes=amplitudes, time=self.time if time is None else time)

    def amplitude(self, n: int) -> complex:
        """Amplitude at absolute site ``n`` (zero outside a line window)."""
        if self.periodic:
            return complex(self.amplitudes[n % self.boundary.size])
        i = n - self.n_lo
        if 0 <= i < self.amplitudes.size:
            return complex(self.amplitudes[i])
        return 0j

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def padded(self, extra: int) -> AmplitudeField:
        """Line field with the window widened by at least ``extra`` sites on both sides."""
        if self.periodic:
            raise WalkError("cannot pad a circle field")
        extra += extra % 2
        amps = np.pad(self.amplitudes, (extra, extra))
        return replace(self, amplitudes=amps, n_lo=self.n_lo - extra)


def parity(n):
    """Site parity from the absolute label (0 even, 1 odd); works on arrays."""
    return np.mod(n, 2)


def aligned_window(lo: int, hi: int) -> tuple[int, int]:
    """Smallest aligned window ``[a, b]`` with ``a`` even, ``b`` odd, containing ``[lo, hi]``."""
    a = lo - (lo % 2)
    b = hi if hi % 2 else hi + 1
    return a, b


def window_for(support: tuple[int, int], t_max: int) -> tuple[int, int]:
    """Aligned window holding ``support`` after ``t_max`` coinless steps (2 sites per step, plus margin)."""
    lo, hi = support
    return aligned_window(lo - 2 * t_max - 2, hi + 2 * t_max + 2)


def make_initial(kind: InitialState, boundary: Boundary | None = None, t_max: int = 0) -> AmplitudeField:
    """Build the unit-norm field at ``t = 0``.

    Parameters
    ----------
    kind : InitialState
        Origin delta, symmetric pair or custom amplitudes.
    boundary : Line or Circle, optional
        Defaults to a line.
    t_max : int
        Number of steps the line window must accommodate.

    Raises
    ------
    WalkError
        For non-finite or non-normalized custom amplitudes, sites off the
        ring, or an invalid circle.
    """
    boundary = Line() if boundary is None else boundary
    if t_max < 0:
        raise WalkError("t_max must be non-negative")
    pairs = kind.site_amplitudes()
    if not pairs:
        raise WalkError("initial state has no amplitudes")
    values = np.array([a for _, a in pairs], dtype=np.complex128)
    if not np.all(np.isfinite(values)):
        raise WalkError("initial amplitudes must be finite")
    norm = float(np.sum(np.abs(values) ** 2))
    if abs(norm - 1.0) > NORM_TOL:
        raise WalkError(f"initial state is not normalized (norm squared {norm!r})")
    sites = [n for n, _ in pairs]

    if isinstance(boundary, Circle):
        if any(n < 0 or n >= boundary.size for n in sites):
            raise WalkError(f"initial sites must lie in 0..{boundary.size - 1}")
        amps = np.zeros(boundary.size, dtype=np.complex128)
        for n, a in pairs:
            amps[n] += a
        return AmplitudeField(amps, 0, boundary, 0)

    lo, hi = window_for((min(sites), max(sites)), t_max)
    amps = np.zeros(hi - lo + 1, dtype=np.complex128)
    for n, a in pairs:
        amps[n - lo] += a
    return AmplitudeField(amps, lo, boundary, 0)


def probability_distribution(f: AmplitudeField) -> list[tuple[int, float]]:
    """``(site, |psi(site)|^2)`` for every site with nonzero amplitude."""
    probs = np.abs(f.amplitudes) ** 2
    return [(int(n), float(p)) for n, p in zip(f.sites, probs) if p > 0]


def probabilities(f: AmplitudeField) -> np.ndarray:
    """Dense probability array aligned with ``f.sites``."""
    return np.abs(f.amplitudes) ** 2


def support_bounds(f: AmplitudeField) -> tuple[int, int]:
    """Smallest and largest site with nonzero amplitude on a line."""
    if f.periodic:
        raise WalkError("support bounds are not defined on a circle")
    nz = np.flatnonzero(f.amplitudes)
    if nz.size == 0:
        raise WalkError("field is identically zero")
    return int(f.n_lo + nz[0]), int(f.n_lo + nz[-1])


@dataclass(frozen=True)
class MomentReport:
    total_probability: float
    abs_first_moment: float
    second_moment: float
    center: float


def distribution_moments(sites: np.ndarray, probs: np.ndarray, center: float = 0.0) -> MomentReport:
    x = np.asarray(sites, dtype=float) - center
    p = np.asarray(probs, dtype=float)
    return MomentReport(
        total_probability=float(p.sum()),
        abs_first_moment=float(np.sum(np.abs(x) * p)),
        second_moment=float(np.sum(x * x * p)),
        center=center,
    )


def moments(f: AmplitudeField, center: float = 0.0) -> MomentReport:
    """Total probability, ``sum |n-c| p`` and ``sum (n-c)^2 p`` about ``center``."""
    return distribution_moments(f.sites, probabilities(f), center)


@dataclass(frozen=True, eq=False)
class TwoComponentField:
    """Cells ``Psi(N) = (psi(2N), psi(2N+1))``; ``cells`` has shape ``(ncells, 2)``."""

    cells: np.ndarray
    cell_lo: int = 0
    boundary: Boundary = field(default_factory=Line)
    time: int = 0

    def __post_init__(self):
        cells = np.ascontiguousarray(self.cells, dtype=np.complex128)
        if cells.ndim != 2 or cells.shape[1] != 2:
            raise WalkError("cells must have shape (ncells, 2)")
        object.__setattr__(self, "cells", cells)


def pack(f: AmplitudeField) -> TwoComponentField:
    return TwoComponentField(f.amplitudes.reshape(-1, 2).copy(), f.n_lo // 2, f.boundary, f.time)


def unpack(psi: TwoComponentField) -> AmplitudeField:
    return AmplitudeField(psi.cells.reshape(-1).copy(), 2 * psi.cell_lo, psi.boundary, psi.time)


def field_from_sites(
    sites: Sequence[int], amplitudes: Sequence[complex], boundary: Boundary | None = None, time: int = 0
) -> AmplitudeField:
    """Field holding the given amplitudes, on the smallest aligned window that contains them."""
    boundary = Line() if boundary is None else boundary
    if isinstance(boundary, Circle):
        amps = np.zeros(boundary.size, dtype=np.complex128)
        amps[np.mod(sites, boundary.size)] = amplitudes
        return AmplitudeField(amps, 0, boundary, time)
    lo, hi = aligned_window(min(sites), max(sites))
    amps = np.zeros(hi - lo + 1, dtype=np.complex128)
    amps[np.asarray(sites) - lo] = amplitudes
    return AmplitudeField(amps, lo, boundary, time)
