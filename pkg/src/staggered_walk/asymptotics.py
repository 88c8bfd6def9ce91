"""Long-time stationary-phase predictions for the symmetric coinless walk.

The dispersion is taken on the branch ``omega(k) = arg(lambda_+(k))``, which is
smooth in ``k``, equals ``arccos(sin^2 k)`` for ``cos k >= 0`` and has

    omega'   = -2 sin k / sqrt(1 + sin^2 k)
    omega''  = -2 cos k / (1 + sin^2 k)^(3/2)
    omega''' =  4 sin k (1 + cos^2 k) / (1 + sin^2 k)^(5/2)

The group velocity is bounded by ``sqrt(2)``, so the walk fills
``|n| < sqrt(2) t`` (interior), has ``t^(-1/3)`` peaks at ``|n| ~ sqrt(2) t`` and
decays fast beyond them (outer).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .state import WalkError

SQRT2 = math.sqrt(2.0)
PEAK_CONSTANT = math.gamma(1 / 3) / (2 * math.pi * 3 ** (1 / 6))


class Dispersion(NamedTuple):
    omega: float
    d1: float
    d2: float
    d3: float


def omega(k):
    """Signed dispersion ``arg(lambda_+)``; ``|omega|`` is the principal ``arccos(sin^2 k)``."""
    s = np.sin(k)
    return np.arctan2(np.cos(k) * np.sqrt(1 + s * s), s * s)


def dispersion_derivatives(k: float) -> Dispersion:
    s, c = math.sin(k), math.cos(k)
    r2 = 1 + s * s
    return Dispersion(
        omega=float(omega(k)),
        d1=-2 * s / math.sqrt(r2),
        d2=-2 * c / r2**1.5,
        d3=4 * s * (1 + c * c) / r2**2.5,
    )


class Region(enum.Enum):
    OUTER = "outer"
    PEAK = "peak"
    INTERIOR = "interior"


def peak_band(t: int, band_coefficient: float = 1.0) -> float:
    return band_coefficient * t ** (1 / 3)


def classify(n: float, t: int, band_coefficient: float = 1.0) -> Region:
    """Region of site ``n`` at time ``t``; the peak band is ``band_coefficient * t^(1/3)`` wide on each side."""
    if t < 1:
        raise WalkError("t must be at least 1")
    edge = SQRT2 * t
    band = peak_band(t, band_coefficient)
    if abs(n) > edge + band:
        return Region.OUTER
    if abs(n) < edge - band:
        return Region.INTERIOR
    return Region.PEAK


@dataclass(frozen=True)
class StationaryPoints:
    """Stationary points of ``-k n + branch * omega(k) t``.

    ``k01`` lies in ``(-pi/2, pi/2)`` and ``k02 = pi - k01``; ``alpha = n / t``.
    """

    k01: float
    k02: float
    alpha: float
    branch: int


def stationarity_residual(k: float, n: float, t: int, branch: int = 1) -> float:
    return -n + branch * dispersion_derivatives(k).d1 * t


def stationary_points(n: float, t: int, branch: int = 1) -> StationaryPoints:
    """Solve ``sin k0 = -branch * n / sqrt(4 t^2 - n^2)``.

    Raises
    ------
    WalkError
        If ``|n| >= sqrt(2) t``; there is no interior solution.
    """
    if branch not in (1, -1):
        raise WalkError("branch must be +1 or -1")
    if t < 1 or abs(n) >= SQRT2 * t:
        raise WalkError(f"no interior stationary point for n={n}, t={t}")
    sin_k = -branch * n / math.sqrt(4 * t * t - n * n)
    k01 = math.asin(max(-1.0, min(1.0, sin_k)))
    return StationaryPoints(k01, math.pi - k01, n / t, branch)


def smoothed_pdf(n, t: int, center: float = 0.0):
    """Oscillation-averaged probability density ``4t^2 / (pi sqrt(4t^2 - 2x^2) (4t^2 - x^2))``, ``x = n - center``.

    Accepts scalars or arrays; every argument must lie strictly inside
    ``|x| < sqrt(2) t``.
    """
    x = np.asarray(n, dtype=float) - center
    if t < 1:
        raise WalkError("t must be at least 1")
    if np.any(np.abs(x) >= SQRT2 * t):
        raise WalkError("smoothed density is only defined for |n - center| < sqrt(2) t")
    tt = 4.0 * t * t
    out = tt / (np.pi * np.sqrt(tt - 2 * x * x) * (tt - x * x))
    return float(out) if out.ndim == 0 else out


def smoothed_cdf(n, t: int, center: float = 0.0):
    """Cumulative smoothed probability ``1/2 + arctan(x / sqrt(4t^2 - 2x^2)) / pi``, clipped outside the light cone."""
    x = np.clip(np.asarray(n, dtype=float) - center, -SQRT2 * t, SQRT2 * t)
    root = np.sqrt(np.maximum(4.0 * t * t - 2 * x * x, 0.0))
    out = 0.5 + np.arctan2(x, root) / np.pi
    return float(out) if out.ndim == 0 else out


def smoothed_moments(t: int, order: int) -> float:
    """Moments of the smoothed density: ``int p = 1``, ``int |n| p = t``, ``int n^2 p = 2 (2 - sqrt 2) t^2``."""
    if t < 1:
        raise WalkError("t must be at least 1")
    if order == 0:
        return 1.0
    if order == 1:
        return float(t)
    if order == 2:
        return 2 * (2 - SQRT2) * t * t
    raise WalkError(f"unsupported moment order {order}")


def peak_amplitude(t: int, side: int = 1) -> np.ndarray:
    """Two-component amplitude at ``n = side * sqrt(2) t`` from the order-2 stationary point."""
    if t < 1:
        raise WalkError("t must be at least 1")
    w = (1 - 1j) / SQRT2
    cos_f = math.cos(math.pi * t / SQRT2)
    sin_f = math.sin(math.pi * t / SQRT2)
    if side > 0:
        rows = [(1 + w) * cos_f, (1 - w) * sin_f]
    else:
        rows = [(1 - w) * cos_f, (-1 - w) * sin_f]
    return PEAK_CONSTANT * t ** (-1 / 3) * np.array(rows, dtype=np.complex128)


def _interior_vectors(n: float, t: int):
    root2 = math.sqrt(4 * t * t - 2 * n * n)
    root1 = math.sqrt(4 * t * t - n * n)
    lead = (1 - 1j) * n + 2 * t
    cos_part = np.array([lead / root1, root2 / (2 * t + n)])
    sin_part = np.array([root2 / root1, lead / (2 * t + n)])
    return cos_part, sin_part, root2


def interior_phase(n: float, t: int) -> float:
    sp = stationary_points(n, t)
    return -sp.k01 * n + float(omega(sp.k01)) * t - math.pi / 4


def interior_amplitude(n: float, t: int) -> np.ndarray:
    """Stationary-phase two-component amplitude of the symmetric walk in the interior.

    Component 0 approximates ``psi(n)`` at even sites and component 1 at odd
    sites. The prefactor is ``1 / (sqrt(pi) (4t^2 - 2n^2)^(1/4))``; averaging
    ``cos^2`` and ``sin^2`` of the phase to 1/2 then makes the mean of the two
    components' squared magnitudes equal :func:`smoothed_pdf`.
    """
    if classify(n, t, band_coefficient=0.0) is not Region.INTERIOR:
        raise WalkError(f"n={n} is not in the interior at t={t}")
    phi = interior_phase(n, t)
    cos_part, sin_part, root2 = _interior_vectors(n, t)
    pref = 1 / (math.sqrt(math.pi) * math.sqrt(root2))
    return pref * (math.cos(phi) * cos_part + 1j * math.sin(phi) * sin_part)


def interior_site_amplitude(n: int, t: int) -> complex:
    """Stationary-phase estimate of ``psi_s(n, t)`` at integer site ``n``."""
    return complex(interior_amplitude(n, t)[n % 2])


def averaged_interior_density(n: float, t: int) -> float:
    """Mean over both components of ``|interior amplitude|^2`` with ``cos^2, sin^2 -> 1/2``, cross terms dropped."""
    cos_part, sin_part, root2 = _interior_vectors(n, t)
    pref2 = 1 / (math.pi * root2)
    return pref2 * 0.5 * float(np.sum(np.abs(cos_part) ** 2 + np.abs(sin_part) ** 2)) / 2
