"""Momentum-space engine: two-component transform, step propagator and its eigensystem.

Sites are split by parity and transformed with the absolute site label,

    A(k) = sum_{n even} e^{ikn} psi(n),    B(k) = sum_{n odd} e^{ikn} psi(n),

so that one coinless step acts as ``(A, B) -> M(k) (A, B)`` with

    M(k) = [[-i e^{ik} sin k,  i cos k       ],
            [ i cos k,         i e^{-ik} sin k]].

A window of ``L`` sites (``L/2`` cells) is treated as a ring and sampled at
``k = 2 pi j / L`` reduced into ``[-pi/2, pi/2)``. Shifting ``k`` by ``pi`` only
flips the sign of ``B`` and of the off-diagonal of ``M``, so ``L/2`` values
carry all the information, and on the reduced interval ``cos k >= 0`` so that
``lambda_+ = exp(+i omega)`` with the principal ``omega = arccos(sin^2 k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .state import (
    AmplitudeField,
    Boundary,
    Circle,
    InitialState,
    Line,
    WalkError,
    aligned_window,
    make_initial,
)

DEGENERACY_TOL = 1e-9


def reduce_wavenumber(k):
    """Map ``k`` into the principal interval ``[-pi, pi)``."""
    return np.mod(np.asarray(k, dtype=float) + np.pi, 2 * np.pi) - np.pi


def propagator(k) -> np.ndarray:
    """Step matrix ``M(k)``; array input gives shape ``k.shape + (2, 2)``."""
    k = np.asarray(k, dtype=float)
    s, c = np.sin(k), np.cos(k)
    m = np.empty(k.shape + (2, 2), dtype=np.complex128)
    m[..., 0, 0] = -1j * np.exp(1j * k) * s
    m[..., 0, 1] = 1j * c
    m[..., 1, 0] = 1j * c
    m[..., 1, 1] = 1j * np.exp(-1j * k) * s
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Eigen-decomposition of ``M(k)``.

    ``omega`` is the principal ``arccos(sin^2 k)`` in ``[0, pi]``; ``phase`` is
    the signed angle with ``lambda_plus = exp(i * phase)`` (equal to ``omega``
    when ``cos k >= 0``). Eigenvectors are unit norm with a real positive first
    component.
    """

    k: float
    omega: float
    phase: float
    lambda_plus: complex
    lambda_minus: complex
    e_plus: np.ndarray
    e_minus: np.ndarray
    degenerate: bool


def _eigen_arrays(k):
    k = np.asarray(k, dtype=float)
    s = np.sin(k)
    r = np.sqrt(1 + s * s)
    c = np.cos(k)
    lam_p = s * s + 1j * c * r
    lam_m = s * s - 1j * c * r
    # closed-form eigenvectors stay orthonormal through k = +-pi/2, where M = I
    ep = np.stack([r - s, np.ones_like(s)], axis=-1)
    em = np.stack([r + s, -np.ones_like(s)], axis=-1)
    ep = ep / np.linalg.norm(ep, axis=-1, keepdims=True)
    em = em / np.linalg.norm(em, axis=-1, keepdims=True)
    return lam_p, lam_m, ep.astype(np.complex128), em.astype(np.complex128)


def eigensystem(k: float) -> EigenSystem:
    s2 = math.sin(k) ** 2
    lam_p, lam_m, ep, em = _eigen_arrays(k)
    return EigenSystem(
        k=float(k),
        omega=math.acos(min(1.0, s2)),
        phase=float(np.angle(lam_p)),
        lambda_plus=complex(lam_p),
        lambda_minus=complex(lam_m),
        e_plus=ep,
        e_minus=em,
        degenerate=abs(math.cos(k)) < DEGENERACY_TOL,
    )


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Two-component amplitudes ``(A(k), B(k))`` on a wavenumber grid.

    ``plus``/``minus`` hold the components of the state along ``e_+``/``e_-``
    (so ``plus + minus == components``) once projected. ``n_lo`` and ``n_sites``
    locate the position-space window the grid belongs to.
    """

    k: np.ndarray
    components: np.ndarray
    n_lo: int
    n_sites: int
    boundary: Boundary
    time: int = 0
    plus: np.ndarray | None = None
    minus: np.ndarray | None = None

    @property
    def weight(self) -> float:
        """Parseval weight: ``weight * sum_k |psi(k)|^2`` is the position-space norm."""
        return 2.0 / self.n_sites


def wavenumber_grid(n_sites: int) -> np.ndarray:
    """``2 pi j / n_sites`` for ``j < n_sites/2``, reduced into ``[-pi/2, pi/2)``."""
    k = 2 * np.pi * np.arange(n_sites // 2) / n_sites
    return np.mod(k + np.pi / 2, np.pi) - np.pi / 2


def forward_transform(f: AmplitudeField) -> SpectralField:
    n_sites = f.amplitudes.size
    ncell = n_sites // 2
    k = wavenumber_grid(n_sites)
    m_lo = f.n_lo // 2
    cells = f.amplitudes.reshape(ncell, 2)
    # sum_idx e^{2 pi i j idx / ncell} x_idx == ncell * ifft(x)_j
    a = ncell * np.fft.ifft(cells[:, 0]) * np.exp(2j * k * m_lo)
    b = ncell * np.fft.ifft(cells[:, 1]) * np.exp(1j * k * (2 * m_lo + 1))
    return SpectralField(k, np.stack([a, b], axis=-1), f.n_lo, n_sites, f.boundary, f.time)


def inverse_transform(sf: SpectralField) -> AmplitudeField:
    ncell = sf.n_sites // 2
    m_lo = sf.n_lo // 2
    k = sf.k
    a = np.fft.fft(sf.components[:, 0] * np.exp(-2j * k * m_lo)) / ncell
    b = np.fft.fft(sf.components[:, 1] * np.exp(-1j * k * (2 * m_lo + 1))) / ncell
    amps = np.stack([a, b], axis=-1).reshape(-1)
    return AmplitudeField(amps, sf.n_lo, sf.boundary, sf.time)


def project(sf: SpectralField) -> SpectralField:
    """Numeric projection of ``sf.components`` onto the eigenvectors at each ``k``."""
    _, _, ep, em = _eigen_arrays(sf.k)
    cp = np.sum(ep.conj() * sf.components, axis=-1)
    cm = np.sum(em.conj() * sf.components, axis=-1)
    return replace(sf, plus=cp[:, None] * ep, minus=cm[:, None] * em)


def closed_form_projection(kind: InitialState, k) -> tuple[np.ndarray, np.ndarray]:
    """Components of the origin or symmetric initial state along ``e_+`` and ``e_-``.

    Origin:     +-1 / (2 r) * (-sin k +- r, 1)
    Symmetric:  +-1 / (2 sqrt(2) r) * (e^{ik} - sin k +- r, 1 + e^{ik} sin k +- e^{ik} r)

    with ``r = sqrt(1 + sin^2 k)``.
    """
    k = np.asarray(k, dtype=float)
    s = np.sin(k)
    r = np.sqrt(1 + s * s)
    if kind.kind == "origin":
        plus = np.stack([-s + r, np.ones_like(s)], axis=-1) / (2 * r)[..., None]
        minus = -np.stack([-s - r, np.ones_like(s)], axis=-1) / (2 * r)[..., None]
    elif kind.kind == "symmetric":
        z = np.exp(1j * k)
        norm = (2 * math.sqrt(2) * r)[..., None]
        plus = np.stack([z - s + r, 1 + z * s + z * r], axis=-1) / norm
        minus = -np.stack([z - s - r, 1 + z * s - z * r], axis=-1) / norm
    else:
        raise WalkError("closed-form projections exist only for the origin and symmetric states")
    return plus.astype(np.complex128), minus.astype(np.complex128)


def _spectral_window(kind: InitialState, t: int, boundary: Boundary, grid_size: int | None) -> AmplitudeField:
    if isinstance(boundary, Circle):
        if grid_size is not None and grid_size != boundary.size // 2:
            raise WalkError(f"a circle of {boundary.size} sites has exactly {boundary.size // 2} cells")
        return make_initial(kind, boundary)
    sites = [n for n, _ in kind.site_amplitudes()]
    lo, hi = aligned_window(min(sites) - 2 * t, max(sites) + 2 * t)
    need = (hi - lo + 1) // 2
    cells = need if grid_size is None else grid_size
    if cells < need:
        raise WalkError(f"grid of {cells} cells would alias at t={t}; need at least {need}")
    f = make_initial(kind, boundary)
    amps = np.zeros(2 * cells, dtype=np.complex128)
    for n, a in zip(f.sites, f.amplitudes):
        if a != 0:
            amps[n - lo] = a
    return AmplitudeField(amps, lo, boundary, 0)


def project_initial(
    kind: InitialState, boundary: Boundary | None = None, t: int = 0, grid_size: int | None = None
) -> SpectralField:
    """Transform of the initial state with ``plus``/``minus`` filled in.

    Closed forms are used for the origin and symmetric states; custom states
    are projected numerically.
    """
    boundary = Line() if boundary is None else boundary
    sf = forward_transform(_spectral_window(kind, t, boundary, grid_size))
    if kind.kind in ("origin", "symmetric"):
        plus, minus = closed_form_projection(kind, sf.k)
        return replace(sf, plus=plus, minus=minus)
    return project(sf)


def advance(sf: SpectralField, t: int) -> SpectralField:
    """``psi(k, t) = lambda_+^t psi_+(k) + lambda_-^t psi_-(k)`` for a projected field."""
    if sf.plus is None:
        sf = project(sf)
    lam_p, _, _, _ = _eigen_arrays(sf.k)
    phase = np.angle(lam_p) * t
    up = np.exp(1j * phase)[:, None]
    down = np.exp(-1j * phase)[:, None]
    plus, minus = up * sf.plus, down * sf.minus
    return replace(sf, components=plus + minus, plus=plus, minus=minus, time=sf.time + t)


def evolve_spectral(
    kind: InitialState, t: int, grid_size: int | None = None, boundary: Boundary | None = None
) -> AmplitudeField:
    """Position-space field after ``t`` steps, computed by diagonalisation.

    Parameters
    ----------
    grid_size : int, optional
        Number of cells (wavenumbers). Must be large enough that the support
        at time ``t`` does not wrap; defaults to the minimum.
    """
    if t < 0:
        raise WalkError("t must be non-negative")
    return inverse_transform(advance(project_initial(kind, boundary, t, grid_size), t))


def evolve_field_spectral(f: AmplitudeField, t: int) -> AmplitudeField:
    """Spectral evolution of an arbitrary field on its own window treated as a ring."""
    return inverse_transform(advance(project(forward_transform(f)), t))
