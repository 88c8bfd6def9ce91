"""Pure numpy stepping kernels; reference backend and fallback for the Cython core.

All functions update their array argument in place. Arrays hold an aligned
window (first slot an even site, even length), so the odd-pair half-step
mixes slots ``(2j, 2j+1)`` and the even-pair half-step mixes ``(2j+1, 2j+2)``.

Full steps use the fused row form

    psi'(n) = (psi(n) + i (psi(n-1) + psi(n+1)) - psi(n -+ 2)) / 2

(``n - 2`` for even ``n``, ``n + 2`` for odd ``n``). It is algebraically the
product of the two half-steps but only rounds in additions; composing two
roundings of ``1/sqrt(2)`` drifts the norm by ~1e-16 per step.
"""

import math

import numpy as np

S = 1.0 / math.sqrt(2.0)


def _mix(psi, lo, hi):
    a = psi[lo].copy()
    b = psi[hi].copy()
    psi[lo] = S * (a + 1j * b)
    psi[hi] = S * (1j * a + b)


def half_step_odd(psi):
    _mix(psi, slice(0, None, 2), slice(1, None, 2))


def half_step_even(psi, periodic):
    """Mix pairs (2m+1, 2m+2); on a line the edge slots are left untouched."""
    _mix(psi, slice(1, -1, 2), slice(2, None, 2))
    if periodic:
        _mix(psi, slice(-1, None), slice(0, 1))


def _edges_clear(psi):
    return psi[0] == 0 and psi[1] == 0 and psi[-2] == 0 and psi[-1] == 0


def _full_step(psi):
    # Line windows are only stepped with empty edges, so wrapping reads zeros.
    side = np.roll(psi, 1) + np.roll(psi, -1)
    far = np.empty_like(psi)
    far[0::2] = np.roll(psi, 2)[0::2]
    far[1::2] = np.roll(psi, -2)[1::2]
    u = psi + 1j * side
    u -= far
    return 0.5 * u


def coinless_steps(psi, steps, periodic):
    """Apply ``steps`` full steps; return the number completed before a line edge was hit."""
    for k in range(steps):
        if not periodic and not _edges_clear(psi):
            return k
        psi[:] = _full_step(psi)
    return steps


def wall_steps(psi, steps, wall_index, absorbed):
    """Line steps each followed by zeroing slots below ``wall_index``.

    ``absorbed[k]`` receives the probability removed in step ``k``.
    """
    for k in range(steps):
        if not _edges_clear(psi):
            return k
        psi[:] = _full_step(psi)
        below = psi[:wall_index]
        absorbed[k] = float(np.sum(below.real * below.real + below.imag * below.imag))
        below[:] = 0
    return steps


def classical_steps(p, steps):
    """Exact symmetric random-walk convolution ``p'(n) = (p(n-1) + p(n+1)) / 2``."""
    for k in range(steps):
        if p[1] != 0 or p[-2] != 0:
            return k
        inner = 0.5 * (p[:-2] + p[2:])
        p[1:-1] = inner
    return steps
