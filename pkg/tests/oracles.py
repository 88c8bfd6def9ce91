"""Independent reference constructions used as test oracles."""

import math

import numpy as np


def dense_half_steps(n_lo: int, n_sites: int):
    """Dense matrices of both half-steps on a ring of sites ``n_lo .. n_lo + n_sites - 1``.

    Built column by column from the single-site rules
    ``|n> -> (|n> + i|n + (-1)^n>) / sqrt 2`` (odd pairs) and
    ``|n> -> (|n> + i|n - (-1)^n>) / sqrt 2`` (even pairs).
    """
    s = 1 / math.sqrt(2)
    odd = np.zeros((n_sites, n_sites), dtype=complex)
    even = np.zeros((n_sites, n_sites), dtype=complex)
    for j in range(n_sites):
        n = n_lo + j
        sign = 1 if n % 2 == 0 else -1
        odd[j, j] += s
        odd[(n + sign - n_lo) % n_sites, j] += 1j * s
        even[j, j] += s
        even[(n - sign - n_lo) % n_sites, j] += 1j * s
    return odd, even


def dense_step(n_lo: int, n_sites: int):
    odd, even = dense_half_steps(n_lo, n_sites)
    return even @ odd
