"""Coinless (staggered) discrete-time quantum walks on a line and a circle.

Three engines evolve the same walk and check each other: direct stepping
(:mod:`.evolution`), diagonalisation in momentum space (:mod:`.spectral`) and
stationary-phase asymptotics (:mod:`.asymptotics`). :mod:`.wall` adds an
absorbing wall at the origin.
"""

from .kernels import DEFAULT_BACKEND as KERNEL_BACKEND
from .state import (
    AmplitudeField,
    Circle,
    InitialState,
    Line,
    MomentReport,
    TwoComponentField,
    WalkError,
    WindowOverflowError,
    make_initial,
    moments,
    pack,
    probabilities,
    probability_distribution,
    support_bounds,
    unpack,
)
from .evolution import (
    ClassicalDistribution,
    WalkKind,
    evolve,
    evolve_classical,
    evolve_coined,
    half_step_even,
    half_step_odd,
    step_classical,
    step_coined,
    step_coinless,
)
from .spectral import eigensystem, evolve_spectral, forward_transform, inverse_transform, propagator
from .wall import AbsorptionSeries, estimate_asymptote, run_absorption, step_with_wall

__version__ = "0.1.0"
