import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_field
from staggered_walk.evolution import ClassicalDistribution, evolve, evolve_classical, step_coinless
from staggered_walk.state import (
    AmplitudeField,
    Circle,
    InitialState,
    Line,
    WalkError,
    aligned_window,
    field_from_sites,
    make_initial,
    moments,
    pack,
    parity,
    probability_distribution,
    support_bounds,
    unpack,
)


class TestMakeInitial:
    def test_origin(self):
        f = make_initial(InitialState.origin(), t_max=3)
        assert f.amplitude(0) == 1
        assert probability_distribution(f) == [(0, 1.0)]
        assert f.time == 0

    def test_symmetric(self):
        f = make_initial(InitialState.symmetric(), t_max=3)
        assert f.amplitude(0) == pytest.approx(1 / math.sqrt(2))
        assert f.amplitude(1) == pytest.approx(1 / math.sqrt(2))
        assert abs(f.norm_squared() - 1) < 1e-12

    def test_custom_accepted(self):
        f = make_initial(InitialState.custom([(0, 0.6), (1, 0.8j)]), t_max=2)
        assert abs(f.norm_squared() - 1) < 1e-12
        assert f.amplitude(1) == 0.8j

    def test_custom_not_normalized_rejected(self):
        with pytest.raises(WalkError, match="not normalized"):
            make_initial(InitialState.custom([(0, 0.6), (1, 0.6)]))

    def test_custom_not_finite_rejected(self):
        with pytest.raises(WalkError):
            make_initial(InitialState.custom([(0, float("nan"))]))

    @pytest.mark.parametrize("size", [5, 7, 2])
    def test_bad_circles_rejected(self, size):
        with pytest.raises(WalkError):
            Circle(size)

    def test_window_covers_light_cone(self):
        t_max = 10
        f = make_initial(InitialState.origin(), t_max=t_max)
        assert f.n_lo <= -2 * t_max - 2 and f.n_hi >= 2 * t_max + 2
        assert f.n_lo % 2 == 0 and f.amplitudes.size % 2 == 0

    def test_circle_initial(self):
        f = make_initial(InitialState.symmetric(), Circle(8))
        assert f.amplitudes.size == 8
        with pytest.raises(WalkError):
            make_initial(InitialState.custom([(9, 1.0)]), Circle(8))


def test_parity_uses_absolute_label():
    assert list(parity(np.array([-3, -2, -1, 0, 1, 2]))) == [1, 0, 1, 0, 1, 0]


def test_aligned_window():
    assert aligned_window(-3, 4) == (-4, 5)
    assert aligned_window(2, 3) == (2, 3)


class TestDistribution:
    def test_one_step_from_origin_is_uniform_quarter(self):
        g = step_coinless(make_initial(InitialState.origin(), t_max=1))
        dist = probability_distribution(g)
        assert [n for n, _ in dist] == [-1, 0, 1, 2]
        assert all(abs(p - 0.25) < 1e-15 for _, p in dist)

    @given(st.integers(0, 2**32 - 1))
    def test_random_field_sums_to_one(self, seed):
        f = random_field(seed)
        assert abs(sum(p for _, p in probability_distribution(f)) - 1) < 1e-12


class TestSupport:
    def test_t0(self):
        assert support_bounds(make_initial(InitialState.origin())) == (0, 0)

    def test_t1(self):
        assert support_bounds(step_coinless(make_initial(InitialState.origin(), t_max=1))) == (-1, 2)

    def test_t32(self):
        g = evolve(make_initial(InitialState.origin(), t_max=32), 32)
        lo, hi = support_bounds(g)
        assert -63 <= lo and hi <= 64

    def test_circle_rejected(self):
        with pytest.raises(WalkError):
            support_bounds(make_initial(InitialState.origin(), Circle(8)))


class TestMoments:
    def test_origin_t0(self):
        m = moments(make_initial(InitialState.origin()), 0.0)
        assert (m.total_probability, m.abs_first_moment, m.second_moment) == (1, 0, 0)

    def test_symmetric_t200_second_moment(self):
        t = 200
        g = evolve(make_initial(InitialState.symmetric(), t_max=t), t)
        m = moments(g, 0.5)
        assert 0.95 <= m.second_moment / (2 * (2 - math.sqrt(2)) * t * t) <= 1.05
        assert m.second_moment >= 0

    def test_classical_variance(self):
        t = 30
        d = evolve_classical(ClassicalDistribution.origin(t), t)
        x = d.sites
        assert np.sum(x * x * d.probs) == t


class TestPacking:
    def test_origin_cell(self):
        psi = pack(make_initial(InitialState.origin(), t_max=0))
        assert tuple(psi.cells[0 - psi.cell_lo]) == (1, 0)

    def test_pair_into_cell_one(self):
        f = field_from_sites([2, 3], [0.6, 0.8j])
        psi = pack(f)
        assert tuple(psi.cells[1 - psi.cell_lo]) == (0.6, 0.8j)

    @given(st.integers(0, 2**32 - 1))
    def test_roundtrip(self, seed):
        f = random_field(seed)
        g = unpack(pack(f))
        assert g.n_lo == f.n_lo and np.array_equal(g.amplitudes, f.amplitudes)
        psi = pack(f)
        assert np.array_equal(pack(unpack(psi)).cells, psi.cells)
        assert psi.cells.shape[0] == f.amplitudes.size // 2


def test_unaligned_window_rejected():
    with pytest.raises(WalkError):
        AmplitudeField(np.zeros(4), n_lo=-1)
    with pytest.raises(WalkError):
        AmplitudeField(np.zeros(5), n_lo=0)


def test_padded_grows_window():
    f = make_initial(InitialState.origin(), t_max=0)
    g = f.padded(3)
    assert g.n_lo == f.n_lo - 4 and g.amplitude(0) == 1
