import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_field
from oracles import dense_half_steps, dense_step
from staggered_walk.evolution import (
    COIN,
    HALF_STEP_BLOCK,
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
from staggered_walk.state import (
    Circle,
    InitialState,
    WalkError,
    WindowOverflowError,
    field_from_sites,
    make_initial,
    pack,
    probabilities,
    support_bounds,
    unpack,
)

R = 1 / math.sqrt(2)


def amps(f, sites):
    return np.array([f.amplitude(n) for n in sites])


def test_blocks_are_unitary():
    for b in (HALF_STEP_BLOCK, COIN):
        assert np.abs(b @ b.conj().T - np.eye(2)).max() < 1e-15


class TestHalfSteps:
    def test_odd_pair_from_even_site(self, backend):
        g = half_step_odd(field_from_sites([0], [1.0]), backend)
        assert np.allclose(amps(g, [0, 1]), [R, 1j * R], atol=1e-16, rtol=0)

    def test_odd_pair_from_odd_site(self, backend):
        g = half_step_odd(field_from_sites([1], [1.0]).padded(2), backend)
        assert np.allclose(amps(g, [0, 1]), [1j * R, R], atol=1e-16, rtol=0)

    def test_even_pair_from_even_site(self, backend):
        g = half_step_even(field_from_sites([0], [1.0]).padded(2), backend)
        assert np.allclose(amps(g, [-1, 0]), [1j * R, R], atol=1e-16, rtol=0)

    def test_even_pair_from_odd_site(self, backend):
        g = half_step_even(field_from_sites([1], [1.0]).padded(2), backend)
        assert np.allclose(amps(g, [1, 2]), [R, 1j * R], atol=1e-16, rtol=0)

    def test_even_block_squared_swaps_with_i(self, backend):
        # block^2 = [[0, i], [i, 0]] by hand, so |0> -> i|-1>
        f = field_from_sites([0], [1.0]).padded(2)
        g = half_step_even(half_step_even(f, backend), backend)
        assert abs(g.amplitude(-1) - 1j) < 1e-15
        assert abs(g.amplitude(0)) < 1e-15

    def test_line_edge_overflow(self):
        f = field_from_sites([-1], [1.0])  # window [-2, -1]; -1 pairs with 0 outside
        with pytest.raises(WindowOverflowError):
            half_step_even(f)

    @given(st.integers(0, 2**32 - 1))
    def test_match_dense_oracle(self, seed):
        f = random_field(seed)
        odd, even = dense_half_steps(f.n_lo, f.amplitudes.size)
        assert np.abs(half_step_odd(f).amplitudes - odd @ f.amplitudes).max() < 1e-15
        assert np.abs(half_step_even(f).amplitudes - even @ f.amplitudes).max() < 1e-15


class TestStepCoinless:
    def test_row_from_even_site(self, backend):
        g = step_coinless(make_initial(InitialState.origin(), t_max=1), backend)
        got = amps(g, [-1, 0, 1, 2])
        assert np.abs(got - np.array([0.5j, 0.5, 0.5j, -0.5])).max() <= 1e-15
        assert g.time == 1

    def test_row_from_odd_site(self, backend):
        f = field_from_sites([1], [1.0]).padded(4)
        g = step_coinless(f, backend)
        got = amps(g, [-1, 0, 1, 2])
        assert np.abs(got - np.array([-0.5, 0.5j, 0.5, 0.5j])).max() <= 1e-15

    def test_symmetric_pair(self, backend):
        g = step_coinless(make_initial(InitialState.symmetric(), t_max=1), backend)
        c = 1 / (2 * math.sqrt(2))
        expected = c * np.array([1j - 1, 1 + 1j, 1 + 1j, 1j - 1])
        assert np.abs(amps(g, [-1, 0, 1, 2]) - expected).max() < 1e-15

    @given(st.integers(0, 2**32 - 1))
    def test_equals_half_steps_in_order(self, seed):
        f = random_field(seed)
        fused = step_coinless(f).amplitudes
        assert np.abs(fused - half_step_even(half_step_odd(f)).amplitudes).max() < 1e-15
        # the opposite order is a different walk
        assert np.abs(fused - half_step_odd(half_step_even(f)).amplitudes).max() > 1e-3

    def test_matches_dense_power(self):
        f = make_initial(InitialState.origin(), t_max=16)
        u = dense_step(f.n_lo, f.amplitudes.size)
        expected = np.linalg.matrix_power(u, 16) @ f.amplitudes
        assert np.abs(evolve(f, 16).amplitudes - expected).max() < 1e-13


class TestEvolve:
    def test_zero_steps(self):
        f = make_initial(InitialState.symmetric(), t_max=2)
        g = evolve(f, 0)
        assert np.array_equal(g.amplitudes, f.amplitudes) and g.time == 0

    def test_origin_32(self):
        g = evolve(make_initial(InitialState.origin(), t_max=32), 32)
        lo, hi = support_bounds(g)
        assert -63 <= lo and hi <= 64
        assert (lo, hi) == (-63, 64)
        assert abs(g.norm_squared() - 1) < 1e-12

    def test_symmetric_mirror_32(self):
        g = evolve(make_initial(InitialState.symmetric(), t_max=32), 32)
        p = dict(zip(g.sites, probabilities(g)))
        assert all(p[n] == p[1 - n] for n in p if 1 - n in p)

    def test_overflow(self):
        f = make_initial(InitialState.origin(), t_max=3)
        with pytest.raises(WindowOverflowError):
            evolve(f, 10)

    def test_negative_steps(self):
        with pytest.raises(WalkError):
            evolve(make_initial(InitialState.origin()), -1)

    def test_classical_kind_rejected(self):
        with pytest.raises(WalkError):
            evolve(make_initial(InitialState.origin()), 1, WalkKind.CLASSICAL)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 30))
    def test_norm_conserved(self, seed, steps):
        f = random_field(seed, n_lo=-80, n_sites=160, pad=70)
        assert abs(evolve(f, steps).norm_squared() - 1) < 1e-12

    @given(st.integers(0, 2**32 - 1))
    def test_ultra_local(self, seed):
        f = random_field(seed, pad=8)
        lo, hi = support_bounds(f)
        lo1, hi1 = support_bounds(step_coinless(f))
        assert lo1 >= lo - 2 and hi1 <= hi + 2


class TestCoined:
    def test_coin_on_up(self):
        assert np.allclose(COIN @ np.array([1, 0]), np.array([1, 1j]) * R)

    def test_stay_put_weight(self):
        # a cell whose neighbours are empty keeps 1/sqrt(2) of the post-coin amplitude
        f = field_from_sites([0], [1.0]).padded(4)
        psi = pack(f)
        out = step_coined(psi)
        cell = 0 - psi.cell_lo
        assert np.allclose(out.cells[cell], R * (COIN @ psi.cells[cell]))
        assert abs(np.sum(np.abs(out.cells[cell]) ** 2) - 0.5) < 1e-15

    @given(st.integers(0, 2**32 - 1))
    def test_one_step_equivalence(self, seed):
        f = random_field(seed)
        assert np.abs(unpack(step_coined(pack(f))).amplitudes - step_coinless(f).amplitudes).max() < 1e-13

    @given(st.integers(0, 2**32 - 1), st.integers(1, 64))
    def test_packing_equivalence(self, seed, t):
        f = random_field(seed, n_lo=-140, n_sites=280, pad=136)
        lhs = unpack(evolve_coined(pack(f), t)).amplitudes
        rhs = evolve(f, t).amplitudes
        assert np.abs(lhs - rhs).max() < 1e-12 * t

    def test_circle_equivalence(self):
        f = random_field(3, circle=True, n_sites=16)
        assert np.abs(unpack(evolve_coined(pack(f), 50)).amplitudes - evolve(f, 50).amplitudes).max() < 1e-12

    def test_unitary(self):
        f = random_field(11)
        assert abs(np.sum(np.abs(step_coined(pack(f)).cells) ** 2) - 1) < 1e-13

    def test_overflow(self):
        f = field_from_sites([0], [1.0])
        with pytest.raises(WindowOverflowError):
            evolve_coined(pack(f), 3)


class TestCircle:
    def test_no_wrap_matches_line_exactly(self):
        t = 14
        ring = evolve(make_initial(InitialState.origin(), Circle(64)), t)
        line = evolve(make_initial(InitialState.origin(), t_max=t), t)
        for n in line.sites:
            assert ring.amplitude(int(n)) == line.amplitude(int(n))

    def test_norm_long_run(self):
        g = evolve(make_initial(InitialState.origin(), Circle(64)), 10_000)
        assert abs(g.norm_squared() - 1) < 1e-12

    @given(st.integers(0, 2**32 - 1))
    def test_matches_dense_ring(self, seed):
        f = random_field(seed, circle=True, n_sites=12)
        u = dense_step(0, 12)
        assert np.abs(step_coinless(f).amplitudes - u @ f.amplitudes).max() < 1e-14


class TestClassical:
    def test_one_step(self):
        d = step_classical(ClassicalDistribution.origin(1))
        assert dict(zip(d.sites, d.probs)) == {-2: 0, -1: 0.5, 0: 0, 1: 0.5, 2: 0}

    def test_two_steps(self):
        d = evolve_classical(ClassicalDistribution.origin(2), 2)
        nz = {int(n): p for n, p in zip(d.sites, d.probs) if p}
        assert nz == {-2: 0.25, 0: 0.5, 2: 0.25}

    @pytest.mark.parametrize("t", [1, 7, 50, 100])
    def test_binomial_and_variance(self, t, backend):
        d = evolve_classical(ClassicalDistribution.origin(t), t, backend)
        x = d.sites
        assert np.sum(d.probs) == 1.0
        assert abs(np.sum(x * x * d.probs) - t) < 1e-12
        k = (x + t) // 2
        expected = np.where((x + t) % 2 == 0, [math.comb(t, int(j)) / 2**t if 0 <= j <= t else 0 for j in k], 0)
        assert np.abs(d.probs - expected).max() < 1e-15

    def test_overflow(self):
        with pytest.raises(WindowOverflowError):
            evolve_classical(ClassicalDistribution.origin(2), 5)
