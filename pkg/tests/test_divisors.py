import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalk.divisors import (
    constancy_check,
    fiber_zero_count,
    nodal_branch_order,
    winding_count,
)
from nodalk.errors import ContourThroughZeroError, DegenerateBranchError
from nodalk.extension import TwoVarSeries

Z_PLUS_W_SQ = TwoVarSeries.from_dict({(1, 0): 1, (0, 1): 1}) ** 2
EXAMPLE_ONE = TwoVarSeries.from_dict({(1, 0): 1})


class TestWinding:
    def test_identity(self):
        assert winding_count(lambda z: z, 1.0).winding == 1

    def test_cubic(self):
        # oracle: explicit roots
        roots = np.roots([1, 0, 0, 0.1])
        assert np.sum(np.abs(roots) < 1) == 3
        assert winding_count(lambda z: z**3 + 0.1, 1.0).winding == 3

    def test_constant(self):
        assert winding_count(lambda z: 5 + 0 * z, 1.0).winding == 0

    def test_pole(self):
        assert winding_count(lambda z: 1 / z**2, 0.5).winding == -2

    def test_contour_through_zero(self):
        with pytest.raises(ContourThroughZeroError) as exc:
            winding_count(lambda z: z - 1, 1.0)
        assert exc.value.angle == pytest.approx(0.0)

    def test_grid_refinement(self):
        # z^600 turns 0.59 of a revolution per step at N = 1024; doubling twice fixes it
        rep = winding_count(lambda z: z**600, 1.0, N=1024)
        assert rep.winding == 600 and rep.N == 4096

    def test_integer_defect(self, rng):
        for _ in range(20):
            roots = rng.uniform(-1.5, 1.5, 5) + 1j * rng.uniform(-1.5, 1.5, 5)
            g = lambda z: np.prod(z[..., None] - roots, axis=-1)  # noqa: E731
            if np.min(np.abs(np.abs(roots) - 1)) < 1e-3:
                continue
            rep = winding_count(g, 1.0)
            assert rep.integer_defect <= 1e-6
            assert rep.winding == np.sum(np.abs(roots) < 1)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), theta=st.floats(0, 2 * np.pi))
def test_multiplicative_and_rotation_invariant(seed, theta):
    rng = np.random.default_rng(seed)
    ra = rng.uniform(0.1, 0.8, 3) * np.exp(2j * np.pi * rng.uniform(size=3))
    rb = rng.uniform(1.2, 2, 2) * np.exp(2j * np.pi * rng.uniform(size=2))
    ga = lambda z: np.prod(z[..., None] - ra, axis=-1)  # noqa: E731
    gb = lambda z: np.prod(z[..., None] - rb, axis=-1) / z  # noqa: E731
    wa, wb = winding_count(ga, 1.0).winding, winding_count(gb, 1.0).winding
    assert winding_count(lambda z: ga(z) * gb(z), 1.0).winding == wa + wb
    assert winding_count(lambda z: ga(np.exp(1j * theta) * z), 1.0).winding == wa


class TestFiberCount:
    def test_squared_example(self):
        assert fiber_zero_count(Z_PLUS_W_SQ, -0.01, 0.02, 0.9) == 4

    def test_constant(self):
        assert fiber_zero_count(TwoVarSeries.from_dict({(0, 0): 1}), 0.01, 0.02, 0.9) == 0

    def test_example_one(self):
        assert fiber_zero_count(EXAMPLE_ONE, 0.01, 0.02, 0.9) == 0

    def test_against_roots(self, rng):
        # 3 zeta + 5 t/zeta + 7 t vanishes where 3 zeta^2 + 7 t zeta + 5 t = 0
        f = TwoVarSeries.from_dict({(1, 0): 3, (0, 1): 5, (1, 1): 7})
        for t in (1e-2, 1e-3 * np.exp(0.4j), -1e-4):
            r_in, r_out = abs(t) / 0.9, 0.9
            roots = np.roots([3, 7 * t, 5 * t])
            expected = int(np.sum((np.abs(roots) > r_in) & (np.abs(roots) < r_out)))
            assert fiber_zero_count(f, t, r_in, r_out) == expected == 2


class TestBranchOrder:
    def test_squared_z(self):
        b = nodal_branch_order(Z_PLUS_W_SQ, "z", 0.9)
        assert (b.order_at_origin, b.zeros_in_punctured_disc) == (2, 0)

    def test_squared_w(self):
        b = nodal_branch_order(Z_PLUS_W_SQ, "w", 0.9)
        assert (b.order_at_origin, b.zeros_in_punctured_disc) == (2, 0)

    def test_degenerate(self):
        with pytest.raises(DegenerateBranchError) as exc:
            nodal_branch_order(EXAMPLE_ONE, "w", 0.9)
        assert exc.value.branch == "w"

    def test_extra_zero_in_punctured_disc(self):
        # f(z, 0) = z (z - 0.5)
        f = TwoVarSeries.from_dict({(1, 0): -0.5, (2, 0): 1, (0, 1): 1})
        b = nodal_branch_order(f, "z", 0.9)
        assert (b.order_at_origin, b.zeros_in_punctured_disc) == (1, 1)


class TestConstancy:
    def test_squared(self):
        rep = constancy_check(Z_PLUS_W_SQ, [-1e-2, 1e-3j, 1e-4, 1e-6])
        assert rep.counts == [4, 4, 4, 4]
        assert rep.nodal_total == 4 and rep.passed

    @pytest.mark.parametrize("m", [1, 3])
    def test_general_multiplicity(self, m):
        # (a z + b w)^m has 2m zeros per collar
        f = TwoVarSeries.from_dict({(1, 0): 2, (0, 1): -0.5}) ** m
        rep = constancy_check(f, [1e-2, 1e-3, 1e-5])
        assert set(rep.counts) == {2 * m} and rep.passed

    def test_constant(self):
        rep = constancy_check(TwoVarSeries.from_dict({(0, 0): 1}), [1e-2, 1e-4])
        assert rep.counts == [0, 0] and rep.passed

    def test_linear_mix(self):
        f = TwoVarSeries.from_dict({(1, 0): 3, (0, 1): 5, (1, 1): 7})
        rep = constancy_check(f, [1e-2, 1e-3, 1e-4])
        assert rep.constant and rep.passed and rep.counts[0] == 2

    def test_degenerate_abstains(self):
        rep = constancy_check(EXAMPLE_ONE, [1e-2, 1e-3])
        assert rep.degenerate == ["w"] and rep.passed is None
        assert rep.branches["z"].order_at_origin == 1
