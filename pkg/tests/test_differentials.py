import json

import numpy as np
import pytest

from nodalk.checks import random_laurent
from nodalk.differentials import (
    AnnulusKDifferential,
    BandSpec,
    NodalKDifferential,
    band_sup,
    interior_sup_check,
    is_band_bounded,
    nodal_residue_check,
)
from nodalk.errors import DomainError
from nodalk.laurent import LaurentSeries
from nodalk.nodal import AnnulusSpec


def diff_on_fiber(f, b, k=1):
    return AnnulusKDifferential(k, f, b.fiber)


@pytest.fixture
def band():
    return BandSpec(rho1=0.5, rho2=0.9, M=1.0, t=0.01)


class TestBandSpec:
    def test_radii(self, band):
        assert band.outer == pytest.approx((0.5, 0.9))
        assert band.inner == pytest.approx((0.01 / 0.9, 0.02))

    def test_overlap_rejected(self):
        with pytest.raises(DomainError):
            BandSpec(0.5, 0.9, 1.0, t=0.3)

    def test_order_rejected(self):
        with pytest.raises(DomainError):
            BandSpec(0.9, 0.5, 1.0, t=0.01)


class TestBandSup:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_alpha_power(self, band, k):
        d = diff_on_fiber(LaurentSeries.from_dict({0: 2**k}), band, k)
        for which in ("inner", "outer"):
            assert band_sup(d, band, which) == pytest.approx(2**k)

    def test_identity_outer(self, band):
        d = diff_on_fiber(LaurentSeries.from_dict({1: 1}), band)
        assert band_sup(d, band, "outer") == pytest.approx(0.9, abs=1e-15)

    def test_zero(self, band):
        d = diff_on_fiber(LaurentSeries.zero(), band)
        assert band_sup(d, band, "outer") == 0 and band_sup(d, band, "inner") == 0

    def test_outside_annulus(self, band):
        d = AnnulusKDifferential(1, LaurentSeries.from_dict({0: 1}), AnnulusSpec(0.05, 1))
        with pytest.raises(DomainError):
            band_sup(d, band, "inner")

    def test_coordinate_free(self, rng):
        for t in (0.01, 0.004 * np.exp(1.1j), -0.02j):
            b = BandSpec(0.5, 0.9, 1.0, t)
            d = diff_on_fiber(random_laurent(rng, -6, 6), b)
            zeta_side = band_sup(d, b, "inner", coordinate="zeta")
            w_side = band_sup(d, b, "inner", coordinate="w")
            assert abs(zeta_side - w_side) <= 1e-12 * zeta_side


class TestBandBounded:
    def test_constant(self, band):
        b = BandSpec(0.5, 0.9, 2.0, 0.01)
        assert is_band_bounded(diff_on_fiber(LaurentSeries.from_dict({0: 1}), b), b)

    def test_inverse_blows_up(self):
        f = LaurentSeries.from_dict({-1: 1})
        results = []
        for t in (1e-2, 1e-4, 1e-6):
            b = BandSpec(0.5, 0.9, 1.0, t)
            results.append(is_band_bounded(diff_on_fiber(f, b), b))
            # |1/zeta| on the inner band is c' rho / |t|
            assert band_sup(diff_on_fiber(f, b), b, "inner") == pytest.approx(0.9 / t)
        assert results == [False, False, False]

    @pytest.mark.parametrize("m", [1, 2])
    def test_polar_criterion(self, m):
        g = LaurentSeries.from_dict({0: 0.5, 1: 0.3})
        f = g.shift(-m)
        for t in (1e-2, 1e-3):
            b = BandSpec(0.5, 0.9, 1.0, t)
            d = diff_on_fiber(f, b)
            assert not is_band_bounded(d, b)
            assert band_sup(d, b, "inner") <= 1.0 * t ** (-m)
            assert is_band_bounded(diff_on_fiber(f.shift(m), b), b)

    def test_monotone_in_M(self, rng):
        f = random_laurent(rng, -2, 2)
        b_small = BandSpec(0.5, 0.9, 1.0, 0.01)
        for M in (1.0, 10.0, 1e3, 1e6):
            b = BandSpec(0.5, 0.9, M, 0.01)
            if is_band_bounded(diff_on_fiber(f, b_small), b_small):
                assert is_band_bounded(diff_on_fiber(f, b), b)

    def test_antitone_in_width(self, rng):
        f = random_laurent(rng, -3, 3)
        narrow = BandSpec(0.6, 0.8, 1.0, 0.01)
        wide = BandSpec(0.5, 0.9, 1.0, 0.01)
        for which in ("inner", "outer"):
            assert band_sup(diff_on_fiber(f, narrow), narrow, which) <= \
                band_sup(diff_on_fiber(f, wide), wide, which) * (1 + 1e-12)


class TestMaximumPrinciple:
    def test_constant(self, band):
        interior, band_max = interior_sup_check(diff_on_fiber(LaurentSeries.from_dict({0: 3}), band), band)
        assert interior == pytest.approx(3) and band_max == pytest.approx(3)

    def test_symmetric(self):
        # zeta + 1/zeta on the annulus 0.1 < |zeta| < 10 (t = 1, c = c' = 10)
        b = BandSpec(0.5, 0.9, 1.0, t=1.0, c=10.0, c_prime=10.0)
        d = AnnulusKDifferential(1, LaurentSeries.from_dict({-1: 1, 1: 1}), b.fiber)
        interior, band_max = interior_sup_check(d, b)
        # dense sampling oracle
        rr = np.geomspace(b.inner[1], b.outer[0], 400)
        dense = np.max(np.abs(rr + 1 / rr))
        assert interior <= band_max + 1e-9
        assert interior <= dense + 1e-12

    def test_random(self, rng):
        b = BandSpec(0.5, 0.9, 1.0, 0.01)
        for _ in range(100):
            d = diff_on_fiber(random_laurent(rng, -12, 12), b)
            interior, band_max = interior_sup_check(d, b, N=128)
            assert interior <= band_max * (1 + 1e-9)


class TestNodalResidue:
    def test_alpha(self):
        n = NodalKDifferential(1, LaurentSeries.from_dict({0: 1}), LaurentSeries.from_dict({0: -1}))
        assert nodal_residue_check(n)

    def test_even_weight(self):
        n = NodalKDifferential(2, LaurentSeries.from_dict({0: 4}), LaurentSeries.from_dict({0: 4}))
        assert nodal_residue_check(n)

    def test_sign_mismatch(self):
        n = NodalKDifferential(1, LaurentSeries.from_dict({0: 1}), LaurentSeries.from_dict({0: 1}))
        assert not nodal_residue_check(n)

    def test_power_series_required(self):
        with pytest.raises(DomainError):
            NodalKDifferential(1, LaurentSeries.from_dict({-1: 1}))


def test_json_roundtrip(rng):
    d = AnnulusKDifferential(2, random_laurent(rng, -3, 3), AnnulusSpec(0.01, 1.0))
    doc = json.loads(json.dumps(d.to_json()))
    assert set(doc) == {"k", "f", "annulus"}
    back = AnnulusKDifferential.from_json(doc)
    assert back.k == 2 and back.annulus == d.annulus
    assert np.array_equal(back.f.coeffs, d.f.coeffs)
