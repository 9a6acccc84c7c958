import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourthmoment.cumulants import (
    ConvolutionKind,
    CumulantSequence,
    MomentSequence,
    central_moments,
    coefficient_table,
    crossing_polynomial,
    cumulants_from_moments,
    dilate_moments,
    moments_from_cumulants,
    qgaussian_moments,
    scale_law,
)
from fourthmoment.errors import DomainError, SizeExceededError

from oracles import double_factorial_odd, catalan_numbers, independent_sum_moments

CLASSICAL = ConvolutionKind.CLASSICAL
FREE = ConvolutionKind.FREE


class TestCoefficientTables:
    def test_degree_four_classical_pattern(self):
        assert coefficient_table(CLASSICAL, 4) == {
            (4,): 1,
            (3, 1): 4,
            (2, 2): 3,
            (2, 1, 1): 6,
            (1, 1, 1, 1): 1,
        }

    def test_degree_four_free_pattern(self):
        assert coefficient_table(FREE, 4) == {
            (4,): 1,
            (3, 1): 4,
            (2, 2): 2,
            (2, 1, 1): 6,
            (1, 1, 1, 1): 1,
        }

    @pytest.mark.parametrize("n", (1, 2, 3))
    def test_kinds_agree_up_to_degree_three(self, n):
        assert coefficient_table(CLASSICAL, n) == coefficient_table(FREE, n)


class TestForward:
    def test_standard_gaussian(self):
        m = moments_from_cumulants(CumulantSequence(CLASSICAL, (0, 1, 0, 0)))
        assert m.values == (0.0, 1.0, 0.0, 3.0)

    def test_standard_semicircle(self):
        m = moments_from_cumulants(CumulantSequence(FREE, (0, 1, 0, 0)))
        assert m.values == (0.0, 1.0, 0.0, 2.0)

    def test_degree_four_polynomial_classical(self):
        c1, c2, c3, c4 = 0.7, -1.3, 0.4, 2.1
        m = moments_from_cumulants(CumulantSequence(CLASSICAL, (c1, c2, c3, c4)))
        expected = c4 + 4 * c3 * c1 + 3 * c2**2 + 6 * c2 * c1**2 + c1**4
        assert m.moment(4) == pytest.approx(expected, rel=1e-15)

    def test_degree_four_polynomial_free(self):
        k1, k2, k3, k4 = 0.7, -1.3, 0.4, 2.1
        m = moments_from_cumulants(CumulantSequence(FREE, (k1, k2, k3, k4)))
        expected = k4 + 4 * k3 * k1 + 2 * k2**2 + 6 * k2 * k1**2 + k1**4
        assert m.moment(4) == pytest.approx(expected, rel=1e-15)


class TestInverse:
    def test_gaussian_moments_invert(self):
        c = cumulants_from_moments(MomentSequence((0, 1, 0, 3)), CLASSICAL)
        assert c.values == (0.0, 1.0, 0.0, 0.0)

    def test_free_excess(self):
        m4 = 2.9
        c = cumulants_from_moments(MomentSequence((0, 1, 0, m4)), FREE)
        assert c.cumulant(4) == pytest.approx(m4 - 2.0, abs=1e-15)

    def test_classical_excess(self):
        m4 = 2.9
        c = cumulants_from_moments(MomentSequence((0, 1, 0, m4)), CLASSICAL)
        assert c.cumulant(4) == pytest.approx(m4 - 3.0, abs=1e-15)

    def test_roundtrip_thousand_trials(self):
        # The intermediate moments are rounded to doubles, which is the only
        # information lost; relative to the moment scale the roundtrip
        # reproduces the cumulants to 1e-12 with two orders of headroom.
        rng = np.random.default_rng(20240817)
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            kind = CLASSICAL if rng.integers(2) else FREE
            c0 = CumulantSequence(kind, tuple(rng.uniform(-2.0, 2.0, n)))
            m = moments_from_cumulants(c0)
            c1 = cumulants_from_moments(m, kind)
            scale = max(1.0, max(abs(v) for v in m.values))
            for a, b in zip(c0.values, c1.values):
                assert abs(a - b) <= 1e-12 * scale


class TestAdditivity:
    @pytest.mark.parametrize("seed", (1, 2, 3, 4, 5))
    def test_classical_addition_matches_convolution_oracle(self, seed):
        rng = np.random.default_rng(seed)
        a = CumulantSequence(CLASSICAL, tuple(rng.uniform(-1.5, 1.5, 6)))
        b = CumulantSequence(CLASSICAL, tuple(rng.uniform(-1.5, 1.5, 6)))
        via_cumulants = moments_from_cumulants(a + b)
        oracle = independent_sum_moments(
            list(moments_from_cumulants(a).values),
            list(moments_from_cumulants(b).values),
        )
        for got, want in zip(via_cumulants.values, oracle):
            assert got == pytest.approx(want, rel=1e-11, abs=1e-11)

    def test_add_requires_matching_kind(self):
        a = CumulantSequence(CLASSICAL, (0, 1))
        b = CumulantSequence(FREE, (0, 1))
        with pytest.raises(DomainError):
            a + b


class TestScaleAndDilation:
    def test_componentwise(self):
        c = scale_law(CumulantSequence(CLASSICAL, (0, 1, 0, 1)), 2.0)
        assert c.values == (0.0, 2.0, 0.0, 2.0)

    def test_identity(self):
        c0 = CumulantSequence(FREE, (0.3, 1.2, -0.5))
        assert scale_law(c0, 1.0) == c0

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            scale_law(CumulantSequence(CLASSICAL, (0, 1)), 0.0)
        with pytest.raises(DomainError):
            scale_law(CumulantSequence(CLASSICAL, (0, 1)), -2.0)

    def test_convolution_root_then_dilation(self):
        # Splitting into N pieces divides every cumulant by N; dilating one
        # piece by sqrt(N) restores unit variance and multiplies order 4 by
        # N^2, so the dilated piece carries N times the original fourth
        # cumulant.
        c4 = 0.8
        for N in (2, 5, 17):
            piece = scale_law(CumulantSequence(CLASSICAL, (0.0, 1.0, 0.0, c4)), 1.0 / N)
            piece_moments = moments_from_cumulants(piece)
            dilated = dilate_moments(piece_moments, math.sqrt(N))
            back = cumulants_from_moments(dilated, CLASSICAL)
            assert back.cumulant(2) == pytest.approx(1.0, abs=1e-13)
            assert back.cumulant(4) == pytest.approx(N * c4, rel=1e-12)

    def test_dilation_identity_and_zero(self):
        m = MomentSequence((0, 1, 0, 3))
        assert dilate_moments(m, 1.0) == m
        assert dilate_moments(MomentSequence((1, 2, 3)), 0.0).values == (0.0, 0.0, 0.0)

    def test_standardization(self):
        sigma2 = 2.7
        m = MomentSequence((0.0, sigma2, 0.0, 3.0 * sigma2**2))
        std = dilate_moments(m, 1.0 / math.sqrt(sigma2))
        assert std.values == pytest.approx((0.0, 1.0, 0.0, 3.0), abs=1e-14)


class TestQGaussian:
    def test_m4_is_two_plus_q(self):
        for q in (0.0, 0.3, 0.77, 1.0):
            m = qgaussian_moments(q, 4)
            assert m.moment(2) == 1.0
            assert m.moment(4) == pytest.approx(2.0 + q, abs=1e-15)

    def test_semicircle_endpoint(self):
        m = qgaussian_moments(0.0, 8)
        assert m.values[1::2] == tuple(float(c) for c in catalan_numbers(4))

    def test_gaussian_endpoint(self):
        m = qgaussian_moments(1.0, 12)
        expected = tuple(float(double_factorial_odd(k)) for k in range(1, 7))
        assert m.values[1::2] == expected

    def test_sixth_moment_polynomial(self):
        assert crossing_polynomial(6) == (5, 6, 3, 1)
        q = 0.42
        m = qgaussian_moments(q, 6)
        assert m.moment(6) == pytest.approx(5 + 6 * q + 3 * q * q + q**3, rel=1e-15)

    def test_odd_moments_vanish(self):
        assert qgaussian_moments(0.5, 8).values[0::2] == (0.0, 0.0, 0.0, 0.0)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            qgaussian_moments(-0.1, 4)
        with pytest.raises(DomainError):
            qgaussian_moments(0.5, 5)
        with pytest.raises(SizeExceededError):
            qgaussian_moments(0.5, 20)


class TestCentralMoments:
    def test_shift_formulas(self):
        rng = np.random.default_rng(7)
        xs = rng.uniform(-2, 2, 5)
        ws = rng.uniform(0.1, 1.0, 5)
        ws /= ws.sum()
        raw = MomentSequence(tuple(float(np.sum(ws * xs**j)) for j in range(1, 5)))
        var, central4 = central_moments(raw)
        mean = raw.moment(1)
        assert var == pytest.approx(float(np.sum(ws * (xs - mean) ** 2)), rel=1e-12)
        assert central4 == pytest.approx(float(np.sum(ws * (xs - mean) ** 4)), rel=1e-11)


@given(
    st.lists(st.floats(-2, 2, allow_nan=False), min_size=1, max_size=6),
    st.sampled_from([CLASSICAL, FREE]),
)
@settings(max_examples=120, deadline=None)
def test_conversion_roundtrip_property(values, kind):
    c0 = CumulantSequence(kind, tuple(values))
    m = moments_from_cumulants(c0)
    c1 = cumulants_from_moments(m, kind)
    scale = max(1.0, max(abs(v) for v in m.values))
    assert all(abs(a - b) <= 1e-12 * scale for a, b in zip(c0.values, c1.values))
