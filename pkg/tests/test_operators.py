"""Transform, multipliers, convolution, summability means.

The transform oracle is a direct double loop over cells and indices using
the character sum definition; the convolution oracle is the translation
average.  Both are independent of the butterfly code under test.
"""

import numpy as np
import pytest
from fractions import Fraction

from walshfejer.dyadic import point, walsh
from walshfejer.operators import (
    apply_multiplier,
    convolve,
    fourier_coefficients,
    marcinkiewicz_fejer_mean,
    marcinkiewicz_fejer_multiplier,
    naive_convolution,
    rectangular_partial_sum,
    spectrum_to_function,
    square_partial_sum,
    triangular_fejer_mean,
    triangular_fejer_multiplier,
    triangular_partial_sum,
)
from walshfejer.stepfn import StepFunction1D, StepFunction2D, rel_error, values_equal


def frac2d(raw) -> StepFunction2D:
    arr = np.asarray(raw)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = Fraction(int(arr[idx]))
    side = arr.shape[0]
    return StepFunction2D(out, side.bit_length() - 1)


def random_exact(levels: int, seed: int) -> StepFunction2D:
    rng = np.random.default_rng(seed)
    side = 1 << levels
    return frac2d(rng.integers(-9, 10, size=(side, side)))


def coeff_oracle(f: StepFunction2D, i: int, j: int) -> Fraction:
    """hat f(i, j) = integral of f w_i w_j, straight from the definition."""
    side = f.side
    acc = Fraction(0)
    for cx in range(side):
        for cy in range(side):
            acc += (f.values[cx, cy]
                    * walsh(i, point(cx, f.levels)) * walsh(j, point(cy, f.levels)))
    return acc / (side * side)


class TestTransform:
    def test_coefficients_match_direct_sum(self):
        f = random_exact(2, 11)
        spec = fourier_coefficients(f)
        for i in range(4):
            for j in range(4):
                assert spec.coefficient(i, j) == coeff_oracle(f, i, j)

    def test_round_trip_exact(self):
        f = random_exact(3, 12)
        back = spectrum_to_function(fourier_coefficients(f))
        assert values_equal(back.values, f.values)

    def test_round_trip_float(self):
        rng = np.random.default_rng(13)
        vals = rng.normal(size=(16, 16))
        f = StepFunction2D(vals, 4)
        back = spectrum_to_function(fourier_coefficients(f))
        assert rel_error(back.values, vals) < 1e-12

    def test_parseval(self):
        f = random_exact(3, 14)
        spec = fourier_coefficients(f)
        lhs = sum((v * v for v in f.values.flat), Fraction(0)) / f.side ** 2
        rhs = sum((v * v for v in spec.values.flat), Fraction(0))
        assert lhs == rhs

    def test_spectrum_of_single_character(self):
        # f = w_3(x) w_1(y) has a single unit coefficient
        M = 3
        side = 1 << M
        vals = np.empty((side, side), dtype=object)
        for cx in range(side):
            for cy in range(side):
                vals[cx, cy] = Fraction(
                    walsh(3, point(cx, M)) * walsh(1, point(cy, M)))
        spec = fourier_coefficients(StepFunction2D(vals, M))
        want = np.zeros((side, side))
        want[3, 1] = 1
        assert values_equal(spec.values, want)


class TestPartialSums:
    def test_triangular_partial_sum_truncates_spectrum(self):
        f = random_exact(3, 15)
        spec = fourier_coefficients(f)
        g = triangular_partial_sum(4, f)
        gspec = fourier_coefficients(g)
        for i in range(8):
            for j in range(8):
                want = spec.coefficient(i, j) if i + j <= 3 else Fraction(0)
                assert gspec.coefficient(i, j) == want

    def test_rectangular_and_square_sums(self):
        f = random_exact(3, 16)
        spec = fourier_coefficients(f)
        g = rectangular_partial_sum(2, 5, f)
        gspec = fourier_coefficients(g)
        h = square_partial_sum(3, f)
        hspec = fourier_coefficients(h)
        for i in range(8):
            for j in range(8):
                assert gspec.coefficient(i, j) == (
                    spec.coefficient(i, j) if i < 2 and j < 5 else Fraction(0))
                assert hspec.coefficient(i, j) == (
                    spec.coefficient(i, j) if i < 3 and j < 3 else Fraction(0))

    def test_full_sum_is_identity(self):
        f = random_exact(2, 17)
        g = square_partial_sum(4, f)
        assert values_equal(g.values, f.values)


class TestMultipliers:
    def test_triangular_multiplier_values(self):
        m = triangular_fejer_multiplier(3, 2)
        # weight (n-1-i-j)/n clipped at zero
        assert m[0, 0] == Fraction(2, 3)
        assert m[1, 0] == m[0, 1] == Fraction(1, 3)
        assert m[1, 1] == Fraction(0)
        assert m[2, 0] == Fraction(0)

    def test_marcinkiewicz_multiplier_values(self):
        m = marcinkiewicz_fejer_multiplier(2, 2)
        assert m[0, 0] == Fraction(1, 2)
        assert m[1, 0] == m[0, 1] == m[1, 1] == Fraction(0)

    def test_mean_of_constant(self):
        # sigma_n(c) = c (n-1)/n: the zero-frequency weight
        M = 3
        c = StepFunction2D(np.full((8, 8), Fraction(5), dtype=object), M)
        for n in (1, 2, 3, 8):
            g = triangular_fejer_mean(n, c)
            assert all(v == Fraction(5) * Fraction(n - 1, n) for v in g.values.flat)

    def test_mean_kills_far_characters(self):
        # w_1(x)w_1(y) has weight max(0, n-3)/n: zero for n = 3
        M = 2
        vals = np.empty((4, 4), dtype=object)
        for cx in range(4):
            for cy in range(4):
                vals[cx, cy] = Fraction(
                    walsh(1, point(cx, M)) * walsh(1, point(cy, M)))
        f = StepFunction2D(vals, M)
        g3 = triangular_fejer_mean(3, f)
        assert all(v == 0 for v in g3.values.flat)
        g4 = triangular_fejer_mean(4, f)
        assert all(v == f.values[i, j] * Fraction(1, 4)
                   for (i, j), v in np.ndenumerate(g4.values))

    def test_apply_multiplier_is_componentwise(self):
        f = random_exact(2, 18)
        spec = fourier_coefficients(f)
        mult = triangular_fejer_multiplier(5, 2)
        g = apply_multiplier(spec, mult)
        for i in range(4):
            for j in range(4):
                assert g.coefficient(i, j) == mult[i, j] * spec.coefficient(i, j)


class TestConvolution:
    def test_spectral_convolution_matches_naive(self):
        M = 2
        f = random_exact(M, 19)
        g = random_exact(M, 20)
        via_spec = convolve(f, g)
        direct = naive_convolution(f, g)
        assert values_equal(via_spec.values, direct.values)

    def test_convolution_with_point_mass_scales(self):
        # convolving with the constant 1 gives the mean of f everywhere
        M = 2
        f = random_exact(M, 21)
        one = StepFunction2D(np.full((4, 4), Fraction(1), dtype=object), M)
        h = convolve(f, one)
        mean = sum(f.values.flat, Fraction(0)) / 16
        assert all(v == mean for v in h.values.flat)


class TestRouteEquivalence:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 8, 13, 16])
    def test_triangular_routes_exact(self, n):
        f = random_exact(4, 100 + n)
        a = triangular_fejer_mean(n, f, route="multiplier")
        b = triangular_fejer_mean(n, f, route="convolution")
        assert values_equal(a.values, b.values)

    @pytest.mark.parametrize("n", [1, 2, 5, 8, 11])
    def test_marcinkiewicz_routes_exact(self, n):
        f = random_exact(4, 200 + n)
        a = marcinkiewicz_fejer_mean(n, f, route="multiplier")
        b = marcinkiewicz_fejer_mean(n, f, route="convolution")
        assert values_equal(a.values, b.values)

    def test_routes_float(self):
        rng = np.random.default_rng(22)
        f = StepFunction2D(rng.normal(size=(32, 32)), 5)
        for n in (3, 17, 32):
            a = triangular_fejer_mean(n, f, route="multiplier")
            b = triangular_fejer_mean(n, f, route="convolution")
            assert rel_error(a.values, b.values) < 1e-10

    def test_bad_route_name(self):
        f = random_exact(2, 23)
        with pytest.raises(ValueError):
            triangular_fejer_mean(2, f, route="nope")

    def test_n_validation(self):
        f = random_exact(2, 24)
        with pytest.raises(ValueError):
            triangular_fejer_mean(0, f)
        with pytest.raises(ValueError):
            triangular_fejer_mean(5, f)   # n > 2^M unrepresentable
