"""Bit-level layer: points, characters, index utilities.

Oracle for the character tests is the defining sum (-1)^{sum n_k x_k}
computed coordinate by coordinate, independent of the bit tricks in the
implementation.
"""

import pytest
from fractions import Fraction

from walshfejer.dyadic import (
    MAX_LEVELS,
    DyadicPoint,
    Resolution,
    in_interval,
    index_bit,
    point,
    rademacher,
    reverse_bits,
    tail_index,
    tail_shift,
    top_bit,
    walsh,
    xor_add,
)


def walsh_oracle(n: int, bits: int, levels: int) -> int:
    """Direct evaluation of (-1)^{sum_k n_k x_k} from the definitions."""
    acc = 0
    for k in range(levels):
        n_k = (n >> k) & 1
        x_k = (bits >> (levels - 1 - k)) & 1
        acc += n_k * x_k
    return -1 if acc % 2 else 1


class TestReverseBits:
    def test_small_values(self):
        assert reverse_bits(0b110, 3) == 0b011
        assert reverse_bits(0b1, 4) == 0b1000
        assert reverse_bits(0, 5) == 0

    def test_involution(self):
        for n in range(64):
            assert reverse_bits(reverse_bits(n, 6), 6) == n

    def test_rejects_overflow(self):
        with pytest.raises(ValueError):
            reverse_bits(8, 3)


class TestResolution:
    def test_cells_and_measure(self):
        r = Resolution(4)
        assert r.cells == 16
        assert r.cell_measure == Fraction(1, 16)

    def test_trivial_grid_allowed(self):
        assert Resolution(0).cells == 1

    def test_bounds(self):
        with pytest.raises(ValueError):
            Resolution(-1)
        with pytest.raises(ValueError):
            Resolution(MAX_LEVELS + 1)


class TestPoint:
    def test_coordinate_msb_first(self):
        x = point(0b1101, 4)
        assert [x.coordinate(k) for k in range(4)] == [1, 1, 0, 1]

    def test_out_of_range_cell(self):
        with pytest.raises(ValueError):
            point(4, 2)

    def test_xor_add_group_laws(self):
        zero = point(0, 3)
        for a in range(8):
            x = point(a, 3)
            assert xor_add(x, x) == zero
            assert xor_add(x, zero) == x
            for b in range(8):
                y = point(b, 3)
                assert xor_add(x, y) == xor_add(y, x)

    def test_xor_add_resolution_mismatch(self):
        with pytest.raises(ValueError):
            xor_add(point(0, 2), point(0, 3))


class TestCharacters:
    def test_rademacher_is_coordinate_sign(self):
        x = point(0b10, 2)
        assert rademacher(0, x) == -1
        assert rademacher(1, x) == 1

    def test_walsh_trivial_cases(self):
        # empty product, the single-Rademacher cases
        assert walsh(0, point(0b10, 2)) == 1
        assert walsh(1, point(0b10, 2)) == -1
        assert walsh(3, point(0b01, 2)) == -1

    def test_walsh_matches_definition_sum(self):
        M = 5
        for n in range(1 << M):
            for c in range(1 << M):
                assert walsh(n, point(c, M)) == walsh_oracle(n, c, M)

    def test_walsh_is_a_character(self):
        # w_n(x + y) = w_n(x) w_n(y)
        M = 4
        for n in range(16):
            for a in range(16):
                for b in range(16):
                    x, y = point(a, M), point(b, M)
                    assert walsh(n, xor_add(x, y)) == walsh(n, x) * walsh(n, y)

    def test_walsh_orthogonality(self):
        # sum over the grid of w_m w_n is 2^M [m == n]
        M = 4
        for m in range(16):
            for n in range(16):
                s = sum(walsh(m, point(c, M)) * walsh(n, point(c, M))
                        for c in range(16))
                assert s == (16 if m == n else 0)

    def test_walsh_index_range(self):
        with pytest.raises(ValueError):
            walsh(4, point(0, 2))


class TestTailShift:
    def test_drops_leading_coordinates(self):
        assert tail_shift(2, point(0b1101, 4)) == point(0b01, 2)

    def test_identity_and_collapse(self):
        x = point(0b101, 3)
        assert tail_shift(0, x) == x
        assert tail_shift(3, x) == point(0, 0)

    def test_character_factorization(self):
        # w_{l 2^N}(x) depends only on the tail of x
        M, N = 5, 2
        for l in range(1 << (M - N)):
            for c in range(1 << M):
                x = point(c, M)
                assert walsh(l << N, x) == walsh(l, tail_shift(N, x))

    def test_range_check(self):
        with pytest.raises(ValueError):
            tail_shift(4, point(0, 3))


class TestInterval:
    def test_examples(self):
        center = point(0, 4)
        assert in_interval(0, center, point(0b1111, 4))
        assert in_interval(2, center, point(0b0011, 4))
        assert not in_interval(2, center, point(0b0100, 4))

    def test_cylinder_is_prefix_block(self):
        M, n = 4, 2
        center = point(0b0110, M)
        members = [c for c in range(16) if in_interval(n, center, point(c, M))]
        assert members == [0b0100, 0b0101, 0b0110, 0b0111]

    def test_level_bounds(self):
        with pytest.raises(ValueError):
            in_interval(5, point(0, 4), point(0, 4))


class TestIndexUtilities:
    def test_top_bit(self):
        assert top_bit(1) == 0
        assert top_bit(13) == 3
        with pytest.raises(ValueError):
            top_bit(0)

    def test_tail_index_clears_low_bits(self):
        # n^{(s)} = n - (n mod 2^s)
        for n in range(64):
            for s in range(8):
                assert tail_index(n, s) == n - (n % (1 << s))
        assert tail_index(13, 0) == 13

    def test_index_bit(self):
        assert [index_bit(13, i) for i in range(5)] == [1, 0, 1, 1, 0]

    def test_split_at_top_bit(self):
        for n in range(1, 100):
            t = top_bit(n)
            assert n == (1 << t) + (n - (1 << t))
            assert index_bit(n, t) == 1
