"""Finite-resolution model of the dyadic group and the Walsh-Paley system.

Points of the group are 0/1 coordinate sequences added coordinatewise mod 2.
At resolution M only the first M coordinates are kept, so the group collapses
to a grid of 2**M cells of Haar measure 2**-M each.  Coordinate x_0 is stored
as the MOST significant bit of the cell index: the set of points sharing
their first n coordinates with x is then a contiguous block of cell indices,
so dyadic intervals are slices.

Walsh functions are indexed the Paley way: w_n = prod_k r_k^{n_k} where
n = sum_k n_k 2^k and r_k(x) = (-1)^{x_k} is the k-th Rademacher function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MAX_LEVELS = 30


def reverse_bits(n: int, width: int) -> int:
    """Reverse the low `width` bits of n; n must fit in `width` bits."""
    if n >> width:
        raise ValueError(f"{n} does not fit in {width} bits")
    out = 0
    for _ in range(width):
        out = (out << 1) | (n & 1)
        n >>= 1
    return out


@dataclass(frozen=True)
class Resolution:
    """A dyadic grid of 2**levels cells.

    Level 0 is the trivial one-cell grid (every function on it is constant);
    it is what repeated tail shifts bottom out at.
    """

    levels: int

    def __post_init__(self) -> None:
        if not 0 <= self.levels <= MAX_LEVELS:
            raise ValueError(f"levels must be in [0, {MAX_LEVELS}], got {self.levels}")

    @property
    def cells(self) -> int:
        return 1 << self.levels

    @property
    def cell_measure(self) -> Fraction:
        return Fraction(1, self.cells)


@dataclass(frozen=True)
class DyadicPoint:
    """A group element, identified with its cell on a resolution-M grid."""

    bits: int
    res: Resolution

    def __post_init__(self) -> None:
        if not 0 <= self.bits < self.res.cells:
            raise ValueError(f"cell index {self.bits} out of range at resolution {self.res.levels}")

    def coordinate(self, k: int) -> int:
        """Coordinate x_k in {0,1}; x_0 is the most significant index bit."""
        m = self.res.levels
        if not 0 <= k < m:
            raise ValueError(f"coordinate {k} out of range at resolution {m}")
        return (self.bits >> (m - 1 - k)) & 1


def point(bits: int, levels: int) -> DyadicPoint:
    """Shorthand constructor."""
    return DyadicPoint(bits, Resolution(levels))


def xor_add(x: DyadicPoint, y: DyadicPoint) -> DyadicPoint:
    """Group operation: coordinatewise addition mod 2. Self-inverse."""
    if x.res != y.res:
        raise ValueError("resolution mismatch")
    return DyadicPoint(x.bits ^ y.bits, x.res)


def rademacher(k: int, x: DyadicPoint) -> int:
    """r_k(x) = (-1)^{x_k}; requires k < resolution."""
    return -1 if x.coordinate(k) else 1


def walsh(n: int, x: DyadicPoint) -> int:
    """w_n(x) = (-1)^{sum_k n_k x_k}; requires 0 <= n < 2**M.

    The exponent is popcount(rev_M(n) & bits): index bit k of n pairs with
    coordinate x_k, which sits at position M-1-k of the cell index.
    """
    m = x.res.levels
    if not 0 <= n < x.res.cells:
        raise ValueError(f"walsh index {n} out of range at resolution {m}")
    return -1 if (reverse_bits(n, m) & x.bits).bit_count() & 1 else 1


def tail_shift(shift_levels: int, x: DyadicPoint) -> DyadicPoint:
    """Drop the first `shift_levels` coordinates (multiply by 2**N in group notation).

    The result lives at resolution M - shift_levels; shifting all the way
    down yields the unique point of the trivial grid.
    """
    m = x.res.levels
    if not 0 <= shift_levels <= m:
        raise ValueError(f"cannot shift {shift_levels} levels at resolution {m}")
    keep = m - shift_levels
    return DyadicPoint(x.bits & ((1 << keep) - 1), Resolution(keep))


def in_interval(n: int, center: DyadicPoint, x: DyadicPoint) -> bool:
    """Whether x lies in I_n(center), the cylinder fixing the first n coordinates."""
    if center.res != x.res:
        raise ValueError("resolution mismatch")
    m = x.res.levels
    if not 0 <= n <= m:
        raise ValueError(f"interval level {n} out of range at resolution {m}")
    return (center.bits >> (m - n)) == (x.bits >> (m - n))


# --- Walsh index bit utilities -------------------------------------------

def top_bit(n: int) -> int:
    """Position of the highest set bit: 2**top_bit(n) <= n < 2**(top_bit(n)+1)."""
    if n <= 0:
        raise ValueError("top_bit needs n >= 1")
    return n.bit_length() - 1


def tail_index(n: int, s: int) -> int:
    """n with its low s bits cleared: sum_{k>=s} n_k 2^k.  tail_index(n, 0) == n."""
    if n < 0 or s < 0:
        raise ValueError("tail_index needs n >= 0, s >= 0")
    return (n >> s) << s


def index_bit(n: int, i: int) -> int:
    """Binary digit n_i of the Walsh index n."""
    if n < 0 or i < 0:
        raise ValueError("index_bit needs n >= 0, i >= 0")
    return (n >> i) & 1
