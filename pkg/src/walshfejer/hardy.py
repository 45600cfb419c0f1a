"""Atoms, the dyadic maximal function, and quasi-locality integrals.

An atom for exponent p lives on one dyadic square I_N(u) x I_N(v), has exact
zero mean there, and is sup-bounded by the measure of the square to the power
-1/p.  The maximal function takes, per cell, the largest absolute average of
f over the dyadic squares of level 1 through M containing that cell; the
level-M average is f itself, and coarser-than-level-1 squares (the whole
group) are excluded.  All of it runs on exact Rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import DyadicPoint, point
from .operators import (
    SpectrumGrid2D,
    fourier_coefficients,
    spectrum_to_function,
    triangular_fejer_multiplier,
)
from .stepfn import Region, StepFunction2D, as_float, integrate_abs_p, lp_quasinorm

_PROFILES = ("haar_split", "seeded_random")

REGION_KINDS = ("comp_both", "comp_x_only", "comp_y_only", "complement_of_cube")


@dataclass(frozen=True)
class Atom:
    """A p-atom: supported on one level-N square, zero mean, sup-norm budget."""

    p: float
    level: int
    u: DyadicPoint
    v: DyadicPoint
    payload: StepFunction2D
    budget: Fraction
    profile: str
    seed: int | None = None

    @property
    def levels(self) -> int:
        return self.payload.levels

    def corner_cells(self) -> tuple[int, int]:
        """Cell coordinates (at payload resolution) of the support corner."""
        shift = self.levels - self.level
        return self.u.bits << shift, self.v.bits << shift

    def centered(self) -> StepFunction2D:
        """Payload translated so the support corner sits at the origin."""
        cx, cy = self.corner_cells()
        if cx == 0 and cy == 0:
            return self.payload
        return self.payload.translate(cx, cy)


def _support_block(levels: int, level: int, u: int, v: int) -> tuple[slice, slice]:
    side = 1 << (levels - level)
    return slice(u * side, (u + 1) * side), slice(v * side, (v + 1) * side)


def make_atom(p: float, level: int, u: int, v: int, levels: int,
              profile: str = "haar_split", seed: int = 0) -> Atom:
    """Build an atom on I_level(u) x I_level(v) at the given grid resolution.

    haar_split: +budget on the x-first half of the square, -budget on the
    other (split at level+1, so it needs levels >= level+1).  seeded_random:
    deterministic integer noise, exactly mean-subtracted, rescaled to hit the
    sup-norm budget.  The budget 2**(2*level/p) is carried as the exact
    Fraction value of its float.
    """
    if not 0 < p <= 1:
        raise ValueError("atom exponent must lie in (0, 1]")
    if not 0 <= level <= levels:
        raise ValueError("need 0 <= level <= levels")
    if not (0 <= u < 1 << level and 0 <= v < 1 << level):
        raise ValueError("support corner outside the level grid")
    if profile not in _PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    budget = Fraction(2.0 ** (2 * level / p))
    side = 1 << levels
    grid = np.full((side, side), Fraction(0), dtype=object)
    sx, sy = _support_block(levels, level, u, v)

    if profile == "haar_split":
        if levels < level + 1:
            raise ValueError("haar_split needs one sub-level inside the square")
        half = (sx.stop - sx.start) // 2
        grid[sx.start:sx.start + half, sy] = budget
        grid[sx.start + half:sx.stop, sy] = -budget
    else:
        block = 1 << (levels - level)
        if block == 1:
            # one cell: zero mean forces the zero atom
            return Atom(p, level, point(u, level), point(v, level),
                        StepFunction2D(grid, levels), budget, profile, seed)
        draw_seed = seed
        while True:
            rng = np.random.default_rng(draw_seed)
            raw = rng.integers(-8, 9, size=(block, block))
            mean = Fraction(int(raw.sum()), block * block)
            centered = raw.astype(object) - mean
            top = max(abs(val) for val in centered.flat)
            if top != 0:
                break
            draw_seed = draw_seed * 2 + 1  # degenerate draw; deterministic retry
        grid[sx, sy] = centered * (budget / top)

    return Atom(p, level, point(u, level), point(v, level),
                StepFunction2D(grid, levels), budget, profile, seed)


# --- Maximal function -----------------------------------------------------

def maximal_function(f: StepFunction2D) -> StepFunction2D:
    """Largest |dyadic square average| through each cell, levels 1..M.

    Built by successive 4-to-1 coarsenings; the level-M squares are the cells
    themselves, so the envelope starts from |f|.  Level 0 (the full square)
    is outside the sup and never enters.
    """
    side = 1 << f.levels
    exact = f.exact
    vals = f.values
    if exact:
        if vals.dtype != object:
            vals = vals.astype(object)
    else:
        vals = as_float(vals)
    env = np.abs(vals)
    sums = vals
    for t in range(1, f.levels):  # block side 2**t; dyadic level M - t >= 1
        h = side >> t
        sums = sums.reshape(h, 2, h, 2).sum(axis=(1, 3))
        if exact:
            avg = sums * Fraction(1, 1 << (2 * t))
        else:
            avg = sums / float(1 << (2 * t))
        grown = np.repeat(np.repeat(avg, 1 << t, axis=0), 1 << t, axis=1)
        env = np.maximum(env, np.abs(grown))
    return StepFunction2D(env, f.levels)


def hp_quasinorm(f: StepFunction2D, p: float):
    """Quasinorm of the maximal function; the Hardy-space size of f."""
    if p <= 0:
        raise ValueError("exponent must be positive")
    return lp_quasinorm(maximal_function(f), p)


# --- Quasi-locality -------------------------------------------------------

def triangular_mean_of_atom(atom: Atom, n: int) -> StepFunction2D:
    """Triangular summability mean of the centered atom, exact.

    For n <= 2**level the multiplier support misses every frequency the atom
    carries, so the spectrum is already zero and no synthesis is needed.
    """
    if n < 1:
        raise ValueError("mean order must be >= 1")
    levels = atom.levels
    if n > 1 << levels:
        raise ValueError("mean order exceeds the grid")
    spec = fourier_coefficients(atom.centered())
    mult = triangular_fejer_multiplier(n, levels)
    prod = spec.values * mult
    if not np.any(prod != Fraction(0)):
        return StepFunction2D(np.full(prod.shape, Fraction(0), dtype=object), levels)
    return spectrum_to_function(SpectrumGrid2D(prod, levels))


def quasilocality_integral(atom: Atom, n: int, p: float, region_kind: str):
    """Integral of |triangular mean of the atom|**p off its support square.

    The atom is centered first (dyadic translation preserves measure and
    commutes with the mean), and the region is anchored at the origin cube.
    complement_of_cube sums the three disjoint partial complements.
    """
    if region_kind not in REGION_KINDS:
        raise ValueError(f"unknown region {region_kind!r}")
    if p <= 0:
        raise ValueError("exponent must be positive")
    g = triangular_mean_of_atom(atom, n)
    lvl = atom.level
    if region_kind == "comp_both":
        return integrate_abs_p(g, Region.comp_both(lvl), p)
    if region_kind == "comp_x_only":
        return integrate_abs_p(g, Region.comp_x_only(lvl), p)
    if region_kind == "comp_y_only":
        return integrate_abs_p(g, Region.comp_y_only(lvl), p)
    total = integrate_abs_p(g, Region.comp_both(lvl), p)
    total = total + integrate_abs_p(g, Region.comp_x_only(lvl), p)
    total = total + integrate_abs_p(g, Region.comp_y_only(lvl), p)
    return total
