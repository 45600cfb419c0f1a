"""Step functions on the dyadic grid, with exact measure and integration.

A resolution-M step function is just an array of cell values: length 2**M in
one dimension, shape (2**M, 2**M) in two (row index = x cell, column = y
cell, both with coordinate 0 as the most significant index bit).  Values may
be any exact scalar type (int, Fraction) stored in an object or integer
array, or float64 for approximate work; exactness follows the dtype.

Regions are products of per-axis dyadic sets (an interval, its complement,
a ring I_i minus I_{i+1}, or everything), which covers every region the
kernel estimates need: cubes, off-cube quadrants, and ring products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np


def _is_exact(values: np.ndarray) -> bool:
    return values.dtype == object or np.issubdtype(values.dtype, np.integer)


@dataclass(eq=False)
class StepFunction1D:
    """Values on the 2**levels cells of a one-dimensional dyadic grid."""

    values: np.ndarray
    levels: int

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values)
        if self.values.shape != (1 << self.levels,):
            raise ValueError(f"expected {1 << self.levels} cells, got shape {self.values.shape}")

    @property
    def cells(self) -> int:
        return 1 << self.levels

    @property
    def exact(self) -> bool:
        return _is_exact(self.values)

    def translate(self, shift: int) -> "StepFunction1D":
        """f(. + a): cell c takes the value of cell c XOR shift."""
        idx = np.arange(self.cells) ^ shift
        return StepFunction1D(self.values[idx], self.levels)


@dataclass(eq=False)
class StepFunction2D:
    """Values on the 2**levels x 2**levels cells of the product grid."""

    values: np.ndarray
    levels: int

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values)
        side = 1 << self.levels
        if self.values.shape != (side, side):
            raise ValueError(f"expected shape {(side, side)}, got {self.values.shape}")

    @property
    def side(self) -> int:
        return 1 << self.levels

    @property
    def exact(self) -> bool:
        return _is_exact(self.values)

    def translate(self, shift_x: int, shift_y: int) -> "StepFunction2D":
        ix = np.arange(self.side) ^ shift_x
        iy = np.arange(self.side) ^ shift_y
        return StepFunction2D(self.values[np.ix_(ix, iy)], self.levels)


@dataclass(eq=False)
class SupEnvelope:
    """Cellwise supremum of |f| over a family, at a fixed resolution."""

    values: np.ndarray
    levels: int


@dataclass(frozen=True)
class Region:
    """Product of two per-axis dyadic sets.

    Axis kinds: "all" (whole line), "in" (the interval I_level(center)),
    "out" (its complement), "ring" (I_level minus I_{level+1}, centered at 0).
    One-dimensional functions use only the x axis; the y axis must be "all".
    """

    x_kind: str = "all"
    x_level: int = 0
    x_center: int = 0
    y_kind: str = "all"
    y_level: int = 0
    y_center: int = 0

    # -- 2D constructors ---------------------------------------------------
    @classmethod
    def full(cls) -> "Region":
        return cls()

    @classmethod
    def cube(cls, level: int, center_x: int = 0, center_y: int = 0) -> "Region":
        """I_level(center_x) x I_level(center_y)."""
        return cls("in", level, center_x, "in", level, center_y)

    @classmethod
    def comp_both(cls, level: int) -> "Region":
        """Complement x complement, centered at 0."""
        return cls("out", level, 0, "out", level, 0)

    @classmethod
    def comp_x_only(cls, level: int) -> "Region":
        """x outside I_level, y inside."""
        return cls("out", level, 0, "in", level, 0)

    @classmethod
    def comp_y_only(cls, level: int) -> "Region":
        """x inside I_level, y outside."""
        return cls("in", level, 0, "out", level, 0)

    @classmethod
    def ring(cls, i: int, j: int) -> "Region":
        """J_i x J_j with J_i = I_i minus I_{i+1}."""
        return cls("ring", i, 0, "ring", j, 0)

    # -- 1D constructors ---------------------------------------------------
    @classmethod
    def interval(cls, level: int, center: int = 0) -> "Region":
        return cls("in", level, center)

    @classmethod
    def complement(cls, level: int) -> "Region":
        return cls("out", level, 0)

    @classmethod
    def ring1d(cls, i: int) -> "Region":
        return cls("ring", i, 0)


def _axis_mask(levels: int, kind: str, level: int, center: int) -> np.ndarray:
    cells = 1 << levels
    mask = np.zeros(cells, dtype=bool)
    if kind == "all":
        mask[:] = True
        return mask
    if kind in ("in", "out"):
        if not 0 <= level <= levels:
            raise ValueError(f"interval level {level} out of range at resolution {levels}")
        if not 0 <= center < cells:
            raise ValueError(f"center cell {center} out of range")
        start = (center >> (levels - level)) << (levels - level)
        mask[start:start + (cells >> level)] = True
        if kind == "out":
            mask = ~mask
        return mask
    if kind == "ring":
        if not 0 <= level < levels:
            raise ValueError(f"ring level {level} out of range at resolution {levels}")
        mask[cells >> (level + 1):cells >> level] = True
        return mask
    raise ValueError(f"unknown axis kind {kind!r}")


def region_masks(region: Region, levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Boolean per-axis masks of a region at the given resolution."""
    mx = _axis_mask(levels, region.x_kind, region.x_level, region.x_center)
    my = _axis_mask(levels, region.y_kind, region.y_level, region.y_center)
    return mx, my


def _selected_values(f: StepFunction1D | StepFunction2D, region: Region) -> tuple[np.ndarray, int]:
    """Values inside the region, plus the total cell count of the grid."""
    if isinstance(f, StepFunction1D):
        if region.y_kind != "all":
            raise ValueError("1D function with a 2D region")
        mx = _axis_mask(f.levels, region.x_kind, region.x_level, region.x_center)
        return f.values[mx], f.cells
    mx, my = region_masks(region, f.levels)
    return f.values[np.ix_(mx, my)].ravel(), f.side * f.side


def integrate_abs_p(f: StepFunction1D | StepFunction2D, region: Region, p: float):
    """integral over the region of |f|^p dmu.

    Exact Fraction when p == 1 and the values are exact; float otherwise.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    sel, total = _selected_values(f, region)
    if p == 1 and _is_exact(sel):
        acc = sum((abs(v) for v in sel.tolist()), Fraction(0))
        return acc / total
    flat = np.abs(as_float(sel))
    return float(np.sum(flat ** p) / total)


def lp_quasinorm(f: StepFunction1D | StepFunction2D, p: float) -> float:
    """(integral of |f|^p)^(1/p) over the whole grid; exact summation at p = 1."""
    val = integrate_abs_p(f, Region.full(), p)
    if isinstance(val, Fraction):
        return float(val)
    return float(val ** (1.0 / p))


def weak_lp_quasinorm(f: StepFunction1D | StepFunction2D, p: float) -> float:
    """sup over thresholds a of a * mu(|f| >= a)^(1/p).

    Evaluated at the achieved values of |f|, which for a step function equals
    the supremum of the strict-inequality form over all positive thresholds.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    sel, total = _selected_values(f, Region.full())
    mags = sorted(abs(v) for v in sel.tolist())
    best = 0.0
    count = len(mags)
    prev = None
    for i, a in enumerate(mags):
        if a == 0 or a == prev:
            continue
        prev = a
        # cells with |f| >= a are the suffix starting at i
        mu = (count - i) / total
        best = max(best, float(a) * mu ** (1.0 / p))
    return best


def sup_envelope(family: Iterable[StepFunction1D]) -> SupEnvelope:
    """Streaming cellwise max of |f| over a family of same-resolution functions."""
    env = None
    levels = None
    for f in family:
        cur = np.abs(f.values)
        if env is None:
            env, levels = cur, f.levels
        else:
            if f.levels != levels:
                raise ValueError("mixed resolutions in envelope family")
            env = np.maximum(env, cur)
    if env is None:
        raise ValueError("empty family")
    return SupEnvelope(env, levels)


def values_equal(a: np.ndarray, b: np.ndarray) -> bool:
    """Exact cellwise equality across dtypes (int vs Fraction vs float all compare by ==)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(np.all(a == b))


def as_float(values: np.ndarray) -> np.ndarray:
    """Copy of the values as float64 (Fractions go through float())."""
    arr = np.asarray(values)
    if arr.dtype == object:
        return np.array([float(v) for v in arr.ravel()], dtype=np.float64).reshape(arr.shape)
    return arr.astype(np.float64)


def max_abs(values: np.ndarray) -> float:
    arr = np.asarray(values)
    if arr.size == 0:
        return 0.0
    if arr.dtype == object:
        return float(max(abs(v) for v in arr.ravel().tolist()))
    return float(np.max(np.abs(arr)))


def rel_error(got: np.ndarray, want: np.ndarray) -> float:
    """Max-norm relative error, guarded for a zero reference."""
    g = as_float(got)
    w = as_float(want)
    scale = max(1e-300, float(np.max(np.abs(w))))
    return float(np.max(np.abs(g - w))) / scale
