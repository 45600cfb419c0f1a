"""Walsh transform, partial sums, and summability means on the dyadic grid.

The transform is its own inverse up to the factor 2**levels per axis, so
analysis and synthesis share one butterfly pass plus a bit-reversal
reordering.  Exact inputs (Fraction or integer grids) stay exact through
every operator; float grids run in float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dyadic import reverse_bits
from .kernels import marcinkiewicz_kernel, triangular_fejer_kernel
from .stepfn import StepFunction1D, StepFunction2D, _is_exact, as_float

_INT64_SAFE = 1 << 62


@lru_cache(maxsize=None)
def _bitrev_perm(levels: int) -> np.ndarray:
    perm = np.array([reverse_bits(i, levels) for i in range(1 << levels)], dtype=np.intp)
    perm.flags.writeable = False
    return perm


def _fwht_last_axis(values: np.ndarray) -> np.ndarray:
    """Unnormalized Hadamard butterflies along the last axis, any dtype."""
    x = values
    length = x.shape[-1]
    h = 1
    while h < length:
        y = x.reshape(x.shape[:-1] + (length // (2 * h), 2, h))
        a = y[..., 0, :]
        b = y[..., 1, :]
        x = np.concatenate(
            [(a + b)[..., None, :], (a - b)[..., None, :]], axis=-2
        ).reshape(values.shape)
        h *= 2
    return x if x is not values else values.copy()


def _paley_last_axis(values: np.ndarray) -> np.ndarray:
    """Butterflies then bit-reversal: row n of the result pairs with w_n."""
    length = values.shape[-1]
    levels = length.bit_length() - 1
    return _fwht_last_axis(values)[..., _bitrev_perm(levels)]


def _lift_if_needed(values: np.ndarray) -> np.ndarray:
    # int64 butterflies can wrap; lift to Python ints when the bound is tight
    if values.dtype == object:
        return values
    if np.issubdtype(values.dtype, np.integer):
        top = int(np.max(np.abs(values), initial=0))
        if top and top * values.size >= _INT64_SAFE:
            return values.astype(object)
        return values.astype(np.int64)
    return values


def _transform_array(values: np.ndarray, exact: bool) -> np.ndarray:
    work = _lift_if_needed(values) if exact else as_float(values)
    out = _paley_last_axis(work)
    if out.ndim == 2:
        out = np.ascontiguousarray(_paley_last_axis(out.swapaxes(0, 1)).swapaxes(0, 1))
    return out


# --- Spectra --------------------------------------------------------------

@dataclass(eq=False)
class Spectrum1D:
    """Walsh coefficients of a one-dimensional step function."""

    values: np.ndarray
    levels: int

    def __post_init__(self) -> None:
        if self.values.shape != (1 << self.levels,):
            raise ValueError("spectrum shape does not match resolution")

    @property
    def exact(self) -> bool:
        return _is_exact(self.values)

    def coefficient(self, n: int):
        return self.values[n]


@dataclass(eq=False)
class SpectrumGrid2D:
    """Walsh coefficients of a grid function; entry [i, j] pairs with w_i (x) w_j."""

    values: np.ndarray
    levels: int

    def __post_init__(self) -> None:
        side = 1 << self.levels
        if self.values.shape != (side, side):
            raise ValueError("spectrum shape does not match resolution")

    @property
    def exact(self) -> bool:
        return _is_exact(self.values)

    def coefficient(self, i: int, j: int):
        return self.values[i, j]


def fourier_coefficients(f: StepFunction1D | StepFunction2D) -> Spectrum1D | SpectrumGrid2D:
    """Inner products with the Walsh rows, normalized by the cell measure."""
    raw = _transform_array(f.values, f.exact)
    scale_den = f.values.size
    if f.exact:
        if raw.dtype != object:
            raw = raw.astype(object)
        vals = raw * Fraction(1, scale_den)
    else:
        vals = raw / scale_den
    if isinstance(f, StepFunction1D):
        return Spectrum1D(vals, f.levels)
    return SpectrumGrid2D(vals, f.levels)


def spectrum_to_function(spec: Spectrum1D | SpectrumGrid2D) -> StepFunction1D | StepFunction2D:
    """Evaluate the Walsh series with the given coefficients on every cell."""
    vals = _transform_array(spec.values, spec.exact)
    if isinstance(spec, Spectrum1D):
        return StepFunction1D(vals, spec.levels)
    return StepFunction2D(vals, spec.levels)


# --- Multiplier grids -----------------------------------------------------

def _fraction_grid(numerators: np.ndarray, den: int) -> np.ndarray:
    to_frac = np.frompyfunc(lambda v: Fraction(int(v), den), 1, 1)
    return to_frac(numerators)


def triangular_fejer_multiplier(n: int, levels: int) -> np.ndarray:
    """Grid of Fractions max(0, n-1-i-j)/n; support is the strict triangle i+j <= n-2."""
    if n < 1:
        raise ValueError("multiplier order must be >= 1")
    side = 1 << levels
    degree = np.add.outer(np.arange(side), np.arange(side))
    return _fraction_grid(np.maximum(0, (n - 1) - degree), n)


def marcinkiewicz_fejer_multiplier(n: int, levels: int) -> np.ndarray:
    """Grid of Fractions max(0, n-1-max(i,j))/n."""
    if n < 1:
        raise ValueError("multiplier order must be >= 1")
    side = 1 << levels
    degree = np.maximum.outer(np.arange(side), np.arange(side))
    return _fraction_grid(np.maximum(0, (n - 1) - degree), n)


def apply_multiplier(spec: SpectrumGrid2D, multiplier: np.ndarray) -> SpectrumGrid2D:
    if multiplier.shape != spec.values.shape:
        raise ValueError("multiplier grid shape mismatch")
    if spec.exact and _is_exact(multiplier):
        return SpectrumGrid2D(spec.values * multiplier, spec.levels)
    return SpectrumGrid2D(as_float(spec.values) * as_float(multiplier), spec.levels)


# --- Partial sums ---------------------------------------------------------

def triangular_partial_sum(k: int, f: StepFunction2D) -> StepFunction2D:
    """Series truncation to the frequencies i + j <= k - 1."""
    if k < 0:
        raise ValueError("truncation order must be >= 0")
    spec = fourier_coefficients(f)
    side = 1 << f.levels
    keep = np.add.outer(np.arange(side), np.arange(side)) <= k - 1
    zero = Fraction(0) if spec.exact else 0.0
    vals = np.where(keep, spec.values, zero)
    return spectrum_to_function(SpectrumGrid2D(vals, f.levels))


def rectangular_partial_sum(k1: int, k2: int, f: StepFunction2D) -> StepFunction2D:
    """Series truncation to the frequencies i < k1, j < k2."""
    if k1 < 0 or k2 < 0:
        raise ValueError("truncation orders must be >= 0")
    spec = fourier_coefficients(f)
    side = 1 << f.levels
    keep = (np.arange(side)[:, None] < k1) & (np.arange(side)[None, :] < k2)
    zero = Fraction(0) if spec.exact else 0.0
    vals = np.where(keep, spec.values, zero)
    return spectrum_to_function(SpectrumGrid2D(vals, f.levels))


def square_partial_sum(k: int, f: StepFunction2D) -> StepFunction2D:
    return rectangular_partial_sum(k, k, f)


# --- Convolution ----------------------------------------------------------

def convolve(f: StepFunction2D, g: StepFunction2D) -> StepFunction2D:
    """Group convolution (f * g)(x, y) = integral of f(x+s, y+t) g(s, t).

    Computed spectrally: the transform turns convolution into a coefficient
    product.  Exact when both inputs are exact.
    """
    if f.levels != g.levels:
        raise ValueError("convolution needs matching resolutions")
    fs = fourier_coefficients(f)
    gs = fourier_coefficients(g)
    if fs.exact and gs.exact:
        prod = fs.values * gs.values
    else:
        prod = as_float(fs.values) * as_float(gs.values)
    return spectrum_to_function(SpectrumGrid2D(prod, f.levels))


def naive_convolution(f: StepFunction2D, g: StepFunction2D) -> StepFunction2D:
    """Direct average of translates; O(16**levels), for cross-checks only."""
    if f.levels != g.levels:
        raise ValueError("convolution needs matching resolutions")
    side = 1 << f.levels
    exact = f.exact and g.exact
    acc = np.zeros((side, side), dtype=object if exact else np.float64)
    gv = g.values if exact else as_float(g.values)
    for s in range(side):
        for t in range(side):
            w = gv[s, t]
            if w == 0:
                continue
            acc = acc + f.translate(s, t).values * w
    if exact:
        acc = acc * Fraction(1, side * side)
    else:
        acc = acc / (side * side)
    return StepFunction2D(acc, f.levels)


# --- Summability means ----------------------------------------------------

def triangular_fejer_mean(n: int, f: StepFunction2D, route: str = "multiplier") -> StepFunction2D:
    """Average of the first n triangular partial sums of f.

    route "multiplier" applies the closed-form coefficient weights; route
    "convolution" convolves with the summation-built kernel.  The two must
    agree exactly on exact inputs.  Orders above 2**levels would need
    kernel frequencies the grid cannot carry, so both routes refuse them.
    """
    if not 1 <= n <= 1 << f.levels:
        raise ValueError(f"mean order {n} out of range at resolution {f.levels}")
    if route == "multiplier":
        spec = fourier_coefficients(f)
        out = apply_multiplier(spec, triangular_fejer_multiplier(n, f.levels))
        return spectrum_to_function(out)
    if route == "convolution":
        kern = triangular_fejer_kernel(n, f.levels, method="paired")
        if not f.exact:
            kern = StepFunction2D(as_float(kern.values), kern.levels)
        return convolve(f, kern)
    raise ValueError(f"unknown route {route!r}")


def marcinkiewicz_fejer_mean(n: int, f: StepFunction2D, route: str = "multiplier") -> StepFunction2D:
    """Average of the first n square partial sums of f."""
    if not 1 <= n <= 1 << f.levels:
        raise ValueError(f"mean order {n} out of range at resolution {f.levels}")
    if route == "multiplier":
        spec = fourier_coefficients(f)
        out = apply_multiplier(spec, marcinkiewicz_fejer_multiplier(n, f.levels))
        return spectrum_to_function(out)
    if route == "convolution":
        kern = marcinkiewicz_kernel(n, f.levels)
        if not f.exact:
            kern = StepFunction2D(as_float(kern.values), kern.levels)
        return convolve(f, kern)
    raise ValueError(f"unknown route {route!r}")
