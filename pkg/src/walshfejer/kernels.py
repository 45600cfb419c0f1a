"""Dirichlet, Fejer, triangular and related kernels on the dyadic grid.

Everything here is built from the definition (sums of Walsh rows) so that the
closed forms and identities checked against these arrays are genuinely
independent.  Integer-valued kernels are accumulated either in int64 or, for
the quadratic outer-product sums, through float64 BLAS matmuls: all values
are proved (and asserted) to stay below 2**53, where float64 arithmetic on
integers is exact, then cast back to int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .dyadic import reverse_bits, tail_index
from .stepfn import StepFunction1D, StepFunction2D, SupEnvelope

_MATRIX_LEVEL_CAP = 11  # full 2**M x 2**M tables only below this; stream otherwise
_EXACT_FLOAT_BOUND = float(1 << 53)


# --- Walsh rows -----------------------------------------------------------

def walsh_row(n: int, levels: int) -> np.ndarray:
    """Values of w_n on all 2**levels cells, as an int64 array of +-1."""
    cells = 1 << levels
    if not 0 <= n < cells:
        raise ValueError(f"walsh index {n} out of range at resolution {levels}")
    out = np.ones(cells, dtype=np.int64)
    mask = reverse_bits(n, levels)  # cell-space bit positions
    j = 0
    while mask:
        if mask & 1:
            # flip the cells whose index bit j is set
            out.reshape(-1, 2 << j)[:, 1 << j:] *= -1
        mask >>= 1
        j += 1
    return out


def rademacher_row(k: int, levels: int) -> np.ndarray:
    return walsh_row(1 << k, levels)


def walsh_rows(levels: int, count: int) -> Iterator[np.ndarray]:
    """Yield w_0, ..., w_{count-1} with one vector multiply per step.

    Uses w_{k+1} = w_k * w_{2**(s+1)-1} where s counts the trailing zeros of
    k+1; the right factor is a prefix product of Rademacher rows.
    """
    cells = 1 << levels
    if count > cells:
        raise ValueError(f"only {cells} Walsh rows exist at resolution {levels}")
    prefix = [walsh_row((2 << s) - 1, levels) for s in range(levels)]
    w = np.ones(cells, dtype=np.int64)
    for k in range(count):
        yield w.copy()
        nxt = k + 1
        if nxt < count:
            s = (nxt & -nxt).bit_length() - 1
            w = w * prefix[s]


@lru_cache(maxsize=None)
def _walsh_matrix_i8(levels: int) -> np.ndarray:
    """All Walsh rows, Paley order, int8, read-only."""
    if levels > _MATRIX_LEVEL_CAP:
        raise ValueError(f"refusing to materialize a 2**{levels} square table")
    w = np.ones((1, 1), dtype=np.int8)
    for _ in range(levels):
        rows, cols = w.shape
        nxt = np.empty((2 * rows, 2 * cols), dtype=np.int8)
        # row 2m+b, col a*cols+d  ->  (-1)^(a*b) * w[m, d]
        nxt[0::2, :cols] = w
        nxt[1::2, :cols] = w
        nxt[0::2, cols:] = w
        nxt[1::2, cols:] = -w
        w = nxt
    w.flags.writeable = False
    return w


def walsh_matrix(levels: int) -> np.ndarray:
    """Copy of the full Walsh-row table (2**levels rows)."""
    return _walsh_matrix_i8(levels).copy()


@lru_cache(maxsize=None)
def _walsh_matrix_f64(levels: int) -> np.ndarray:
    w = _walsh_matrix_i8(levels).astype(np.float64)
    w.flags.writeable = False
    return w


# --- Dirichlet kernels ----------------------------------------------------

def dirichlet_values(n: int, levels: int) -> np.ndarray:
    """D_n = sum_{k<n} w_k on all cells, int64.  Allows 0 <= n <= 2**levels."""
    cells = 1 << levels
    if not 0 <= n <= cells:
        raise ValueError(f"dirichlet index {n} out of range at resolution {levels}")
    if levels <= _MATRIX_LEVEL_CAP:
        return _dirichlet_matrix_i64(levels)[n].copy()
    acc = np.zeros(cells, dtype=np.int64)
    for w in walsh_rows(levels, n):
        acc += w
    return acc


@lru_cache(maxsize=None)
def _dirichlet_matrix_i64(levels: int) -> np.ndarray:
    """Rows D_0 .. D_{2**levels} (cumulative sums of Walsh rows), read-only."""
    cells = 1 << levels
    d = np.zeros((cells + 1, cells), dtype=np.int64)
    np.cumsum(_walsh_matrix_i8(levels), axis=0, dtype=np.int64, out=d[1:])
    d.flags.writeable = False
    return d


@lru_cache(maxsize=None)
def _dirichlet_matrix_f64(levels: int) -> np.ndarray:
    d = _dirichlet_matrix_i64(levels).astype(np.float64)
    d.flags.writeable = False
    return d


def dirichlet(n: int, levels: int) -> StepFunction1D:
    return StepFunction1D(dirichlet_values(n, levels), levels)


def dirichlet_matrix(levels: int) -> np.ndarray:
    """Read-only int64 table whose row n is D_n, for 0 <= n <= 2**levels."""
    return _dirichlet_matrix_i64(levels)


def _fraction_array(ints: np.ndarray, den: int) -> np.ndarray:
    to_frac = np.frompyfunc(lambda v: Fraction(int(v), den), 1, 1)
    return to_frac(ints)


def fejer_1d(n: int, levels: int) -> StepFunction1D:
    """K_n = (1/n) sum_{j<n} D_j, exact Fractions with denominator dividing n.

    The double sum collapses to sum_{i<n-1} (n-1-i) w_i, accumulated in one
    streamed pass.
    """
    if n < 1:
        raise ValueError("fejer_1d needs n >= 1")
    if n > 1 << levels:
        raise ValueError(f"fejer order {n} out of range at resolution {levels}")
    acc = np.zeros(1 << levels, dtype=np.int64)
    for i, w in enumerate(walsh_rows(levels, max(n - 1, 1))):
        if i >= n - 1:
            break
        acc += (n - 1 - i) * w
    return StepFunction1D(_fraction_array(acc, n), levels)


# --- Identity checkers ----------------------------------------------------

@dataclass
class CheckReport:
    """Outcome of an exact identity scan."""

    name: str
    passed: bool
    cases: int
    witness: dict | None = None
    detail: str = ""


def paley_check(k: int, levels: int) -> CheckReport:
    """D_{2**k} == 2**k on I_k and 0 elsewhere."""
    if not 0 <= k <= levels:
        raise ValueError("paley_check needs 0 <= k <= levels")
    got = dirichlet_values(1 << k, levels)
    want = np.zeros(1 << levels, dtype=np.int64)
    want[: 1 << (levels - k)] = 1 << k
    bad = np.nonzero(got != want)[0]
    witness = None
    if bad.size:
        c = int(bad[0])
        witness = {"cell": c, "got": int(got[c]), "want": int(want[c])}
    return CheckReport("paley", bad.size == 0, 1 << levels, witness)


def dirichlet_closed_form_check(n: int, levels: int, variant: str = "full_index") -> CheckReport:
    """Ring-by-ring closed form for D_n against the summed kernel.

    On J_i = I_i minus I_{i+1} the kernel is a constant times a Walsh row:
    D_n = w * ((n mod 2^i) - n_i 2^i).  The "full_index" variant takes
    w = w_n; bits of n below position i act trivially on the ring, so this
    equals the character of the bits from i up.  The "tail_index" variant
    clears bits of n through position i, dropping the r_i factor; on the
    ring r_i = -1, so the variants differ by (-1)^{n_i} and disagree on
    every ring where n_i = 1 and the coefficient is nonzero.
    """
    if variant not in ("full_index", "tail_index"):
        raise ValueError(f"unknown variant {variant!r}")
    if not 0 <= n <= 1 << levels:
        raise ValueError(f"index {n} out of range at resolution {levels}")
    d = dirichlet_values(n, levels)
    cases = 0
    for i in range(levels):
        start = 1 << (levels - i - 1)
        stop = 1 << (levels - i)
        cases += stop - start
        low = n & ((1 << i) - 1)
        coeff = low - (((n >> i) & 1) << i)
        if coeff == 0:
            pred = np.zeros(stop - start, dtype=np.int64)
        else:
            widx = n if variant == "full_index" else tail_index(n, i + 1)
            pred = coeff * walsh_row(widx, levels)[start:stop]
        seg = d[start:stop]
        bad = np.nonzero(seg != pred)[0]
        if bad.size:
            c = int(bad[0])
            return CheckReport(
                "closed_form", False, cases,
                {"n": n, "ring": i, "cell": start + c,
                 "got": int(seg[c]), "formula": int(pred[c]), "variant": variant},
            )
    return CheckReport("closed_form", True, cases, None, detail=variant)


def dirichlet_shift_check(k: int, l: int, level: int, levels: int) -> CheckReport:
    """D_{k + l 2**N}(x) == w_l(2**N x) D_k(x) + D_{2**N}(x) D_l(2**N x)."""
    big_n, m = level, levels
    if not 0 <= big_n <= m:
        raise ValueError("need 0 <= level <= levels")
    if not 0 <= k <= 1 << big_n:
        raise ValueError("need 0 <= k <= 2**level")
    if l < 0 or k + (l << big_n) > 1 << m:
        raise ValueError("need k + l*2**level <= 2**levels")
    reps = 1 << big_n
    lhs = dirichlet_values(k + (l << big_n), m)
    rhs = dirichlet_values(1 << big_n, m) * np.tile(dirichlet_values(l, m - big_n), reps)
    if k > 0:
        rhs = rhs + np.tile(walsh_row(l, m - big_n), reps) * dirichlet_values(k, m)
    bad = np.nonzero(lhs != rhs)[0]
    witness = None
    if bad.size:
        c = int(bad[0])
        witness = {"k": k, "l": l, "cell": c, "lhs": int(lhs[c]), "rhs": int(rhs[c])}
    return CheckReport("shift", bad.size == 0, 1 << m, witness)


def reflection_identity_check(j: int, level: int, levels: int) -> CheckReport:
    """w_{2**N - 1} D_j == D_{2**N} - D_{2**N - j} for 0 <= j <= 2**N."""
    big_n, m = level, levels
    if not 0 <= big_n <= m:
        raise ValueError("need 0 <= level <= levels")
    if not 0 <= j <= 1 << big_n:
        raise ValueError("need 0 <= j <= 2**level")
    lhs = walsh_row((1 << big_n) - 1, m) * dirichlet_values(j, m)
    rhs = dirichlet_values(1 << big_n, m) - dirichlet_values((1 << big_n) - j, m)
    bad = np.nonzero(lhs != rhs)[0]
    witness = None
    if bad.size:
        c = int(bad[0])
        witness = {"j": j, "cell": c, "lhs": int(lhs[c]), "rhs": int(rhs[c])}
    return CheckReport("reflection", bad.size == 0, 1 << m, witness)


# --- Exact integer matmul plumbing ---------------------------------------

def _exact_matmul(a_rows: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
    """sum_r a_rows[r] (x) b_rows[r] as int64, via float64 BLAS.

    Exactness requires rows * max|a| * max|b| < 2**53, which is asserted.
    """
    if a_rows.shape[0] == 0:
        return np.zeros((a_rows.shape[1], b_rows.shape[1]), dtype=np.int64)
    bound = a_rows.shape[0] * float(np.max(np.abs(a_rows))) * float(np.max(np.abs(b_rows)))
    if bound >= _EXACT_FLOAT_BOUND:
        raise OverflowError("outer-product sum too large for exact float64 accumulation")
    g = a_rows.T @ b_rows
    return np.rint(g).astype(np.int64)


# --- Two-dimensional kernels ---------------------------------------------

def triangular_dirichlet(k: int, levels: int) -> StepFunction2D:
    """D_k^tri(x, y) = sum over i+j <= k-1 of w_i(x) w_j(y), integer-valued."""
    if not 0 <= k <= 1 << levels:
        raise ValueError(f"order {k} out of range at resolution {levels}")
    cells = 1 << levels
    acc = np.zeros((cells, cells), dtype=np.int64)
    wf = _walsh_matrix_f64(levels)
    for m in range(k):
        acc += _exact_matmul(wf[: m + 1], wf[m::-1])
    return StepFunction2D(acc, levels)


def paired_kernel_sum(n: int, levels: int) -> np.ndarray:
    """n * K_n^tri as int64: sum_{k=1}^{n-1} D_k(x) D_{n-k}(y)."""
    if not 0 <= n <= 1 << levels:
        raise ValueError(f"order {n} out of range at resolution {levels}")
    cells = 1 << levels
    if n <= 1:
        return np.zeros((cells, cells), dtype=np.int64)
    df = _dirichlet_matrix_f64(levels)
    return _exact_matmul(df[1:n], df[n - 1:0:-1])


def triangle_kernel_sum_by_definition(n: int, levels: int) -> np.ndarray:
    """sum_{k<n} D_k^tri as int64, built from anti-diagonal Walsh blocks.

    Collapses to sum_{m<=n-2} (n-1-m) * sum_{i<=m} w_i (x) w_{m-i}.
    """
    if not 0 <= n <= 1 << levels:
        raise ValueError(f"order {n} out of range at resolution {levels}")
    cells = 1 << levels
    acc = np.zeros((cells, cells), dtype=np.int64)
    wf = _walsh_matrix_f64(levels)
    for m in range(0, n - 1):
        acc += (n - 1 - m) * _exact_matmul(wf[: m + 1], wf[m::-1])
    return acc


def triangular_fejer_kernel(n: int, levels: int, method: str = "paired") -> StepFunction2D:
    """K_n^tri = (1/n) sum_{k<n} D_k^tri, exact Fractions.

    method "paired" uses the product form sum_{k=1}^{n-1} D_k (x) D_{n-k};
    method "definition" averages the triangular Dirichlet kernels directly.
    The two must agree cellwise (that equality is one of the checked
    identities, see tr_kernel_routes_check).
    """
    if n < 1:
        raise ValueError("kernel order must be >= 1")
    if method == "paired":
        ints = paired_kernel_sum(n, levels)
    elif method == "definition":
        ints = triangle_kernel_sum_by_definition(n, levels)
    else:
        raise ValueError(f"unknown method {method!r}")
    return StepFunction2D(_fraction_array(ints, n), levels)


def tr_kernel_routes_check(nmax: int, levels: int) -> CheckReport:
    """DEFINITION == PAIRED for every n <= nmax, in one incremental sweep."""
    if not 1 <= nmax <= 1 << levels:
        raise ValueError(f"nmax {nmax} out of range at resolution {levels}")
    cells = 1 << levels
    wf = _walsh_matrix_f64(levels)
    tri = np.zeros((cells, cells), dtype=np.int64)   # D_{n-1}^tri
    total = np.zeros((cells, cells), dtype=np.int64)  # sum_{k<n} D_k^tri
    for n in range(1, nmax + 1):
        if n >= 2:
            tri = tri + _exact_matmul(wf[: n - 1], wf[n - 2::-1])
            total = total + tri
        paired = paired_kernel_sum(n, levels)
        if not np.array_equal(total, paired):
            bad = np.nonzero(total != paired)
            x, y = int(bad[0][0]), int(bad[1][0])
            return CheckReport(
                "tr_kernel_routes", False, n,
                {"n": n, "cell": (x, y),
                 "definition": int(total[x, y]), "paired": int(paired[x, y])},
            )
    return CheckReport("tr_kernel_routes", True, nmax, None)


def marcinkiewicz_kernel_sum(n: int, levels: int) -> np.ndarray:
    """n * K_n^sq as int64: sum_{j<n} D_j(x) D_j(y)."""
    if not 1 <= n <= 1 << levels:
        raise ValueError(f"order {n} out of range at resolution {levels}")
    df = _dirichlet_matrix_f64(levels)
    return _exact_matmul(df[:n], df[:n])


def marcinkiewicz_kernel(n: int, levels: int) -> StepFunction2D:
    """K_n^sq = (1/n) sum_{j<n} D_j (x) D_j, exact Fractions."""
    return StepFunction2D(_fraction_array(marcinkiewicz_kernel_sum(n, levels), n), levels)


# --- Indexed kernel families ---------------------------------------------

@dataclass(frozen=True)
class AlphaFamily:
    """A family of index pairs (a1(k), a2(k)) with a multiplicity bound.

    Kinds: "triangle" pairs (k, n-k) for k < n; "shifted" pairs (k, k-shift)
    for shift <= k < n; "table" uses explicit pairs.  The bound demands that
    along each coordinate no index value repeats more than multiplicity_bound
    times, which is what the kernel-sum estimates need.
    """

    kind: str
    multiplicity_bound: int = 1
    shift: int = 0
    pairs: tuple[tuple[int, int], ...] | None = None

    def index_pairs(self, n: int) -> list[tuple[int, int]]:
        if self.kind == "triangle":
            return [(k, n - k) for k in range(n)]
        if self.kind == "shifted":
            if not 0 <= self.shift <= n:
                raise ValueError("shift out of range")
            return [(k, k - self.shift) for k in range(self.shift, n)]
        if self.kind == "table":
            if self.pairs is None:
                raise ValueError("table family needs explicit pairs")
            if n != len(self.pairs):
                raise ValueError("table family length must equal n")
            return list(self.pairs)
        raise ValueError(f"unknown family kind {self.kind!r}")

    def validate_multiplicity(self, n: int) -> None:
        pairs = self.index_pairs(n)
        for axis in (0, 1):
            counts: dict[int, int] = {}
            for pr in pairs:
                counts[pr[axis]] = counts.get(pr[axis], 0) + 1
            worst = max(counts.values(), default=0)
            if worst > self.multiplicity_bound:
                raise ValueError(
                    f"multiplicity {worst} on axis {axis} exceeds bound {self.multiplicity_bound}")


def alpha_kernel_sum(family: AlphaFamily, n: int, levels: int) -> StepFunction2D:
    """sum_k D_{a1(k)}(x) D_{a2(k)}(y) for the family's index pairs, int64."""
    family.validate_multiplicity(n)
    pairs = family.index_pairs(n)
    cells = 1 << levels
    if not pairs:
        return StepFunction2D(np.zeros((cells, cells), dtype=np.int64), levels)
    hi = max(max(pr) for pr in pairs)
    lo = min(min(pr) for pr in pairs)
    if lo < 0 or hi > cells:
        raise ValueError(f"kernel index range [{lo}, {hi}] exceeds resolution {levels}")
    df = _dirichlet_matrix_f64(levels)
    a = df[[pr[0] for pr in pairs]]
    b = df[[pr[1] for pr in pairs]]
    return StepFunction2D(_exact_matmul(a, b), levels)


# --- Weighted envelope families ------------------------------------------

def weighted_family(kind: str, level: int, levels: int) -> SupEnvelope:
    """Cellwise sup of a weighted Dirichlet-sum family over orders up to 2**level.

    kind "cumulative":    sup_{1<=n<=2**N} |sum_{j=1}^{n} D_j|
    kind "iterated":      sup_{1<=n<=2**N} |sum_{k=1}^{n} (n-k+1) D_k|
    kind "tail_iterated": sup_{0<=q<2**N}  |sum_{k=q}^{2**N-1} (k-q+1) D_k|
    All three stream in O(2**N) vector operations.
    """
    big_n, m = level, levels
    if not 0 <= big_n <= m:
        raise ValueError("need 0 <= level <= levels")
    cells = 1 << m
    count = 1 << big_n
    env = np.zeros(cells, dtype=np.int64)

    if kind in ("cumulative", "iterated"):
        d = np.zeros(cells, dtype=np.int64)
        a = np.zeros(cells, dtype=np.int64)
        b = np.zeros(cells, dtype=np.int64)
        for w in walsh_rows(m, count):
            d += w          # D_n after the n-th step
            a += d          # sum_{j<=n} D_j
            if kind == "cumulative":
                np.maximum(env, np.abs(a), out=env)
            else:
                b += a      # sum_{k<=n} (n-k+1) D_k
                np.maximum(env, np.abs(b), out=env)
        return SupEnvelope(env, m)

    if kind == "tail_iterated":
        # C_q = (U_tot - U_pref) - q (S_tot - S_pref) with prefix sums over D_k
        s_tot = np.zeros(cells, dtype=np.int64)
        u_tot = np.zeros(cells, dtype=np.int64)
        d = np.zeros(cells, dtype=np.int64)
        for k, w in enumerate(walsh_rows(m, count)):
            # d == D_k at the top of each step
            s_tot += d
            u_tot += (k + 1) * d
            d += w
        s_pref = np.zeros(cells, dtype=np.int64)
        u_pref = np.zeros(cells, dtype=np.int64)
        d[:] = 0
        for q, w in enumerate(walsh_rows(m, count)):
            c = (u_tot - u_pref) - q * (s_tot - s_pref)
            np.maximum(env, np.abs(c), out=env)
            # d == D_q here; push it into the prefixes for the next q
            s_pref += d
            u_pref += (q + 1) * d
            d += w
        return SupEnvelope(env, m)

    raise ValueError(f"unknown family kind {kind!r}")


# --- Block decomposition of the paired kernel sum -------------------------

@dataclass
class BlockDecomposition:
    """Eight-term split of sum_{k=1}^{n-1} D_k(x) D_{n-k}(y) at scale 2**level.

    Writes n = q1 * 2**N + q2 and separates the head (k <= q1 * 2**N) from the
    tail (the remaining q2 terms), expanding each Dirichlet factor through the
    shift identity.  The fifth term's inner index has two candidate forms;
    "q" (pairs D_k with D_{k-q2}) is the one that sums back to the kernel,
    "q_plus_1" (D_{k-q2-1}) is kept for diagnosis.
    """

    n: int
    level: int
    q1: int
    q2: int
    terms: tuple[np.ndarray, ...]
    fifth_shift: str

    def total(self) -> np.ndarray:
        out = np.zeros_like(self.terms[0])
        for t in self.terms:
            out = out + t
        return out


def block_decomposition(n: int, level: int, levels: int,
                        fifth_shift: str = "q") -> BlockDecomposition:
    big_n, m = level, levels
    if fifth_shift not in ("q", "q_plus_1"):
        raise ValueError(f"unknown fifth_shift {fifth_shift!r}")
    if not 0 <= big_n <= m:
        raise ValueError("need 0 <= level <= levels")
    if not (1 << big_n) <= n <= (1 << m):
        raise ValueError("need 2**level <= n <= 2**levels")
    q1, q2 = divmod(n, 1 << big_n)
    tail_levels = m - big_n
    reps = 1 << big_n
    cells = 1 << m
    block = 1 << big_n  # 2**N

    def tile_w(idx: int) -> np.ndarray:
        return np.tile(walsh_row(idx, tail_levels), reps)

    def tile_d(idx: int) -> np.ndarray:
        return np.tile(dirichlet_values(idx, tail_levels), reps)

    di = _dirichlet_matrix_i64(m)
    d_block = di[block]                      # D_{2**N}
    w_refl = walsh_row(block - 1, m)         # w_{2**N - 1}
    zero = np.zeros((cells, cells), dtype=np.int64)

    def lsum(left_rows: list[np.ndarray], right_rows: list[np.ndarray]) -> np.ndarray:
        a = np.array(left_rows, dtype=np.float64)
        b = np.array(right_rows, dtype=np.float64)
        return _exact_matmul(a, b)

    # head-side tail factors, indexed by l = 0 .. q1-1
    u_w = [tile_w(l) for l in range(q1)]                 # w_l(2**N x)
    u_d = [tile_d(l) for l in range(q1)]                 # D_l(2**N x)
    v_d = [tile_d(q1 - l) for l in range(q1)]            # D_{q1-l}(2**N y)
    v_w5 = [tile_w(q1 - l - 1) for l in range(q1)]       # w_{q1-l-1}(2**N y)

    has_tail_pairs = q2 >= 2
    if has_tail_pairs:
        dff = _dirichlet_matrix_f64(m)
        pair_block = _exact_matmul(dff[1:q2], dff[q2 - 1:0:-1])  # sum_{k=1}^{q2-1} D_k (x) D_{q2-k}
        v_w = [tile_w(q1 - l) for l in range(q1)]                # w_{q1-l}(2**N y); q1 < 2**(M-N) here
    else:
        pair_block = zero
        v_w = []

    sum_dx_full = di[1:block + 1].sum(axis=0)            # sum_{k=1}^{2**N} D_k
    sum_dy_low = di[0:q2].sum(axis=0) if q2 >= 1 else np.zeros(cells, dtype=np.int64)
    # = sum_{v=0}^{q2-1} D_v = q2 * K_{q2}
    sum_dy_shift = di[1:block - q2 + 1].sum(axis=0)      # sum_{k=q2+1}^{2**N} D_{k-q2}

    t1 = lsum(u_w, v_w) * pair_block if has_tail_pairs else zero
    t2 = sum_dx_full[:, None] * lsum(u_w, v_d) * d_block[None, :] if q1 else zero
    t3 = d_block[:, None] * lsum(u_d, v_w) * sum_dy_low[None, :] if has_tail_pairs else zero
    t4 = block * d_block[:, None] * lsum(u_d, v_d) * d_block[None, :] if q1 else zero

    dff = _dirichlet_matrix_f64(m)
    if fifth_shift == "q":
        shifted = _exact_matmul(dff[q2 + 1:block + 1], dff[1:block - q2 + 1])
    else:
        shifted = _exact_matmul(dff[q2 + 1:block + 1], dff[0:block - q2])
    t5 = -(lsum(u_w, v_w5) * shifted) * w_refl[None, :] if q1 else zero
    t6 = -(d_block[:, None] * lsum(u_d, v_w5)) * (sum_dy_shift * w_refl)[None, :] if q1 else zero

    t7 = tile_w(q1)[:, None] * pair_block if has_tail_pairs else zero
    t8 = (d_block * tile_d(q1))[:, None] * sum_dy_low[None, :] if q2 >= 1 else zero

    return BlockDecomposition(n, big_n, q1, q2, (t1, t2, t3, t4, t5, t6, t7, t8), fifth_shift)


def block_decomposition_check(n: int, level: int, levels: int,
                              fifth_shift: str = "q") -> CheckReport:
    """Eight terms sum back to the paired kernel sum, cellwise and exactly."""
    dec = block_decomposition(n, level, levels, fifth_shift)
    want = paired_kernel_sum(n, levels)
    got = dec.total()
    if np.array_equal(got, want):
        return CheckReport("block_decomposition", True, (1 << levels) ** 2,
                           None, detail=fifth_shift)
    bad = np.nonzero(got != want)
    x, y = int(bad[0][0]), int(bad[1][0])
    return CheckReport(
        "block_decomposition", False, (1 << levels) ** 2,
        {"n": n, "level": level, "cell": (x, y), "got": int(got[x, y]),
         "want": int(want[x, y]),
         "terms": [int(t[x, y]) for t in dec.terms], "variant": fifth_shift},
    )
