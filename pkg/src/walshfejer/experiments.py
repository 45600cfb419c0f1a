"""Configured experiment scans emitting machine-readable report rows.

Five commands mirror the checked material: exact identity sweeps, growth of
weighted kernel families against their stated rates, pointwise kernel
bounds, atom quasi-locality, and the operator-norm desk check.  Every
command is a pure function of its config (seeds included), so reports are
byte-reproducible.  Verdicts never compare against invented constants: a
family passes when its measured ratios stay flat across the level grid
(max within a factor of the median, log-slope of the tail near zero).
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import kernels
from .hardy import REGION_KINDS, hp_quasinorm, make_atom
from .operators import (
    SpectrumGrid2D,
    fourier_coefficients,
    spectrum_to_function,
    triangular_fejer_multiplier,
)
from .stepfn import (
    Region,
    StepFunction2D,
    as_float,
    integrate_abs_p,
    lp_quasinorm,
    max_abs,
)

_COLUMNS = ("experiment", "p", "N", "n", "q", "measured", "normalizer", "ratio", "status")

_RANGE_1D = (0.5, 1.0)   # cumulative / iterated families need p in (1/2, 1]
_RANGE_2D = (0.8, 1.0)   # paired families need p in (4/5, 1]


# --- Config and rows ------------------------------------------------------

@dataclass(frozen=True)
class SamplingPolicy:
    """How kernel orders n (or shifts q) are drawn from a range.

    "auto" scans everything up to level 5 and falls back to a seeded draw of
    `count` values above that.  Range endpoints, the level's dyadic
    endpoints, and an alternating-bit pattern are always included when they
    fit the range.
    """

    kind: str = "auto"   # auto | all | dyadic_endpoints | seeded
    count: int = 32
    seed: int = 1729


@dataclass(frozen=True)
class ExperimentConfig:
    resolution: int | None = None      # grid levels M; None picks the command default
    p_grid: tuple[float, ...] = ()
    level_grid: tuple[int, ...] = ()   # N values; empty picks the command default
    sampling: SamplingPolicy = field(default_factory=SamplingPolicy)
    mode: str = "exact"                # exact | float
    factor: float = 4.0
    exploratory: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.factor <= 0:
            raise ValueError("ratio bound factor must be positive")
        for p in self.p_grid:
            if not (0 < p <= 1 or math.isinf(p)):
                raise ValueError(f"p value {p} outside (0, 1]")
        if self.resolution is not None and not 1 <= self.resolution <= 12:
            raise ValueError("resolution must lie in 1..12")


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    p: float | None
    N: int | None
    n: int | None
    q: int | None
    measured: float
    normalizer: float
    ratio: float
    status: str


@dataclass
class CommandReport:
    rows: list[ReportRow] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(r.status == "fail" for r in self.rows)

    def extend(self, other: "CommandReport") -> None:
        self.rows.extend(other.rows)
        self.witnesses.extend(other.witnesses)


# --- Sampling -------------------------------------------------------------

def _alternating_pattern(top_bit: int) -> int:
    v = 0
    i = top_bit
    while i >= 0:
        v |= 1 << i
        i -= 2
    return v


def sample_orders(lo: int, hi: int, level: int, policy: SamplingPolicy,
                  extra: tuple[int, ...] = ()) -> list[int]:
    """Deterministic sorted sample from [lo, hi], mandatory values included.

    Mandatory: the endpoints, 2**level and its neighbors 2**level + 1 and
    2**(level+1) - 1, alternating-bit patterns near the top of the range,
    and any `extra` values.  Out-of-range mandatory values are dropped.
    """
    if lo > hi:
        return []
    mand = {lo, hi, 1 << level, (1 << level) + 1, (2 << level) - 1}
    top = hi.bit_length() - 1
    if top >= 0:
        mand.add(_alternating_pattern(top))
    if top >= 1:
        mand.add(_alternating_pattern(top - 1))
    mand.update(extra)
    mand = {v for v in mand if lo <= v <= hi}

    kind = policy.kind
    if kind == "auto":
        kind = "all" if level <= 5 else "seeded"
    if kind == "all":
        return list(range(lo, hi + 1))
    if kind == "dyadic_endpoints":
        return sorted(mand)
    if kind == "seeded":
        rng = np.random.default_rng(
            policy.seed * 1_000_003 + level * 8191 + lo * 31 + hi)
        draws = rng.integers(lo, hi + 1, size=policy.count)
        return sorted(mand | {int(d) for d in draws})
    raise ValueError(f"unknown sampling kind {policy.kind!r}")


# --- Verdicts -------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    passed: bool
    max_value: float
    median: float
    slope: float


def bounded_ratio_verdict(per_level: list[tuple[int, float]], factor: float) -> Verdict:
    """Flatness test: max <= factor * median, and the log2 trend of the last
    third of the level grid must not grow faster than 0.1 per level."""
    if not per_level:
        raise ValueError("verdict needs at least one level")
    ordered = sorted(per_level)
    vals = [v for _, v in ordered]
    mx = max(vals)
    med = statistics.median(vals)
    if mx <= 0:
        return Verdict(True, mx, med, 0.0)
    ok = mx <= factor * med * (1 + 1e-12)
    slope = 0.0
    if len(vals) >= 2:
        w = max(2, math.ceil(len(vals) / 3))
        tail_n = [lvl for lvl, _ in ordered][-w:]
        tail_logs = [math.log2(max(v, 1e-300)) for v in vals[-w:]]
        slope = float(np.polyfit(tail_n, tail_logs, 1)[0])
    return Verdict(ok and slope <= 0.1 + 1e-12, mx, med, slope)


def _verdict_row(experiment: str, p: float | None, verdict: Verdict,
                 factor: float, forced_fail: bool = False) -> ReportRow:
    bound = factor * verdict.median
    if bound <= 0:
        bound = 1.0
    status = "pass" if (verdict.passed and not forced_fail) else "fail"
    return ReportRow(experiment, p, None, None, None,
                     verdict.max_value, bound, verdict.max_value / bound, status)


def _family_row(experiment: str, failures: int, invocations: int, status: str) -> ReportRow:
    total = max(invocations, 1)
    return ReportRow(experiment, None, None, None, None,
                     float(failures), float(total), failures / total, status)


# --- Report writing -------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _sort_key(row: ReportRow):
    def num(v):
        return -1.0 if v is None else float(v)

    return (row.experiment, num(row.p), num(row.N), num(row.n), num(row.q))


def _cell(row: ReportRow, col: str) -> str:
    v = getattr(row, col)
    if v is None:
        return ""
    if col in ("experiment", "status"):
        return str(v)
    if col in ("N", "n", "q"):
        return str(int(v))
    return _fmt(v)


def write_report(rows: list[ReportRow], out_format: str, path: str) -> None:
    """Serialize rows (sorted, LF line endings, 17 significant digits)."""
    ordered = sorted(rows, key=_sort_key)
    if out_format == "csv":
        lines = [",".join(_COLUMNS)]
        for r in ordered:
            lines.append(",".join(_cell(r, c) for c in _COLUMNS))
        text = "\n".join(lines) + "\n"
    elif out_format == "json":
        objs = []
        for r in ordered:
            obj = {}
            for c in _COLUMNS:
                v = getattr(r, c)
                if isinstance(v, float) and math.isinf(v):
                    v = "inf"  # keep the document valid JSON
                obj[c] = v
            objs.append(obj)
        text = json.dumps(objs, indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {out_format!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- Shared helpers -------------------------------------------------------

def _resolution(cfg: ExperimentConfig, default: int) -> int:
    return default if cfg.resolution is None else cfg.resolution


def _split_ps(cfg: ExperimentConfig, lo: float) -> tuple[list[float], list[float]]:
    """(in-range, exploratory) p values for a family needing p in (lo, 1]."""
    grid = cfg.p_grid or (0.6, 0.75, 0.85, 0.9, 0.95, 1.0)
    finite = [p for p in grid if not math.isinf(p)]
    good = [p for p in finite if lo < p <= 1]
    explor = [p for p in finite if p <= lo] if cfg.exploratory else []
    return good, explor


def _mean_from_spectrum(spec: SpectrumGrid2D, n: int) -> StepFunction2D:
    """Triangular mean from a cached spectrum; skips synthesis when the
    weighted spectrum is identically zero."""
    mult = triangular_fejer_multiplier(n, spec.levels)
    if spec.exact:
        prod = spec.values * mult
        if not np.any(prod != Fraction(0)):
            side = 1 << spec.levels
            return StepFunction2D(np.full((side, side), Fraction(0), dtype=object),
                                  spec.levels)
    else:
        prod = spec.values * as_float(mult)
    return spectrum_to_function(SpectrumGrid2D(prod, spec.levels))


def _random_zero_mean(levels: int, seed: int) -> StepFunction2D:
    """Seeded integer noise grid with exact zero mean, never identically 0."""
    side = 1 << levels
    draw_seed = seed
    while True:
        rng = np.random.default_rng(draw_seed)
        raw = rng.integers(-9, 10, size=(side, side))
        mean = Fraction(int(raw.sum()), side * side)
        vals = raw.astype(object) - mean
        if any(v != 0 for v in vals.flat):
            return StepFunction2D(vals, levels)
        draw_seed = draw_seed * 2 + 1


# --- cmd_identities -------------------------------------------------------

def cmd_identities(cfg: ExperimentConfig) -> CommandReport:
    """Exact sweeps of every kernel identity; one pass/fail row per family."""
    if cfg.mode != "exact":
        raise ValueError("identity sweeps are defined in exact mode only")
    m = _resolution(cfg, 7)
    report = CommandReport()

    def run_family(experiment: str, reports, primary: bool = True) -> None:
        failures = 0
        invocations = 0
        for rep in reports:
            invocations += 1
            if not rep.passed:
                failures += 1
                if failures == 1:
                    report.witnesses.append(f"{experiment}: {rep.witness}")
        status = ("pass" if failures == 0 else "fail") if primary else "exact"
        report.rows.append(_family_row(experiment, failures, invocations, status))

    run_family("identity/paley",
               (kernels.paley_check(k, m) for k in range(m + 1)))
    run_family("identity/closed_form",
               (kernels.dirichlet_closed_form_check(n, m, "full_index")
                for n in range(0, (1 << m) + 1)))
    # the downshifted-character diagnostic is informational, not a verdict
    alt_fail = sum(
        0 if kernels.dirichlet_closed_form_check(n, m, "tail_index").passed else 1
        for n in range(0, (1 << m) + 1))
    report.rows.append(_family_row("identity/closed_form_alt", alt_fail, (1 << m) + 1, "exact"))
    report.witnesses.append(
        "closed_form: character variant 'full_index' validates; 'tail_index' "
        f"fails {alt_fail} of {(1 << m) + 1} indices")

    def shift_cases():
        for big_n in range(0, m + 1):
            for k in range(0, (1 << big_n) + 1):
                for l in range(0, 1 << (m - big_n)):
                    yield kernels.dirichlet_shift_check(k, l, big_n, m)

    run_family("identity/shift", shift_cases())

    def reflection_cases():
        for big_n in range(0, m + 1):
            for j in range(0, (1 << big_n) + 1):
                yield kernels.reflection_identity_check(j, big_n, m)

    run_family("identity/reflection", reflection_cases())

    run_family("identity/tr_kernel_routes",
               [kernels.tr_kernel_routes_check(1 << m, m)])

    mb = min(m, 6)

    def block_grid():
        for big_n in range(1, min(4, mb - 1) + 1):
            for q1 in range(1, 1 << (mb - big_n)):
                for q2 in range(0, 1 << big_n):
                    yield big_n, q1 * (1 << big_n) + q2

    run_family("identity/block_decomposition",
               (kernels.block_decomposition_check(n, big_n, mb, "q")
                for big_n, n in block_grid()))
    alt_cases = list(block_grid())
    alt_fail = sum(
        0 if kernels.block_decomposition_check(n, big_n, mb, "q_plus_1").passed else 1
        for big_n, n in alt_cases)
    report.rows.append(_family_row("identity/block_decomposition_alt",
                                   alt_fail, len(alt_cases), "exact"))
    report.witnesses.append(
        "block_decomposition: shift variant 'q' validates; variant 'q_plus_1' "
        f"fails {alt_fail} of {len(alt_cases)} cases")
    return report


# --- cmd_growth -----------------------------------------------------------

def _growth_1d_rows(report: CommandReport, cfg: ExperimentConfig,
                    levels: list[int]) -> None:
    families = (
        ("growth/cumulative", "cumulative", lambda p: 2 * p - 1),
        ("growth/iterated", "iterated", lambda p: 3 * p - 1),
        ("growth/tail_iterated", "tail_iterated", lambda p: 3 * p - 1),
    )
    good, explor = _split_ps(cfg, _RANGE_1D[0])
    for experiment, kind, expo in families:
        per_p: dict[float, list[tuple[int, float]]] = {p: [] for p in good}
        for big_n in levels:
            env = kernels.weighted_family(kind, big_n, big_n).values.astype(np.float64)
            total = float(1 << big_n)
            for p in good + explor:
                measured = float(np.power(env, p).sum() / total)
                normal = 2.0 ** (big_n * expo(p))
                ratio = measured / normal
                status = "float" if p in good else "exploratory"
                report.rows.append(ReportRow(experiment, p, big_n, None, None,
                                             measured, normal, ratio, status))
                if p in good:
                    per_p[p].append((big_n, ratio))
        for p in good:
            verdict = bounded_ratio_verdict(per_p[p], cfg.factor)
            report.rows.append(_verdict_row(experiment + "/verdict", p, verdict, cfg.factor))
            if not verdict.passed:
                report.witnesses.append(
                    f"{experiment} p={p}: max ratio {verdict.max_value:.4g} vs "
                    f"median {verdict.median:.4g}, tail slope {verdict.slope:.3f}")


def _outer_integral(sum_grid: np.ndarray, p: float, level: int) -> float:
    """Integral of |grid|**p over the off-corner region at resolution level."""
    sel = np.abs(sum_grid[1:, 1:]).astype(np.float64)
    return float(np.power(sel, p).sum() / float(1 << (2 * level)))


def _growth_2d_rows(report: CommandReport, cfg: ExperimentConfig,
                    levels: list[int]) -> None:
    good, explor = _split_ps(cfg, _RANGE_2D[0])

    for experiment, shifted in (("growth/triangle_pairs", False),
                                ("growth/shifted_pairs", True)):
        per_p: dict[float, list[tuple[int, float]]] = {p: [] for p in good}
        for big_n in levels:
            if shifted:
                orders = sample_orders(0, (1 << big_n) - 1, big_n, cfg.sampling,
                                       extra=(1, 1 << max(big_n - 1, 0)))
            else:
                orders = sample_orders(1, 1 << big_n, big_n, cfg.sampling)
            best: dict[float, tuple[float, int]] = {}
            for order in orders:
                if shifted:
                    fam = kernels.AlphaFamily("shifted", 1, order)
                    grid = kernels.alpha_kernel_sum(fam, 1 << big_n, big_n).values
                else:
                    grid = kernels.paired_kernel_sum(order, big_n)
                for p in good + explor:
                    val = _outer_integral(grid, p, big_n)
                    if p not in best or val > best[p][0]:
                        best[p] = (val, order)
            for p in good + explor:
                measured, arg = best[p]
                normal = 2.0 ** (big_n * (3 * p - 2))
                ratio = measured / normal
                status = "float" if p in good else "exploratory"
                n_col = None if shifted else arg
                q_col = arg if shifted else None
                report.rows.append(ReportRow(experiment, p, big_n, n_col, q_col,
                                             measured, normal, ratio, status))
                if p in good:
                    per_p[p].append((big_n, ratio))
        for p in good:
            verdict = bounded_ratio_verdict(per_p[p], cfg.factor)
            report.rows.append(_verdict_row(experiment + "/verdict", p, verdict, cfg.factor))
            if not verdict.passed:
                report.witnesses.append(
                    f"{experiment} p={p}: max ratio {verdict.max_value:.4g} vs "
                    f"median {verdict.median:.4g}, tail slope {verdict.slope:.3f}")


def cmd_growth(cfg: ExperimentConfig) -> CommandReport:
    """Weighted Dirichlet families against their stated growth rates."""
    m = _resolution(cfg, 12)
    if cfg.level_grid:
        levels_1d = [n for n in cfg.level_grid if 1 <= n <= m]
        levels_2d = [n for n in cfg.level_grid if 1 <= n <= min(m, 10)]
    else:
        levels_1d = list(range(4, min(m, 12) + 1))
        levels_2d = list(range(3, min(m, 8) + 1))
    if not levels_1d or not levels_2d:
        raise ValueError("empty level grid after clamping to the resolution")
    report = CommandReport()
    _growth_1d_rows(report, cfg, levels_1d)
    _growth_2d_rows(report, cfg, levels_2d)
    return report


# --- cmd_pointwise --------------------------------------------------------

def cmd_pointwise(cfg: ExperimentConfig) -> CommandReport:
    """Shifted-square averages of the triangular kernel against the two
    bracket bounds, with the exact zero implication checked cellwise."""
    m = _resolution(cfg, 7)
    levels = sorted(cfg.level_grid) if cfg.level_grid else [2, 3, 4]
    for big_n in levels:
        if big_n < 1:
            raise ValueError("pointwise scans need N >= 1")
        if m < big_n + 2:
            raise ValueError(f"need resolution >= N + 2 (N={big_n}, M={m})")
    report = CommandReport()

    for family in ("far_far", "far_near"):
        experiment = f"pointwise/{family}"
        per_level: list[tuple[int, float]] = []
        zero_broken = False
        for big_n in levels:
            block = 1 << big_n
            tail = 1 << (m - big_n)
            rows_n = kernels.dirichlet_matrix(big_n)
            sum_dx = rows_n[1:block + 1].sum(axis=0)   # per x-block at level N
            q1_set = sorted({1, 2, (1 << (m - big_n)) - 1})
            q2_set = sorted(q for q in {0, 1, 1 << (big_n - 1), block - 1}
                            if q < block)
            level_best = 0.0
            for q1 in q1_set:
                for q2 in q2_set:
                    n = q1 * block + q2
                    nk = kernels.paired_kernel_sum(n, m)
                    bs = np.abs(nk).reshape(block, tail, block, tail).sum(axis=(1, 3))
                    b1 = np.abs(kernels.paired_kernel_sum(q2, big_n))
                    fam2 = kernels.AlphaFamily("shifted", 1, q2)
                    b2 = np.abs(kernels.alpha_kernel_sum(fam2, block + 1, big_n).values)
                    if family == "far_far":
                        pairs = [(a, b) for a in range(1, block) for b in range(1, block)]
                    else:
                        pairs = [(a, 0) for a in range(1, block)]
                    worst = Fraction(0)
                    for a, b in pairs:
                        br = int(b1[a, b]) + int(b2[a, b])
                        if family == "far_near":
                            br += block * abs(int(sum_dx[a]))
                        lhs_int = int(bs[a, b])
                        if br == 0:
                            if lhs_int != 0:
                                zero_broken = True
                                report.witnesses.append(
                                    f"{experiment}: N={big_n} n={n} block=({a},{b}) "
                                    f"bracket=0 but average={lhs_int}/{n * 4 ** m}")
                            continue
                        c = Fraction(lhs_int * (1 << (3 * big_n)), n * (1 << (2 * m)) * br)
                        if c > worst:
                            worst = c
                    cval = float(worst)
                    level_best = max(level_best, cval)
                    report.rows.append(ReportRow(experiment, None, big_n, n, q2,
                                                 cval, 1.0, cval, "exact"))
            per_level.append((big_n, level_best))
        verdict = bounded_ratio_verdict(per_level, cfg.factor)
        report.rows.append(_verdict_row(experiment + "/verdict", None, verdict,
                                        cfg.factor, forced_fail=zero_broken))
        if not verdict.passed or zero_broken:
            report.witnesses.append(
                f"{experiment}: constants per level {per_level}, slope {verdict.slope:.3f}"
                + (", zero-implication violated" if zero_broken else ""))
    return report


# --- cmd_atoms ------------------------------------------------------------

def _atom_regions(level: int) -> dict[str, object]:
    return {
        "comp_both": Region.comp_both(level),
        "comp_x_only": Region.comp_x_only(level),
        "comp_y_only": Region.comp_y_only(level),
    }


def cmd_atoms(cfg: ExperimentConfig) -> CommandReport:
    """Quasi-locality of the triangular means of atoms: exact vanishing below
    the support scale, bounded regional integrals above it."""
    m = _resolution(cfg, 6)
    levels = sorted(cfg.level_grid) if cfg.level_grid else [2, 3, 4]
    for big_n in levels:
        if big_n + 1 > m:
            raise ValueError(f"atom level {big_n} needs resolution >= {big_n + 1}")
    good, explor = _split_ps(cfg, _RANGE_2D[0])
    report = CommandReport()

    for profile in ("haar_split", "seeded_random"):
        per_key: dict[tuple[str, float], list[tuple[int, float]]] = {}
        vanish_fail = False
        for p in good + explor:
            exploratory = p not in good
            for big_n in levels:
                seed = cfg.sampling.seed * 9176 + big_n * 131 + round(p * 1000)
                atom = make_atom(p, big_n, 0, 0, m, profile, seed)
                spec = fourier_coefficients(atom.centered())

                # below the support scale the mean must vanish identically
                worst = 0.0
                for n in range(1, 1 << big_n):
                    g = _mean_from_spectrum(spec, n)
                    worst = max(worst, float(max_abs(g.values)))
                status = "exploratory" if exploratory else "exact"
                report.rows.append(ReportRow(f"atom/{profile}/vanishing", p, big_n,
                                             None, None, worst, 1.0, worst, status))
                if worst != 0.0 and not exploratory:
                    vanish_fail = True
                    report.witnesses.append(
                        f"atom/{profile}: nonzero mean below scale at p={p} N={big_n}")

                orders = sample_orders(1 << big_n, 1 << m, big_n, cfg.sampling)
                regions = _atom_regions(big_n)
                for n in orders:
                    g = _mean_from_spectrum(spec, n)
                    parts = {}
                    for rk, region in regions.items():
                        parts[rk] = float(integrate_abs_p(g, region, p))
                    parts["complement_of_cube"] = sum(parts.values())
                    for rk in REGION_KINDS:
                        val = parts[rk]
                        stat = ("exploratory" if exploratory
                                else ("exact" if p == 1 else "float"))
                        report.rows.append(ReportRow(f"atom/{profile}/{rk}", p, big_n,
                                                     n, None, val, 1.0, val, stat))
                        if not exploratory:
                            key = (rk, p)
                            bucket = per_key.setdefault(key, [])
                            # keep one (level, max-over-n) entry per level
                            if bucket and bucket[-1][0] == big_n:
                                bucket[-1] = (big_n, max(bucket[-1][1], val))
                            else:
                                bucket.append((big_n, val))
        for (rk, p), per_level in sorted(per_key.items()):
            verdict = bounded_ratio_verdict(per_level, cfg.factor)
            report.rows.append(_verdict_row(f"atom/{profile}/{rk}/verdict", p,
                                            verdict, cfg.factor,
                                            forced_fail=vanish_fail))
            if not verdict.passed:
                report.witnesses.append(
                    f"atom/{profile}/{rk} p={p}: per-level maxima {per_level}")
    return report


# --- cmd_opnorm -----------------------------------------------------------

def _kernel_l1_rows(report: CommandReport, cfg: ExperimentConfig, m: int) -> None:
    block_max: dict[int, Fraction] = {}
    for n in range(1, (1 << m) + 1):
        res = max(1, (n - 1).bit_length())   # exact resolution for orders < 2**res
        total = int(np.abs(kernels.paired_kernel_sum(n, res)).sum())
        l1 = Fraction(total, n * (1 << (2 * res)))
        label = n.bit_length() - 1 if n < (1 << m) else m - 1
        report.rows.append(ReportRow("opnorm/kernel_l1", None, label, n, None,
                                     float(l1), 1.0, float(l1), "exact"))
        if label >= 3 and (label not in block_max or l1 > block_max[label]):
            block_max[label] = l1
    if len(block_max) >= 2:
        top = max(block_max.values())
        bot = min(block_max.values())
        variation = float(top / bot)
    else:
        variation = 1.0
    status = "pass" if variation <= 2.0 + 1e-12 else "fail"
    report.rows.append(ReportRow("opnorm/kernel_l1/verdict", None, None, None, None,
                                 variation, 2.0, variation / 2.0, status))
    if status == "fail":
        report.witnesses.append(
            "opnorm/kernel_l1: block maxima "
            + ", ".join(f"N={k}:{float(v):.4g}" for k, v in sorted(block_max.items())))


def _ratio_rows(report: CommandReport, cfg: ExperimentConfig, kind: str,
                cases, factor: float) -> None:
    """cases: iterable of (p, level, n, tag, ratio, status)."""
    per_p: dict[float, dict[int, float]] = {}
    for p, level, n, tag, ratio, status in cases:
        report.rows.append(ReportRow(f"opnorm/ratio/{kind}", p, level, n, tag,
                                     ratio, 1.0, ratio, status))
        if status != "exploratory":
            levels = per_p.setdefault(p, {})
            levels[level] = max(levels.get(level, 0.0), ratio)
    for p in sorted(per_p):
        per_level = sorted(per_p[p].items())
        verdict = bounded_ratio_verdict(per_level, factor)
        report.rows.append(_verdict_row(f"opnorm/ratio/{kind}/verdict", p,
                                        verdict, factor))
        if not verdict.passed:
            report.witnesses.append(
                f"opnorm/ratio/{kind} p={p}: per-level maxima {per_level}")


def cmd_opnorm(cfg: ExperimentConfig) -> CommandReport:
    """Kernel L1 norms across dyadic blocks, and Hardy-to-Lebesgue ratios of
    the triangular means on seeded functions and atoms."""
    m = _resolution(cfg, 9)
    report = CommandReport()
    _kernel_l1_rows(report, cfg, m)

    grid = cfg.p_grid or (0.85, 1.0)
    ps = [p for p in grid if not math.isinf(p) and 0.8 < p <= 1]
    inf_p = float("inf")

    # The uniformity claimed by the ratio bound is across scales, so the
    # verdict grid for seeded functions is the generation resolution; the
    # ratio as a function of n alone ramps up from zero and carries no
    # boundedness information.
    res_grid = [r for r in (2, 3, 4, 5, 6) if r <= m] or [m]

    def random_cases():
        for res in res_grid:
            for j in range(4):
                f = _random_zero_mean(res, cfg.sampling.seed * 7919 + 64 * res + j)
                spec = fourier_coefficients(f)
                denom_inf = float(max_abs(f.values))
                denoms = {p: hp_quasinorm(f, p) for p in ps}
                for n in sample_orders(1, 1 << res, res, cfg.sampling):
                    g = _mean_from_spectrum(spec, n)
                    for p in ps:
                        ratio = float(lp_quasinorm(g, p)) / float(denoms[p])
                        yield p, res, n, j, ratio, ("exact" if p == 1 else "float")
                    yield (inf_p, res, n, j,
                           float(max_abs(g.values)) / denom_inf, "exact")

    _ratio_rows(report, cfg, "random", random_cases(), cfg.factor)

    # atoms at their own support levels, with order coverage proportional to
    # the scale so the levels are comparable
    levels = list(cfg.level_grid) if cfg.level_grid else [2, 3, 4, 5]
    levels = [n for n in levels if n + 1 <= m]

    def atom_cases(profile: str):
        for big_n in levels:
            ma = min(m, big_n + 2)
            for p in ps:
                seed = cfg.sampling.seed * 4513 + big_n * 17 + round(p * 100)
                atom = make_atom(p, big_n, 0, 0, ma, profile, seed)
                f = atom.centered()
                spec = fourier_coefficients(f)
                denom = hp_quasinorm(f, p)
                denom_inf = float(max_abs(f.values))
                for n in sample_orders(1 << big_n, 1 << ma, big_n, cfg.sampling):
                    g = _mean_from_spectrum(spec, n)
                    ratio = float(lp_quasinorm(g, p)) / float(denom)
                    yield p, big_n, n, None, ratio, ("exact" if p == 1 else "float")
                    yield (inf_p, big_n, n, None,
                           float(max_abs(g.values)) / denom_inf, "exact")

    for profile in ("haar_split", "seeded_random"):
        _ratio_rows(report, cfg, profile, atom_cases(profile), cfg.factor)
    return report


# --- cmd_all --------------------------------------------------------------

def cmd_all(cfg: ExperimentConfig) -> CommandReport:
    report = CommandReport()
    report.extend(cmd_identities(replace(cfg, mode="exact")))
    report.extend(cmd_growth(cfg))
    report.extend(cmd_pointwise(cfg))
    report.extend(cmd_atoms(cfg))
    report.extend(cmd_opnorm(cfg))
    return report


COMMANDS = {
    "identities": cmd_identities,
    "growth": cmd_growth,
    "pointwise": cmd_pointwise,
    "atoms": cmd_atoms,
    "opnorm": cmd_opnorm,
    "all": cmd_all,
}
