"""Acceptance gates: the contract the finished library must satisfy.

One [PASS]/[FAIL] line is printed per gate cell so a verbose run reads as a
checklist.  Four gate groups are currently red and are intended to stay red
until a grid of this size can see past the saturation transient: the 2D
growth envelopes at p = 0.85 and 0.9, all quasi-locality cells on the
pinned 3-point level grid, and the haar-atom ratio at p = 0.85.  Their
failure messages carry the per-level data; the companion scans show the
same sequences flattening at levels the pinned grids cannot reach.  The
assertions are left exact rather than loosened to match.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from walshfejer import hardy, kernels
from walshfejer.experiments import (
    ExperimentConfig,
    cmd_atoms,
    cmd_growth,
    cmd_identities,
    cmd_opnorm,
    cmd_pointwise,
    write_report,
    COMMANDS,
)
from walshfejer.hardy import make_atom, REGION_KINDS
from walshfejer.operators import (
    fourier_coefficients,
    marcinkiewicz_fejer_mean,
    triangular_fejer_mean,
    triangular_fejer_multiplier,
)
from walshfejer.stepfn import StepFunction2D, max_abs, values_equal


def announce(cell: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    tail = f"  {detail}" if detail else ""
    print(f"[{tag}] {cell}{tail}")


def verdict_map(report):
    out = {}
    for r in report.rows:
        if r.status in ("pass", "fail"):
            out[(r.experiment, r.p)] = r
    return out


# shared expensive runs, one per module

@pytest.fixture(scope="module")
def growth_report():
    t0 = time.monotonic()
    rep = cmd_growth(ExperimentConfig())
    rep.elapsed = time.monotonic() - t0
    return rep


@pytest.fixture(scope="module")
def pointwise_report():
    return cmd_pointwise(ExperimentConfig())


@pytest.fixture(scope="module")
def atoms_report():
    return cmd_atoms(ExperimentConfig())


@pytest.fixture(scope="module")
def opnorm_report():
    return cmd_opnorm(ExperimentConfig())


class TestIdentitySuite:
    """Every algebraic identity, exact, over its full stated grid."""

    def test_exhaustive_identities_within_budget(self):
        t0 = time.monotonic()
        m = 7

        for k in range(m + 1):
            rep = kernels.paley_check(k, m)
            assert rep.passed, rep.witness
        announce("identities/dyadic-block-rows", True, f"k <= {m}")

        for n in range(0, (1 << m) + 1):
            rep = kernels.dirichlet_closed_form_check(n, m)
            assert rep.passed, rep.witness
        announce("identities/ring-closed-form", True, f"n <= {1 << m}")

        for big_n in range(0, m + 1):
            for k in range(0, (1 << big_n) + 1):
                for l in range(0, 1 << (m - big_n)):
                    rep = kernels.dirichlet_shift_check(k, l, big_n, m)
                    assert rep.passed, rep.witness
        announce("identities/order-shift", True, f"N <= {m}")

        rep = kernels.tr_kernel_routes_check(1 << m, m)
        assert rep.passed, rep.witness
        announce("identities/kernel-routes", True, f"n <= {1 << m}")

        for big_n in range(0, m + 1):
            for j in range(0, (1 << big_n) + 1):
                rep = kernels.reflection_identity_check(j, big_n, m)
                assert rep.passed, rep.witness
        announce("identities/reflection", True, f"N <= {m}")

        mb = 6
        for big_n in range(1, 5):
            for q1 in range(1, (1 << (mb - big_n))):
                for q2 in range(0, 1 << big_n):
                    n = (q1 << big_n) + q2
                    if n > 1 << mb:
                        continue
                    rep = kernels.block_decomposition_check(n, big_n, mb)
                    assert rep.passed, rep.witness
        announce("identities/block-split", True, f"M = {mb}")

        elapsed = time.monotonic() - t0
        announce("identities/runtime", elapsed < 60.0, f"{elapsed:.1f}s")
        assert elapsed < 60.0

    def test_identity_command_records_variants(self):
        rep = cmd_identities(ExperimentConfig())
        ok = rep.passed
        text = "\n".join(rep.witnesses)
        recorded = "full_index" in text and "'q' validates" in text
        announce("identities/command", ok and recorded)
        assert ok
        assert recorded


class TestRouteEquivalence:
    """The coefficient-weight route and the kernel-convolution route build
    the same operator."""

    def test_exact_small_grids(self):
        for m in range(1, 6):
            side = 1 << m
            rng = np.random.default_rng(520 + m)
            f = StepFunction2D(rng.integers(-9, 10, size=(side, side)).astype(object), m)
            for n in range(1, min(32, 1 << m) + 1):
                for op in (triangular_fejer_mean, marcinkiewicz_fejer_mean):
                    a = op(n, f, route="multiplier")
                    b = op(n, f, route="convolution")
                    assert values_equal(a.values, b.values), (m, n, op.__name__)
        announce("routes/exact", True, "M <= 5, n <= 32, both operators")

    def test_float_large_grid(self):
        m = 9
        side = 1 << m
        worst = 0.0
        for j in range(20):
            rng = np.random.default_rng(9000 + j)
            vals = rng.standard_normal((side, side))
            vals -= vals.mean()
            f = StepFunction2D(vals, m)
            orders = [int(rng.integers(1, side + 1)), side]
            for n in orders:
                for op in (triangular_fejer_mean, marcinkiewicz_fejer_mean):
                    a = op(n, f, route="multiplier")
                    b = op(n, f, route="convolution")
                    scale = float(max_abs(a.values)) or 1.0
                    rel = float(max_abs(a.values - b.values)) / scale
                    worst = max(worst, rel)
        announce("routes/float", worst <= 1e-10, f"max rel err {worst:.2e} on 20 seeds")
        assert worst <= 1e-10


class TestAtomVanishing:
    """Means of order below the support scale annihilate atoms, exactly."""

    def test_fifty_seeded_atoms(self):
        m = 5
        checked = 0
        for i in range(50):
            big_n = (1, 2, 3)[i % 3]
            p = (0.85, 1.0)[(i // 3) % 2]
            profile = ("haar_split", "seeded_random")[(i // 6) % 2]
            span = 1 << big_n
            u, v = (7 * i) % span, (11 * i) % span
            atom = make_atom(p, big_n, u, v, m, profile, 1000 + i)
            f = atom.centered()
            spec = fourier_coefficients(f)
            top = (1 << big_n) - 1
            if top >= 1:
                g = triangular_fejer_mean(top, f)
                assert max_abs(g.values) == 0, (i, big_n, p, profile)
            for n in range(1, 1 << big_n):
                prod = spec.values * triangular_fejer_multiplier(n, m)
                assert not np.any(prod != Fraction(0)), (i, n)
            checked += 1
        announce("atoms/vanishing", checked == 50, f"{checked} atoms, N in 1..3")
        assert checked == 50


# growth gate cells: (family, p); the 2D families at p = 0.85 and 0.9 are
# the documented honest failures
GROWTH_CELLS = (
    [(f"growth/{fam}", p)
     for fam in ("cumulative", "iterated", "tail_iterated")
     for p in (0.6, 0.75, 0.85, 1.0)]
    + [(f"growth/{fam}", p)
       for fam in ("triangle_pairs", "shifted_pairs")
       for p in (0.85, 0.9, 0.95, 1.0)]
)


class TestGrowthEnvelopes:
    @pytest.mark.parametrize("family,p", GROWTH_CELLS,
                             ids=[f"{f.split('/')[1]}-p{p}" for f, p in GROWTH_CELLS])
    def test_flatness_cell(self, growth_report, family, p):
        row = verdict_map(growth_report)[(family + "/verdict", p)]
        detail = f"max={row.measured:.4g} bound={row.normalizer:.4g}"
        wit = [w for w in growth_report.witnesses if w.startswith(f"{family} p={p}")]
        if wit:
            detail += " | " + wit[0]
        announce(f"{family} p={p}", row.status == "pass", detail)
        assert row.status == "pass", detail

    def test_runtime_budget(self, growth_report):
        announce("growth/runtime", growth_report.elapsed < 900.0,
                 f"{growth_report.elapsed:.1f}s")
        assert growth_report.elapsed < 900.0


class TestPointwiseBrackets:
    def test_constants_and_zero_implication(self, pointwise_report):
        vm = verdict_map(pointwise_report)
        ok = True
        for family in ("pointwise/far_far", "pointwise/far_near"):
            row = vm[(family + "/verdict", None)]
            announce(family, row.status == "pass",
                     f"max={row.measured:.4g} bound={row.normalizer:.4g}")
            ok = ok and row.status == "pass"
        assert ok
        assert not any("bracket=0 but" in w for w in pointwise_report.witnesses)


QL_CELLS = [(profile, rk, p)
            for profile in ("haar_split", "seeded_random")
            for rk in sorted(REGION_KINDS)
            for p in (0.85, 1.0)]


class TestQuasiLocality:
    @pytest.mark.parametrize("profile,rk,p", QL_CELLS,
                             ids=[f"{pr}-{rk}-p{p}" for pr, rk, p in QL_CELLS])
    def test_regional_integral_cell(self, atoms_report, profile, rk, p):
        row = verdict_map(atoms_report)[(f"atom/{profile}/{rk}/verdict", p)]
        wit = [w for w in atoms_report.witnesses
               if w.startswith(f"atom/{profile}/{rk} p={p}")]
        detail = wit[0] if wit else f"max={row.measured:.4g}"
        announce(f"quasilocal {profile}/{rk} p={p}", row.status == "pass", detail)
        assert row.status == "pass", detail

    def test_vanishing_rows_all_zero(self, atoms_report):
        rows = [r for r in atoms_report.rows
                if r.experiment.endswith("/vanishing") and r.status != "exploratory"]
        ok = bool(rows) and all(r.measured == 0.0 for r in rows)
        announce("quasilocal/vanishing-rows", ok, f"{len(rows)} rows")
        assert ok


RATIO_CELLS = [(kind, p)
               for kind in ("random", "haar_split", "seeded_random")
               for p in (0.85, 1.0)]


class TestOperatorBounds:
    def test_kernel_norm_block_variation(self, opnorm_report):
        row = verdict_map(opnorm_report)[("opnorm/kernel_l1/verdict", None)]
        announce("opnorm/kernel-block-variation", row.status == "pass",
                 f"variation {row.measured:.4g} <= 2")
        assert row.status == "pass"

    @pytest.mark.parametrize("kind,p", RATIO_CELLS,
                             ids=[f"{k}-p{p}" for k, p in RATIO_CELLS])
    def test_ratio_cell(self, opnorm_report, kind, p):
        row = verdict_map(opnorm_report)[(f"opnorm/ratio/{kind}/verdict", p)]
        wit = [w for w in opnorm_report.witnesses
               if w.startswith(f"opnorm/ratio/{kind} p={p}")]
        detail = wit[0] if wit else f"max={row.measured:.4g}"
        announce(f"ratio {kind} p={p}", row.status == "pass", detail)
        assert row.status == "pass", detail


DETERMINISM_CONFIGS = {
    "identities": ExperimentConfig(resolution=4),
    "growth": ExperimentConfig(resolution=6, level_grid=(3, 4, 5)),
    "pointwise": ExperimentConfig(resolution=5, level_grid=(2, 3)),
    "atoms": ExperimentConfig(resolution=4, p_grid=(0.85, 1.0), level_grid=(2,)),
    "opnorm": ExperimentConfig(resolution=5, p_grid=(0.85, 1.0), level_grid=(2,)),
    "all": ExperimentConfig(resolution=5, p_grid=(1.0,), level_grid=(2, 3)),
}


class TestDeterminism:
    @pytest.mark.parametrize("command", sorted(DETERMINISM_CONFIGS))
    def test_byte_identical_reports(self, tmp_path, command):
        cfg = DETERMINISM_CONFIGS[command]
        paths = []
        for tag in ("a", "b"):
            rep = COMMANDS[command](cfg)
            pc = tmp_path / f"{tag}.csv"
            pj = tmp_path / f"{tag}.json"
            write_report(rep.rows, "csv", str(pc))
            write_report(rep.rows, "json", str(pj))
            paths.append((pc.read_bytes(), pj.read_bytes()))
        same = paths[0] == paths[1]
        announce(f"determinism/{command}", same)
        assert same
