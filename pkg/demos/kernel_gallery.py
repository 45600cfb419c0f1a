"""Dirichlet and averaged kernels, one dimension first, then the triangle.

The point of the gallery: every kernel in the package has at least two
independent construction routes, and the demo recomputes each object both
ways and prints the agreement.  Exact arithmetic makes "agree" mean equal.
"""

from fractions import Fraction

import numpy as np

from walshfejer import (
    block_decomposition,
    dirichlet_closed_form_check,
    dirichlet_values,
    fejer_1d,
    paired_kernel_sum,
    triangle_kernel_sum_by_definition,
    triangular_fejer_kernel,
    walsh_matrix,
)
from walshfejer.stepfn import values_equal


M = 4


def dirichlet_row_table():
    print(f"Dirichlet kernel values D_n at resolution {M} (first 8 cells):")
    for n in (1, 2, 3, 5, 8, 13, 16):
        vals = dirichlet_values(n, M)
        print(f"  D_{n:2d}: {vals[:8]}")
    # route check: summing character rows directly gives the same arrays
    table = walsh_matrix(M)
    for n in (3, 5, 13):
        assert np.array_equal(dirichlet_values(n, M), table[:n].sum(axis=0))
    print("  (each row equals the plain sum of the first n character rows)")
    print()


def fejer_average():
    n = 6
    k = fejer_1d(n, M)
    direct = sum(dirichlet_values(j, M) for j in range(n))
    print(f"Averaged kernel of order {n}, exact rationals:")
    print("  ", [str(v) for v in k.values[:8]])
    agree = values_equal(k.values, np.array([Fraction(int(t), n) for t in direct], dtype=object))
    print(f"  equals (D_0 + ... + D_{n-1}) / {n} cellwise: {agree}")
    print()


def triangular_routes():
    # the two integer routes build n * K_n; the kernel itself carries the 1/n
    n = 11
    kernel = triangular_fejer_kernel(n, M, method="paired")
    by_def = triangle_kernel_sum_by_definition(n, M)
    by_pairs = paired_kernel_sum(n, M)
    scaled = np.array([[Fraction(int(t), n) for t in row] for row in by_def], dtype=object)
    print(f"Two-dimensional triangular kernel of order {n}:")
    print(f"  definition route == paired route (as integers): {np.array_equal(by_def, by_pairs)}")
    print(f"  kernel == definition sum / {n} (as rationals):   {values_equal(kernel.values, scaled)}")
    print()


def block_split():
    # orders with a nonzero top dyadic block split into a coarse part plus
    # a shifted remainder; total() reassembles the pieces
    n, level = 13, 2
    dec = block_decomposition(n, level, M)
    whole = paired_kernel_sum(n, M)
    print(f"Block decomposition of the order-{n} kernel at level {level}:")
    print(f"  {len(dec.terms)} pieces reassemble to the full kernel: "
          f"{np.array_equal(dec.total(), whole)}")
    print()


def checkers_carry_witnesses():
    """Every identity has a checker that reports where it broke, not just that."""
    good = dirichlet_closed_form_check(13, M)
    print(f"closed-form checker, correct variant: passed={good.passed}, "
          f"cases={good.cases}")
    bad = dirichlet_closed_form_check(13, M, variant="tail_index")
    print(f"closed-form checker, wrong sign variant: passed={bad.passed}")
    if bad.witness:
        keys = sorted(bad.witness)
        print(f"  witness fields: {keys}")
        print(f"  first mismatch at cell {bad.witness.get('cell')}")


if __name__ == "__main__":
    dirichlet_row_table()
    fejer_average()
    triangular_routes()
    block_split()
    checkers_carry_witnesses()
