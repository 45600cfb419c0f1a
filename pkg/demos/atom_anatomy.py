"""Atoms: small building blocks with zero mean and a calibrated height.

An atom lives on one dyadic square, integrates to zero, and is scaled so
its atomic-space size is at most one.  Two facts drive everything built on
top of them, and both are visible in exact arithmetic here.

First: a summability mean whose order is below the support scale kills the
atom outright, because the atom's spectrum starts above the mean's cutoff.

Second: the part of the mean that leaks outside the support square decays
as the order grows, and the package measures that leakage by exact regional
integrals.
"""

from walshfejer import (
    hp_quasinorm,
    make_atom,
    maximal_function,
    quasilocality_integral,
    triangular_mean_of_atom,
)
from walshfejer.stepfn import max_abs


M = 5
LEVEL = 2


def describe(atom):
    side = 1 << (M - LEVEL)
    print(f"{atom.profile} atom at level {LEVEL}, resolution {M}:")
    print(f"  support square: {side} x {side} cells, height budget {float(atom.budget):.4g}")
    f = atom.centered()
    peak = maximal_function(f)
    print(f"  sup of payload {max_abs(f.values):.4g}, "
          f"sup of maximal function {max_abs(peak.values):.4g}")
    print(f"  atomic-space size at p=1: {float(hp_quasinorm(f, 1.0)):.6g}")
    print()


def annihilation(atom):
    cutoff = 1 << LEVEL
    print(f"Means of order up to 2**{LEVEL} = {cutoff} annihilate the atom")
    print("(the mean of order n only sees frequency pairs with i + j <= n - 2,")
    print("and the atom's spectrum lives beyond that range):")
    for n in (1, 2, cutoff - 1, cutoff, cutoff + 3):
        g = triangular_mean_of_atom(atom, n)
        s = max_abs(g.values)
        marker = "zero" if s == 0 else f"sup {s:.4g}"
        print(f"  n={n:2d}: {marker}")
    print()


def leakage(atom):
    print("Leakage outside the support square (regional integral, p=1):")
    for n in (5, 9, 17, 31):
        val = quasilocality_integral(atom, n, 1.0, "complement_of_cube")
        print(f"  n={n:2d}: {float(val):.6f}")
    print("The numbers stay small because most of the mean's mass sits on")
    print("the square the atom came from.")


if __name__ == "__main__":
    for profile in ("haar_split", "seeded_random"):
        atom = make_atom(1.0, LEVEL, 0, 0, M, profile, seed=42)
        describe(atom)
    atom = make_atom(1.0, LEVEL, 0, 0, M, "haar_split", seed=42)
    annihilation(atom)
    leakage(atom)
