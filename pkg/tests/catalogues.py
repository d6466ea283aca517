"""Surface lattices used across the tests, plus a random catalogue generator.

Random catalogues come from blow-ups of the plane at k general points
(basis H, E1..Ek, form diag(1, -1, ..., -1)) and from Hirzebruch surfaces.
Curves are drawn from classes that are irreducible in general position, so
distinct catalogued curves meet nonnegatively.
"""

from __future__ import annotations

import random
from itertools import combinations

from zariski_series.surface import SurfaceLattice

F1 = SurfaceLattice([[1, 0], [0, -1]], [[0, 1], [1, -1], [1, 0]], ["E", "f", "H"], ["H", "E"])
F2 = SurfaceLattice([[-2, 1], [1, 0]], [[1, 0], [0, 1], [1, 2]], ["E", "f", "S"], ["E", "f"])
P1XP1 = SurfaceLattice([[0, 1], [1, 0]], [[1, 0], [0, 1]], ["A", "B"], ["A", "B"])


def hirzebruch(a: int) -> SurfaceLattice:
    return SurfaceLattice([[-a, 1], [1, 0]], [[1, 0], [0, 1], [1, a]], ["E", "f", "S"], ["E", "f"])


def _blowup_curves(k: int):
    n = k + 1

    def vec(h, es):
        v = [0] * n
        v[0] = h
        for i in es:
            v[i + 1] = -1
        return v

    out = [(f"E{i + 1}", [0] * (i + 1) + [1] + [0] * (k - i - 1)) for i in range(k)]
    out += [(f"L{i + 1}{j + 1}", vec(1, [i, j])) for i, j in combinations(range(k), 2)]
    out += [(f"M{i + 1}", vec(1, [i])) for i in range(k)]
    out.append(("H", vec(1, [])))
    if k >= 5:
        out += [("Q" + "".join(str(i + 1) for i in s), vec(2, s)) for s in combinations(range(k), 5)]
    return out


def random_catalogue(rng: random.Random, max_curves: int = 12) -> SurfaceLattice:
    """A random catalogue on a blown-up plane or a Hirzebruch surface."""
    if rng.random() < 0.25:
        return hirzebruch(rng.randint(1, 4))
    k = rng.randint(1, 5)
    pool = _blowup_curves(k)
    exc = pool[:k]  # keep the exceptional curves so the cone is full
    rest = pool[k:]
    rng.shuffle(rest)
    chosen = exc + rest[: max(0, max_curves - k)]
    form = [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(k + 1)] for i in range(k + 1)]
    return SurfaceLattice(
        form, [c for _, c in chosen], [n for n, _ in chosen], ["H"] + [f"E{i + 1}" for i in range(k)]
    )


def random_effective(rng: random.Random, S: SurfaceLattice, max_coeff: int = 6):
    """A random nonzero nonnegative rational combination of catalogued curves."""
    from fractions import Fraction

    while True:
        coeffs = [Fraction(rng.randint(0, max_coeff), rng.randint(1, 3)) if rng.random() < 0.6 else 0 for _ in S.curves]
        if any(coeffs):
            return S.combination(dict(enumerate(coeffs)))
