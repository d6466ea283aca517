"""Acceptance criteria, one test each.

Every test prints a ``criterion N: PASS|FAIL`` line as it finishes and the
lines are repeated in the terminal summary.  Runtime limits are asserted
inside the tests.
"""

import json
import random
import time
from fractions import Fraction
from itertools import product
from math import comb
from pathlib import Path

import pytest

from zariski_series.cones import RationalCone, SimplicialCone, chamber_of, zariski_chambers
from zariski_series.exact import RatVector
from zariski_series.io import parse_fan_with_group
from zariski_series.series import (
    chamber_reduced_series,
    coefficient_list,
    cone_series,
    expand,
    inclusion_exclusion,
    poincare_series,
    quasi_poly_fit,
)
from zariski_series.toric import (
    ToricH0Oracle,
    divisor_class_group,
    euler_chow_divisors,
    euler_chow_points,
    euler_chow_rank_one,
    euler_chow_top,
    fixed_part_toric,
    h0_toric,
    hirzebruch_fan,
    projective_space_fan,
    surface_lattice_from_fan,
)
from zariski_series.zariski import axioms, zariski_decompose
from catalogues import F1, F2, P1XP1, random_catalogue, random_effective
from oracles import (
    brute_zariski,
    half_triangle_count,
    hirzebruch_h0,
    lattice_points_in_polytope,
    projective_euler_chow_exponent,
    projective_h0,
)

FIX = Path(__file__).resolve().parent.parent / "fixtures"
SEED = 20240611


def geometric_power(k):
    return "(1) / ((1 - t))" if k == 1 else f"(1) / ((1 - t)^{k})"


@pytest.mark.acceptance(1, "projective spaces: Euler-Chow series are (1/(1-t))^C(n+1,p+1)")
def test_criterion_1_projective_euler_chow():
    start = time.perf_counter()
    for n in range(1, 5):
        F = projective_space_fan(n)
        for p in range(n + 1):
            want = geometric_power(projective_euler_chow_exponent(n, p))
            assert euler_chow_rank_one(F, p, assume_rank_one=True).to_string() == want
        assert euler_chow_divisors(F).to_string() == geometric_power(projective_euler_chow_exponent(n, n - 1))
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "Hirzebruch surfaces a=1,2,3: points, divisors and top cycle series")
def test_criterion_2_hirzebruch_euler_chow():
    start = time.perf_counter()
    for a in (1, 2, 3):
        F, group = parse_fan_with_group(FIX / f"hirzebruch{a}.json")
        assert euler_chow_points(F).to_string() == "(1) / ((1 - t)^4)"
        assert euler_chow_top(F).to_string() == "(1) / ((1 - t))"
        E1 = euler_chow_divisors(F, group)
        assert E1.variables == ("t3", "t4")
        assert E1.to_string() == f"(1) / ((1 - t3^-{a}*t4)*(1 - t4)*(1 - t3)^2)"
    assert time.perf_counter() - start < 1.0


def _decomposition_agrees(S, D):
    z = zariski_decompose(S, D)
    assert all(axioms(S, D, z).values())
    found = brute_zariski([list(r) for r in S.form], [list(c) for c in S.curves], list(D), max_support=S.rank - 1)
    assert len(found) == 1
    P, coeffs = found[0]
    assert list(z.P) == P and z.coefficients == coeffs


@pytest.mark.acceptance(3, "Zariski decomposition: axioms and brute-force uniqueness on 53 catalogues")
def test_criterion_3_zariski_suite():
    start = time.perf_counter()
    rng = random.Random(SEED)
    for S in (F1, F2, P1XP1):
        for _ in range(20):
            _decomposition_agrees(S, random_effective(rng, S))
    for _ in range(50):
        S = random_catalogue(rng, max_curves=12)
        assert len(S.curves) <= 12
        for _ in range(2):
            _decomposition_agrees(S, random_effective(rng, S))
    assert time.perf_counter() - start < 30


@pytest.mark.acceptance(4, "chambers of cone(E+3f, E+f) on F2: wall, 1000 samples, 100 linear pairs")
def test_criterion_4_chamber_suite():
    start = time.perf_counter()
    D1, D2 = RatVector([1, 3]), RatVector([1, 1])
    W = RationalCone([D1, D2])
    chambers = zariski_chambers(F2, W)
    assert [sorted(c.gamma) for c in chambers] == [[], [0]]
    wall = chambers[0].cone.intersection(chambers[1].cone)
    assert wall.rays == (RatVector([1, 2]),)
    # grid samples s*D1 + t*D2
    samples = [D1 * s + D2 * t for s, t in product(range(32), repeat=2) if s or t][:1000]
    assert len(samples) == 1000
    for p in samples:
        support = zariski_decompose(F2, p).support
        hits = chamber_of(chambers, p)
        assert hits and any(c.gamma == support for c in hits)
        for c in chambers:
            if c.cone.in_relative_interior(p):
                assert c.gamma == support
    rng = random.Random(SEED)
    for k in range(100):
        c = chambers[k % len(chambers)]
        rays = c.cone.rays

        def interior():
            return sum((r * Fraction(rng.randint(1, 20), rng.randint(1, 5)) for r in rays), RatVector.zero(2))

        A, B = interior(), interior()
        s, t = Fraction(rng.randint(1, 9), rng.randint(1, 4)), Fraction(rng.randint(1, 9), rng.randint(1, 4))
        NA, NB = zariski_decompose(F2, A).N, zariski_decompose(F2, B).N
        assert zariski_decompose(F2, A * s + B * t).N == NA * s + NB * t
    assert time.perf_counter() - start < 30


def _f2_oracle():
    F = hirzebruch_fan(2)
    group = divisor_class_group(F, [1, 0])  # class coordinates (E, f)
    return F, group, ToricH0Oracle(F, group)


def _check_univariate(R, h):
    assert coefficient_list(R, 40) == [h(n) for n in range(41)]


def _check_multivariate(R, h, member=lambda e: True):
    table = expand(R, 15)
    l = R.arity
    for m in product(range(16), repeat=l):
        if sum(m) <= 15:
            assert table.get(m, 0) == (h(m) if member(m) else 0), m


@pytest.mark.acceptance(5, "every emitted series expands to direct lattice counts (degree 15 / 40)")
def test_criterion_5_series_oracle_equivalence():
    start = time.perf_counter()
    F, group, lib = _f2_oracle()
    f2_naive = lambda m: hirzebruch_h0(2, m[0], m[1])  # noqa: E731
    # univariate Poincare series
    for a, E, f in [(1, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 4), (3, 2, 3), (1, 2, 1)]:
        Fa = hirzebruch_fan(a)
        R = poincare_series(lambda n: h0_toric(Fa, (n * f, n * E, 0, 0)), effective=True)
        _check_univariate(R, lambda n: hirzebruch_h0(a, n * E, n * f))
    P2 = projective_space_fan(2)
    _check_univariate(poincare_series(lambda n: h0_toric(P2, (n, 0, 0)), effective=True), lambda n: projective_h0(2, n))
    _check_univariate(poincare_series(lambda n: h0_toric(P2, (Fraction(n, 2), 0, 0))), half_triangle_count)
    # simplicial cones inside one chamber each
    for gens in ([(1, 2), (0, 1)], [(2, 1), (1, 0)], [(1, 1), (3, 1)], [(1, 3), (1, 2)]):
        S = SimplicialCone(gens)
        R = cone_series(S, lib)
        _check_multivariate(R, f2_naive, lambda e, S=S: S.contains(e))
    # the effective cone of F2 split along the nef wall
    cones = [RationalCone([[1, 0], [1, 2]]), RationalCone([[1, 2], [0, 1]])]
    _check_multivariate(inclusion_exclusion(cones, lib), f2_naive)
    # chamber reduction
    S2 = surface_lattice_from_fan(F, group)
    R = chamber_reduced_series(S2, [0, 0], [[2, 1]], lib)
    _check_univariate(R, lambda n: hirzebruch_h0(2, 2 * n, n))
    for a, D, bigs in [(2, (0, 0), [(1, 2), (1, 3)]), (2, (0, 0), [(2, 1), (1, 3)]), (1, (1, 0), [(2, 1), (1, 3)])]:
        Fa = hirzebruch_fan(a)
        ga = divisor_class_group(Fa, [1, 0])
        R = chamber_reduced_series(surface_lattice_from_fan(Fa, ga), D, bigs, ToricH0Oracle(Fa, ga))

        def h(m, a=a, D=D, bigs=bigs):
            x = D[0] + sum(k * b[0] for k, b in zip(m, bigs))
            y = D[1] + sum(k * b[1] for k, b in zip(m, bigs))
            return hirzebruch_h0(a, x, y)

        _check_multivariate(R, h)
    assert time.perf_counter() - start < 120


def _random_effective_toric(rng, F):
    while True:
        a = [rng.randint(0, 3) for _ in F.rays]
        if any(a):
            return a


@pytest.mark.acceptance(6, "quadratic quasi-polynomials: constant a, b for 20 effective divisors; half triangle")
def test_criterion_6_quasi_polynomials():
    rng = random.Random(SEED)
    fans = [projective_space_fan(2), hirzebruch_fan(1), hirzebruch_fan(2), hirzebruch_fan(3),
            parse_fan_with_group(FIX / "p1xp1_fan.json")[0]]
    for k in range(20):
        F = fans[k % len(fans)]
        a = _random_effective_toric(rng, F)
        values = [lattice_points_in_polytope(F.rays, [n * x for x in a], radius=4 * n * sum(a) + 2) for n in range(30)]
        assert values == [h0_toric(F, [n * x for x in a]) for n in range(30)]
        q = quasi_poly_fit(values, 6)
        assert len({row[2] for row in q.table}) == 1, (F, a, q)
        assert len({row[1] for row in q.table}) == 1, (F, a, q)
    fixture = json.loads((FIX / "half_triangle.json").read_text())
    F, _ = parse_fan_with_group(FIX / fixture["fan"])
    D = [Fraction(x) for x in fixture["divisor"]]
    values = [h0_toric(F, [n * x for x in D]) for n in range(40)]
    assert values == [half_triangle_count(n) for n in range(40)]
    q = quasi_poly_fit(values, 6)
    assert q.period == 2
    (c0, b0, a0), (c1, b1, a1) = q.table
    assert a0 == a1 == Fraction(1, 8)
    assert (b0, c0) == (Fraction(3, 4), 1)
    assert (b1, c1) == (Fraction(1, 2), Fraction(3, 8))


@pytest.mark.acceptance(7, "fixed parts of n(2E+f) on F2 approach N = 3/2 E within 2/n; chain monotone")
def test_criterion_7_fixed_part_bridge():
    F, group, _ = _f2_oracle()
    S = surface_lattice_from_fan(F, group)
    N = zariski_decompose(S, [2, 1]).N
    assert N == RatVector([Fraction(3, 2), 0])
    target = [Fraction(0)] * 4
    target[1] = N[0]  # ray 1 is the negative section E
    for n in range(1, 61):
        fixed = fixed_part_toric(F, group.lift([2 * n, n])).coeffs
        assert max(abs(c / n - t) for c, t in zip(fixed, target)) <= Fraction(2, n)
    for base in (1, 3):
        prev = None
        n = base
        while n <= 60:
            cur = [c / n for c in fixed_part_toric(F, group.lift([2 * n, n])).coeffs]
            if prev is not None:
                assert all(x <= y for x, y in zip(cur, prev))
            prev, n = cur, 2 * n


@pytest.mark.acceptance(8, "headline finite-generation statements: covered through suites 3-7")
def test_criterion_8_headline_statements_covered():
    """The general statements are not checkable on a desk; their constructive
    ingredients are, and they are exercised by criteria 3 to 7."""
    from conftest import ACCEPTANCE_RESULTS

    missing = [k for k in range(3, 8) if k not in ACCEPTANCE_RESULTS]
    if missing:
        pytest.skip(f"criteria {missing} were not run in this session")
    assert all(ACCEPTANCE_RESULTS[k][0] == "PASS" for k in range(3, 8))
