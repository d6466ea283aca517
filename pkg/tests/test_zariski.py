import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski_series.exact import RatVector
from zariski_series.toric import ToricFixedPartOracle, divisor_class_group, hirzebruch_fan, projective_space_fan
from zariski_series.zariski import (
    InconsistentCatalogueError,
    NotPseudoEffectiveError,
    asymptotic_fixed_part,
    axioms,
    compatible,
    all_compatible,
    fixed_part_lower_bound_witness,
    is_big,
    zariski_decompose,
)
from catalogues import F1, F2, P1XP1, hirzebruch, random_catalogue, random_effective
from oracles import brute_zariski

pos = st.fractions(min_value=0, max_value=10, max_denominator=5)


def check_against_brute(S, D):
    z = zariski_decompose(S, D)
    assert all(axioms(S, D, z).values()), axioms(S, D, z)
    found = brute_zariski([list(r) for r in S.form], [list(c) for c in S.curves], list(D), max_support=S.rank - 1)
    assert len(found) == 1
    P, coeffs = found[0]
    assert list(z.P) == P and z.coefficients == coeffs
    return z


def test_f1_example():
    z = zariski_decompose(F1, [1, 2])
    assert z.P == RatVector([1, 0]) and z.N == RatVector([0, 2])


def test_f2_example():
    z = zariski_decompose(F2, [2, 1])
    assert z.P == RatVector([Fraction(1, 2), 1])
    assert z.N == RatVector([Fraction(3, 2), 0])
    assert z.support == {0}


@pytest.mark.parametrize("D", [[0, 0], [1, 2], [1, 3], [0, 1]])
def test_nef_is_its_own_positive_part(D):
    z = zariski_decompose(F2, D)
    assert z.P == RatVector(D) and z.N.is_zero() and not z.support


def test_errors():
    with pytest.raises(NotPseudoEffectiveError):
        zariski_decompose(F2, [-1, 0])
    with pytest.raises(NotPseudoEffectiveError):
        zariski_decompose(F2, [0, -1])
    assert NotPseudoEffectiveError.code == "not-pseudo-effective"
    assert InconsistentCatalogueError.code == "inconsistent-catalogue"


def test_compatible_examples():
    assert compatible(F2, [2, 1], [2, 1])
    assert not compatible(F2, [1, 3], [2, 1])
    assert compatible(F2, [2, 1], [4, 2])
    assert all_compatible(F2, [[2, 1], [4, 2], [3, 1]])


def test_is_big():
    assert is_big(F2, [2, 1])
    assert not is_big(F2, [1, 0])
    assert not is_big(F2, [0, 1])
    assert not is_big(F2, [-1, 0])


@pytest.mark.parametrize("S", [F1, F2, P1XP1, hirzebruch(3)], ids=["F1", "F2", "P1xP1", "F3"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_axioms_and_uniqueness_on_named_surfaces(S, data):
    coeffs = data.draw(st.lists(pos, min_size=len(S.curves), max_size=len(S.curves)))
    D = S.combination(dict(enumerate(coeffs)))
    check_against_brute(S, D)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_catalogues(seed):
    rng = random.Random(seed)
    S = random_catalogue(rng)
    check_against_brute(S, random_effective(rng, S))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), pos, pos)
def test_linearity_on_shared_support(seed, s, t):
    rng = random.Random(seed)
    S = random_catalogue(rng)
    D1, D2 = random_effective(rng, S), random_effective(rng, S)
    z1, z2 = zariski_decompose(S, D1), zariski_decompose(S, D2)
    if z1.support != z2.support or s + t == 0:
        return
    z = zariski_decompose(S, D1 * s + D2 * t)
    assert z.P == z1.P * s + z2.P * t
    assert z.N == z1.N * s + z2.N * t


def _perturbation_holds(S, D, Dp):
    z, zp = zariski_decompose(S, D), zariski_decompose(S, Dp)
    return S.pair(z.P, zp.N) == 0 and S.pair(zp.P, z.N) == 0 and z.support <= zp.support


@pytest.mark.parametrize("S,D", [(F2, [2, 1]), (F2, [3, 4]), (F1, [1, 2]), (F1, [3, 1])])
def test_perturbation(S, D):
    """Nearby divisors have mutually orthogonal nef and negative parts."""
    assert is_big(S, D)
    rng = random.Random(7)
    width = Fraction(1)
    # shrink until a sample of the box is clean, then test a fresh sample
    for _ in range(20):
        pts = [RatVector(D) + RatVector([Fraction(rng.randint(-8, 8), 8) * width for _ in D]) for _ in range(30)]
        if all(_perturbation_holds(S, D, p) for p in pts):
            break
        width /= 2
    else:
        pytest.fail("no box found")
    for _ in range(50):
        p = RatVector(D) + RatVector([Fraction(rng.randint(-64, 64), 64) * width for _ in D])
        assert _perturbation_holds(S, D, p)


def test_asymptotic_fixed_part_examples():
    P2 = projective_space_fan(2)
    oracle = ToricFixedPartOracle(P2, divisor_class_group(P2))
    assert all(v.is_zero() for _, v in asymptotic_fixed_part(oracle, [1], 10))
    F = hirzebruch_fan(2)
    group = divisor_class_group(F, [1, 0])  # basis D_{e2} = E, D_{e1} = f
    orc = ToricFixedPartOracle(F, group)
    for n, v in asymptotic_fixed_part(orc, [1, 0], 12):
        assert v == RatVector(group.lift([1, 0]).coeffs)
    seq = asymptotic_fixed_part(orc, [Fraction(1, 2), 0], 6)
    assert [n for n, _ in seq] == [2, 4, 6]


def test_fixed_part_witness():
    F = hirzebruch_fan(2)
    group = divisor_class_group(F, [1, 0])
    orc = ToricFixedPartOracle(F, group)
    N = zariski_decompose(F2, [2, 1]).N
    limit = [0, Fraction(3, 2), 0, 0]  # N on ray coordinates: (3/2) D_{e2}
    assert group.class_of(limit) == N
    w = fixed_part_lower_bound_witness(orc, [2, 1], [0, 0], limit, 40)
    assert w is not None and 0 <= w <= 40
