from itertools import product

import pytest

from zariski_series.series import (
    SeriesError,
    TableOracle,
    chamber_reduced_series,
    chamber_reduction,
    coefficient_list,
    expand,
    poincare_series,
)
from zariski_series.toric import (
    ToricH0Oracle,
    divisor_class_group,
    hirzebruch_fan,
    projective_space_fan,
    surface_lattice_from_fan,
)
from catalogues import F2
from oracles import hirzebruch_h0, projective_h0


def hirzebruch_setup(a):
    F = hirzebruch_fan(a)
    group = divisor_class_group(F, [1, 0])  # class coordinates (E, f)
    return surface_lattice_from_fan(F, group), ToricH0Oracle(F, group)


def check_against_lattice_counts(R, a, D, bigs, bound):
    table = expand(R, bound)
    for m in product(range(bound + 1), repeat=len(bigs)):
        if sum(m) > bound:
            continue
        x = D[0] + sum(k * b[0] for k, b in zip(m, bigs))
        y = D[1] + sum(k * b[1] for k, b in zip(m, bigs))
        assert table.get(m, 0) == hirzebruch_h0(a, x, y), m


def test_plane_hyperplane():
    F = projective_space_fan(2)
    group = divisor_class_group(F)
    S = surface_lattice_from_fan(F, group)
    R = chamber_reduced_series(S, [0], [[1]], ToricH0Oracle(F, group))
    assert R.to_string() == "(1) / ((1 - t)^3)"
    assert coefficient_list(R, 20) == [projective_h0(2, n) for n in range(21)]


def test_f2_single_big():
    S, h = hirzebruch_setup(2)
    R = chamber_reduced_series(S, [0, 0], [[2, 1]], h)
    assert coefficient_list(R, 40) == [hirzebruch_h0(2, 2 * n, n) for n in range(41)]
    assert R.to_string() == "(1) / ((1 - t)^2*(1 - t^2))"
    assert R.equals_as_function(poincare_series(lambda n: h((2 * n, n)), effective=True))


def test_f2_nef_pair():
    S, h = hirzebruch_setup(2)
    bigs = [[1, 2], [1, 3]]
    rep = chamber_reduction(S, [0, 0], bigs, h)
    assert [sorted(c.gamma) for c in rep.chambers] == [[]]
    check_against_lattice_counts(rep.series, 2, (0, 0), bigs, 15)


@pytest.mark.parametrize(
    "a,D,bigs",
    [
        (1, (0, 0), [(2, 1), (1, 3)]),
        (2, (1, 0), [(2, 1), (1, 3)]),
        (2, (0, 1), [(1, 3), (2, 1)]),
        (3, (0, 0), [(2, 1), (1, 3)]),
    ],
)
def test_two_chamber_cases(a, D, bigs):
    S, h = hirzebruch_setup(a)
    rep = chamber_reduction(S, D, bigs, h)
    assert len(rep.chambers) == 2
    assert rep.shifts and all(rec.shift >= 0 for rec in rep.shifts)
    check_against_lattice_counts(rep.series, a, D, bigs, 12)


def test_zero_big_contributes_geometric_factor():
    S, h = hirzebruch_setup(1)
    with_zero = chamber_reduced_series(S, [0, 0], [[2, 1], [0, 0]], h)
    without = chamber_reduced_series(S, [0, 0], [[2, 1]], h)
    table = expand(with_zero, 10)
    base = coefficient_list(without, 10)
    for (m1, m2), c in table.items():
        assert c == base[m1]
    assert all(table.get((m1, m2), 0) == base[m1] for m1 in range(11) for m2 in range(11 - m1))


def test_non_big_rejected_or_window_certified():
    S, h = hirzebruch_setup(2)
    with pytest.raises(SeriesError):
        chamber_reduced_series(S, [0, 0], [[1, 0]], h)
    rep = chamber_reduction(S, [0, 0], [[0, 1], [1, 2]], h, allow_non_big=True)
    assert rep.series.certificate == "window-certified"
    check_against_lattice_counts(rep.series, 2, (0, 0), [(0, 1), (1, 2)], 10)


def test_table_oracle_input():
    S, h = hirzebruch_setup(2)
    table = TableOracle({(x, y): h((x, y)) for x in range(60) for y in range(60)})
    R = chamber_reduced_series(F2, [0, 0], [[1, 2]], table)
    assert coefficient_list(R, 25) == [hirzebruch_h0(2, n, 2 * n) for n in range(26)]


def test_rejects_non_integral():
    S, h = hirzebruch_setup(2)
    with pytest.raises(SeriesError):
        chamber_reduced_series(S, [0, 0], [[1, 0.5]], h)
    with pytest.raises(SeriesError):
        chamber_reduced_series(S, [0, 0], [], h)
