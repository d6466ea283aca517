"""Turning dimension functions into rational generating functions.

Every routine here follows the same pattern: guess a denominator, multiply
the sampled coefficient table by it, read off a finite numerator, and demand
that the product stays zero over a verification window past the numerator.
The returned series carries the size of that window in ``certificate``.
"""

from __future__ import annotations

import logging
from itertools import combinations, product
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from ..cones import RationalCone, SimplicialCone, fundamental_parallelepiped, triangulate
from .poly import MultiPoly, RationalSeries, SeriesError, default_variables

log = logging.getLogger(__name__)

H0Oracle = Callable[[tuple], int]


class RationalizationError(SeriesError):
    def __init__(self, message: str, code: str = "not-rational-within-window"):
        super().__init__(message)
        self.code = code


class TableOracle:
    """Dimension oracle backed by a finite table; missing keys raise."""

    def __init__(self, table: Mapping[tuple, int]):
        self.table = {tuple(k): int(v) for k, v in table.items()}

    def __call__(self, key: Sequence[int]) -> int:
        key = tuple(int(x) for x in key)
        try:
            return self.table[key]
        except KeyError:
            raise RationalizationError(f"table oracle has no entry for {key}", "missing-table-entry") from None


def _period_candidates(hint: int | None, max_period: int) -> list[int]:
    out: list[int] = []
    if hint:
        out += [d for d in range(1, hint + 1) if hint % d == 0]
    out += [p for p in range(1, max_period + 1) if p not in out]
    return out


def poincare_series(
    h: Callable[[int], int],
    effective: bool = False,
    r_hint: int | None = None,
    window: int | None = None,
    max_period: int = 12,
    max_samples: int = 4096,
) -> RationalSeries:
    """Rational form of ``sum_n h(n) t^n`` for a degree-2 quasi-polynomial h.

    The denominator is ``(1 - t^r)^3``, or ``(1 - t)^2 (1 - t^r)`` when the
    divisor is known to be effective; r runs over the divisors of ``r_hint``
    first and then upward.  Sample budgets grow in rounds, each round trying
    every shape, so the certified form with the shortest window wins.  The
    result is not reduced.
    """
    cache: dict[int, int] = {}

    def value(n: int) -> int:
        if n not in cache:
            cache[n] = int(h(n))
        return cache[n]

    shapes = []
    for r in _period_candidates(r_hint, max_period):
        if effective:
            shapes.append(((((1,), 2), ((r,), 1)), r))
    for r in _period_candidates(r_hint, max_period):
        shapes.append(((((r,), 3),), r))
    # cheap budgets first across all shapes, so a wrong early shape does not
    # force sampling far out before the right one is tried
    budgets = sorted({min(b, max_samples) for b in (64, 256, 1024, max_samples)})
    for budget in budgets:
        for den, r in shapes:
            R = RationalSeries(MultiPoly.constant(1, 1), den)
            delta = [0] * (sum(v[0] * m for v, m in R.denominator) + 1)
            for e, c in R.denominator_poly().terms.items():
                delta[e[0]] = c
            found = _fit_univariate(value, delta, window, budget)
            if found is not None:
                num, W = found
                return RationalSeries(MultiPoly({(i,): c for i, c in enumerate(num)}, 1), den,
                                      certificate=f"window {W}")
    raise RationalizationError(
        f"no denominator with period <= {max_period} certifies the series within {max_samples} samples"
    )


def _fit_univariate(value, delta, window, max_samples):
    d = len(delta) - 1
    L = 4 * d + 8
    while L <= max_samples:
        vals = [value(n) for n in range(L)]
        num = [sum(delta[k] * vals[n - k] for k in range(min(d, n) + 1)) for n in range(L)]
        K = max((i + 1 for i, c in enumerate(num) if c), default=0)
        W = window if window is not None else 3 * max(K, d)
        if K + W <= L:
            return num[:K], W
        L = max(K + W, 2 * L) if K > L - d else K + W
    return None


def _kernel(p: int, k: int) -> list[tuple[int, int]]:
    """Nonzero coefficients of ``(1 - x^p)^k`` as (offset, coefficient)."""
    from math import comb

    return [(p * j, (-1) ** j * comb(k, j)) for j in range(k + 1)]


def _apply_kernel(arr: np.ndarray, axis: int, kernel) -> np.ndarray:
    out = np.zeros_like(arr)
    n = arr.shape[axis]
    for off, c in kernel:
        if off >= n:
            continue
        src = [slice(None)] * arr.ndim
        dst = [slice(None)] * arr.ndim
        src[axis] = slice(0, n - off)
        dst[axis] = slice(off, n)
        out[tuple(dst)] += c * arr[tuple(src)]
    return out


def rationalize_orthant(
    g: Callable[[tuple], int],
    r: int,
    periods: Iterable[int] | None = None,
    degree: int = 2,
    window: int | None = None,
    max_samples: int = 40000,
    variables: Sequence[str] = (),
) -> RationalSeries:
    """``sum_{m in N^r} g(m) s^m`` over ``prod_i (1 - s_i^p)^(degree+1)``.

    p is taken from ``periods`` (default 1..12): the product of the sampled
    table with the denominator must vanish on a window of width ``window``
    (default three times the numerator extent) past the numerator.  Sample
    budgets grow in rounds and each round tries the periods in order.
    """
    if r == 0:
        return RationalSeries(_const0(int(g(()))))
    cache: dict[tuple, int] = {}

    def value(m):
        if m not in cache:
            cache[m] = int(g(m))
        return cache[m]

    plist = []
    for p in periods if periods is not None else range(1, 13):
        if p not in plist:
            plist.append(p)
    budgets = sorted({min(b, max_samples) for b in (4**r * 64, 4**r * 1024, max_samples)})
    for budget in budgets:
        for p in plist:
            found = _fit_orthant(value, r, p, degree, window, budget)
            if found is not None:
                terms, W = found
                den = tuple(((tuple(p if j == i else 0 for j in range(r)), degree + 1) for i in range(r)))
                return RationalSeries(MultiPoly(terms, r), den, tuple(variables), certificate=f"window {W}")
    raise RationalizationError(
        f"no period among {plist} certifies a {r}-variable series within {max_samples} samples",
        "coset-not-rational-within-window",
    )


def _fit_orthant(value, r, p, degree, window, max_samples):
    kernel = _kernel(p, degree + 1)
    d = p * (degree + 1)
    B = 2 * d + 4
    while B**r <= max_samples:
        arr = np.zeros((B,) * r, dtype=np.int64)
        for m in product(range(B), repeat=r):
            arr[m] = value(m)
        num = arr
        for ax in range(r):
            num = _apply_kernel(num, ax, kernel)
        nz = np.argwhere(num != 0)
        K = int(nz.max()) + 1 if len(nz) else 0
        W = window if window is not None else 3 * max(K, d)
        if K + W <= B:
            return {tuple(int(x) for x in idx): int(num[tuple(idx)]) for idx in nz}, W
        B = K + W if K + W > B else B + d
    return None


def _const0(c: int) -> MultiPoly:
    return MultiPoly.constant(c, 0)


def _embed(R: RationalSeries, positions: Sequence[int], arity: int) -> RationalSeries:
    """Reinterpret a series in ``len(positions)`` variables inside ``arity`` ones."""
    matrix = [[1 if positions[j] == i else 0 for j in range(len(positions))] for i in range(arity)]
    if not positions:
        c = R.numerator.terms.get((), 0)
        return RationalSeries(MultiPoly.constant(c, arity))
    return R.substitute(matrix)


def rationalize_with_chop(
    g: Callable[[tuple], int],
    r: int,
    onset: int,
    periods: Iterable[int] | None = None,
    degree: int = 2,
    window: int | None = None,
) -> RationalSeries:
    """Orthant series split at ``m >= onset`` by inclusion-exclusion.

    The body ``m >= onset`` is rationalized after translating to the origin.
    Each strip fixes the coordinates in a nonempty set I below ``onset`` and
    rationalizes the remaining coordinates directly.
    """
    periods = list(periods) if periods is not None else None
    if onset <= 0 or r == 0:
        return _as_arity(rationalize_orthant(g, r, periods, degree, window), r)
    body = rationalize_orthant(lambda m: g(tuple(x + onset for x in m)), r, periods, degree, window)
    total = body.shift((onset,) * r)
    for k in range(1, r + 1):
        sign = 1 if k % 2 else -1
        for I in combinations(range(r), k):
            J = [j for j in range(r) if j not in I]
            for fixed in product(range(onset), repeat=k):

                def f(mj, I=I, J=J, fixed=fixed):
                    m = [0] * r
                    for i, x in zip(I, fixed):
                        m[i] = x
                    for j, x in zip(J, mj):
                        m[j] = x
                    return g(tuple(m))

                if J:
                    piece = rationalize_orthant(f, len(J), periods, degree, window)
                else:
                    piece = RationalSeries(_const0(int(f(()))))
                e = [0] * r
                for i, x in zip(I, fixed):
                    e[i] = x
                total = total + _embed(piece, J, r).shift(e) * sign
    return total


def _as_arity(R: RationalSeries, r: int) -> RationalSeries:
    return R if R.arity == r else _embed(R, [], r)


def _coset_sum(pieces: list[RationalSeries], arity: int, variables) -> RationalSeries:
    total = RationalSeries(MultiPoly.zero(arity), (), tuple(variables))
    for P in pieces:
        total = total + P
    return total.with_variables(variables) if variables else total


CosetFunctions = Callable[[tuple], tuple[Callable[[tuple], int], int]]


def cone_series(
    S: SimplicialCone,
    h: H0Oracle | None = None,
    *,
    coset_functions: CosetFunctions | None = None,
    periods: Iterable[int] | None = None,
    degree: int = 2,
    window: int | None = None,
    variables: Sequence[str] = (),
) -> RationalSeries:
    """``sum_{p in S cap Z^l} h(p) t^p`` for a simplicial cone S.

    Lattice points are split into cosets ``E + N v`` over the fundamental
    parallelepiped.  ``coset_functions(E)`` may supply a custom evaluator and
    chop-off onset for each coset; otherwise ``h`` is sampled directly.
    """
    l = S.ambient_dim
    gens = [g.as_ints() for g in S.generators]
    r = len(gens)
    variables = tuple(variables) or default_variables(l)
    periods = list(periods) if periods is not None else None
    matrix = [[gens[j][i] for j in range(r)] for i in range(l)]
    pieces = []
    for E in fundamental_parallelepiped(S):
        if coset_functions is not None:
            g, onset = coset_functions(E)
        else:
            if h is None:
                raise SeriesError("cone_series needs h or coset_functions")

            def g(m, E=E):
                return h(tuple(E[i] + sum(m[j] * gens[j][i] for j in range(r)) for i in range(l)))

            onset = 0
        G = rationalize_with_chop(g, r, onset, periods, degree, window)
        if r == 0:
            piece = RationalSeries(MultiPoly.constant(G.numerator.terms.get((), 0), l))
        else:
            piece = G.substitute(matrix)
        pieces.append(piece.shift(E))
    return _coset_sum(pieces, l, variables).reduced().with_variables(variables)


def cone_lattice_series(V: RationalCone, simplex_series: Callable[[SimplicialCone], RationalSeries],
                        variables: Sequence[str] = ()) -> RationalSeries:
    """Series of a pointed cone from the series of the simplices of a triangulation.

    Simplices of the placing triangulation meet in common faces, so the
    alternating sum runs over the distinct vertex-set intersections.
    """
    l = V.ambient_dim
    variables = tuple(variables) or default_variables(l)
    simplices = triangulate(V)
    if not simplices:
        return simplex_series(SimplicialCone([], l)).with_variables(variables)
    vsets = [frozenset(g for g in s.generators) for s in simplices]
    weight: dict[frozenset, int] = {}
    for k in range(1, len(vsets) + 1):
        sign = 1 if k % 2 else -1
        for idx in combinations(range(len(vsets)), k):
            common = frozenset.intersection(*(vsets[i] for i in idx))
            weight[common] = weight.get(common, 0) + sign
    total = RationalSeries(MultiPoly.zero(l), (), variables)
    for common, w in sorted(weight.items(), key=lambda kv: sorted(kv[0])):
        if w == 0:
            continue
        total = total + simplex_series(SimplicialCone(sorted(common), l)) * w
    return total.reduced().with_variables(variables)


def inclusion_exclusion(
    cones: Sequence[RationalCone],
    h: H0Oracle | None = None,
    *,
    simplex_series: Callable[[SimplicialCone], RationalSeries] | None = None,
    variables: Sequence[str] = (),
    **kwargs,
) -> RationalSeries:
    """Series over the lattice points of a union of cones.

    ``sum_{I nonempty} (-1)^(|I|+1) M(cap_{i in I} V_i)``; each intersection
    is computed from the H-representations and evaluated by triangulation.
    """
    if not cones:
        raise SeriesError("inclusion_exclusion needs at least one cone")
    l = cones[0].ambient_dim
    variables = tuple(variables) or default_variables(l)
    if simplex_series is None:
        if h is None:
            raise SeriesError("inclusion_exclusion needs h or simplex_series")
        cache_s: dict = {}

        def simplex_series(S):
            key = frozenset(S.generators)
            if key not in cache_s:
                cache_s[key] = cone_series(S, h, variables=variables, **kwargs)
            return cache_s[key]

    cache: dict = {}

    def series_of(C: RationalCone) -> RationalSeries:
        key = frozenset(C.rays)
        if key not in cache:
            cache[key] = cone_lattice_series(C, simplex_series, variables)
        return cache[key]

    weight: dict[frozenset, list] = {}
    for k in range(1, len(cones) + 1):
        sign = 1 if k % 2 else -1
        for idx in combinations(range(len(cones)), k):
            C = cones[idx[0]]
            for i in idx[1:]:
                C = C.intersection(cones[i])
            key = frozenset(C.rays)
            entry = weight.setdefault(key, [C, 0])
            entry[1] += sign
    total = RationalSeries(MultiPoly.zero(l), (), variables)
    for key in sorted(weight, key=lambda k: sorted(k)):
        C, w = weight[key]
        if w:
            total = total + series_of(C) * w
    return total.reduced().with_variables(variables)
