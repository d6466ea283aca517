"""Multi-variable series ``sum_m h0(D + sum m_i D_i) t^m`` through Zariski chambers.

The orthant of exponents is covered by the preimages of the Zariski chambers
of ``cone(D_1, ..., D_l)``.  Over a simplex of a triangulation of one such
preimage, the negative parts are additive, so after scaling the generators to
clear denominators the dimension function on each coset can be evaluated
through nef parts.  Low-index strips where additivity has not started are
evaluated directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..cones import Chamber, RationalCone, SimplicialCone, zariski_chambers
from ..exact import RatVector, denominator_lcm, lcm
from ..surface import SurfaceLattice
from ..zariski import ZariskiError, is_big, zariski_decompose
from .poly import MultiPoly, RationalSeries, SeriesError, default_variables
from .rationalize import H0Oracle, cone_series, inclusion_exclusion, _embed


@dataclass
class ShiftRecord:
    generators: tuple  # scaled simplex generators in exponent space
    scale: int
    coset: tuple
    shift: int


@dataclass
class ChamberReduction:
    series: RationalSeries
    chambers: list[Chamber] = field(default_factory=list)
    pulled_cones: list[RationalCone] = field(default_factory=list)
    shifts: list[ShiftRecord] = field(default_factory=list)


def _ints(v: RatVector) -> tuple[int, ...]:
    if not v.is_integral():
        raise SeriesError(f"divisor {tuple(v)} is not integral")
    return v.as_ints()


def chamber_reduction(
    S: SurfaceLattice,
    D: Sequence,
    bigs: Sequence[Sequence],
    h0: H0Oracle,
    *,
    periods: Iterable[int] | None = None,
    degree: int = 2,
    window: int | None = None,
    max_shift: int = 64,
    allow_non_big: bool = False,
    variables: Sequence[str] = (),
) -> ChamberReduction:
    """Chamber decomposition, triangulation and per-coset evaluation, with a log.

    Zero entries of ``bigs`` contribute a factor ``1 / (1 - t_i)``.  Nonzero
    entries must be big; with ``allow_non_big`` the orthant is rationalized
    directly instead and the output is labelled window-certified.
    """
    D = S.divisor(D)
    _ints(D)
    bigs = [S.divisor(b) for b in bigs]
    for b in bigs:
        _ints(b)
    l = len(bigs)
    if l == 0:
        raise SeriesError("at least one divisor D_i is required")
    variables = tuple(variables) or default_variables(l)
    periods = list(periods) if periods is not None else None
    opts = dict(periods=periods, degree=degree, window=window)

    def h_at(m) -> int:
        div = D + sum((bigs[i] * m[i] for i in range(l)), RatVector.zero(S.rank))
        return h0(_ints(div))

    nonbig = [i for i, b in enumerate(bigs) if not b.is_zero() and not is_big(S, b)]
    if nonbig:
        if not allow_non_big:
            raise SeriesError(f"D_{nonbig[0] + 1} is not big; chamber reduction needs big divisors")
        orthant = SimplicialCone([[int(i == j) for j in range(l)] for i in range(l)], l)
        R = cone_series(orthant, h_at, variables=variables, **opts)
        return ChamberReduction(R.with_certificate("window-certified"))

    nz = [i for i, b in enumerate(bigs) if not b.is_zero()]
    zero = [i for i in range(l) if i not in nz]
    report = ChamberReduction(RationalSeries.constant(0, l, variables))
    k = len(nz)
    if k == 0:
        core = RationalSeries.constant(h0(_ints(D)), 0)
    else:
        phi = [bigs[i] for i in nz]

        def image(m) -> RatVector:
            return sum((phi[i] * m[i] for i in range(k)), RatVector.zero(S.rank))

        W = RationalCone(phi, S.rank)
        chambers = zariski_chambers(S, W)
        report.chambers = chambers
        units = [[int(i == j) for j in range(k)] for i in range(k)]
        pulled = []
        for ch in chambers:
            ineqs = units + [[f.dot(p) for p in phi] for f in ch.cone.facets]
            eqs = [[e.dot(p) for p in phi] for e in ch.cone.equations]
            pulled.append(RationalCone.from_inequalities(ineqs, k, eqs))
        report.pulled_cones = pulled

        def simplex_series(Sx: SimplicialCone) -> RationalSeries:
            gens = [g.as_ints() for g in Sx.generators]
            if not gens:
                return RationalSeries.constant(h0(_ints(D)), k)
            try:
                return _simplex_series(S, D, gens, image, h0, report, max_shift, opts, k)
            except (SeriesError, ZariskiError) as exc:
                raise SeriesError(f"simplex {gens}: {exc}") from exc

        core = inclusion_exclusion(pulled, simplex_series=simplex_series, variables=default_variables(k))
    R = _embed(core, nz, l) if k < l else core
    if zero:
        R = R * RationalSeries.geometric([(tuple(int(i == j) for j in range(l)), 1) for i in zero], l)
    report.series = R.reduced().with_variables(variables).with_certificate(None)
    return report


def _simplex_series(S, D, gens, image, h0, report, max_shift, opts, k) -> RationalSeries:
    pairs = [zariski_decompose(S, image(g)) for g in gens]
    s = 1
    for z in pairs:
        s = lcm(s, denominator_lcm(list(z.P) + list(z.N)))
    scaled = [tuple(s * x for x in g) for g in gens]
    Ds = [image(g) * s for g in gens]
    Ps = [z.P * s for z in pairs]
    sumD = sum(Ds, RatVector.zero(S.rank))
    sumP = sum(Ps, RatVector.zero(S.rank))
    sumN = sum((z.N * s for z in pairs), RatVector.zero(S.rank))
    r = len(gens)

    def coset_functions(E):
        B = D + image(E)
        for n in range(max_shift + 1):
            A = B + sumD * n
            try:
                zA = zariski_decompose(S, A)
            except ZariskiError:
                continue
            if S.pair(zA.P + sumP, zA.N + sumN) == 0:
                break
        else:
            raise SeriesError(f"no compatible shift up to {max_shift} for coset {tuple(E)}")
        report.shifts.append(ShiftRecord(tuple(scaled), s, tuple(E), n))

        def g(m, B=B, A=A, n=n):
            if min(m) < n:
                div = B + sum((Ds[j] * m[j] for j in range(r)), RatVector.zero(S.rank))
            else:
                div = A + sum((Ps[j] * (m[j] - n) for j in range(r)), RatVector.zero(S.rank))
            return h0(_ints(div))

        return g, n

    return cone_series(
        SimplicialCone(scaled, k), coset_functions=coset_functions, variables=default_variables(k), **opts
    )


def chamber_reduced_series(S: SurfaceLattice, D: Sequence, bigs: Sequence[Sequence], h0: H0Oracle, **kwargs) -> RationalSeries:
    """``sum_{m in N^l} h0(D + sum m_i D_i) t^m`` as a reduced rational function."""
    return chamber_reduction(S, D, bigs, h0, **kwargs).series
