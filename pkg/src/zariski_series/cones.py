"""Rational polyhedral cones.

Cones carry both descriptions: generators and facet inequalities (plus the
linear equations cutting out their span).  Conversion in either direction is
the double description method with the algebraic adjacency test, run in exact
arithmetic; dimensions here are small enough that nothing smarter is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exact import RatMatrix, RatVector, is_negative_definite
from .surface import SurfaceLattice
from .zariski import negative_part_on, zariski_decompose


class ConeError(ValueError):
    code = "cone"


class NotInConeError(ConeError):
    code = "not-in-cone"


class GammaNotNegativeDefiniteError(ConeError):
    code = "gamma-not-negative-definite"


def _rank(vectors: Sequence[Sequence], d: int) -> int:
    return RatMatrix(vectors, d).rank() if vectors else 0


def extreme_rays(inequalities: Sequence[Sequence], d: int) -> list[RatVector]:
    """Extreme rays of the pointed cone ``{x : a.x >= 0 for all a}`` in R^d.

    Raises ConeError if the cone has a nontrivial lineality space.
    """
    rows = [RatVector(a) for a in inequalities if not RatVector(a).is_zero()]
    if _rank(rows, d) < d:
        raise ConeError("cone is not pointed")
    basis: list[RatVector] = []
    rest = []
    for a in rows:
        if len(basis) < d and _rank(basis + [a], d) > len(basis):
            basis.append(a)
        else:
            rest.append(a)
    inv = RatMatrix(basis, d).inverse()
    rays = [inv.column(j) for j in range(d)]
    processed = list(basis)
    for a in rest:
        vals = [a.dot(r) for r in rays]
        plus = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        minus = [r for r, v in zip(rays, vals) if v < 0]
        new = plus + zero
        if plus and minus:
            tight = {id(r): frozenset(i for i, b in enumerate(processed) if b.dot(r) == 0) for r in rays}
            for p in plus:
                ap = a.dot(p)
                for n in minus:
                    common = tight[id(p)] & tight[id(n)]
                    if len(common) < d - 2:
                        continue
                    if _rank([processed[i] for i in common], d) != d - 2:
                        continue
                    new.append(n * ap - p * a.dot(n))
        rays = [r.primitive() for r in new]
        processed.append(a)
    uniq = sorted(set(r.primitive() for r in rays))
    return uniq


def _span_basis(vectors: Sequence[RatVector], d: int) -> list[RatVector]:
    if not vectors:
        return []
    m = RatMatrix(vectors, d)
    # row space basis = nullspace of the nullspace
    null = m.nullspace()
    if not null:
        return [RatVector.unit(d, i) for i in range(d)]
    return RatMatrix(null, d).nullspace()


class RationalCone:
    """Finitely generated rational polyhedral cone in R^d."""

    def __init__(self, generators: Iterable[Sequence], dim: int | None = None):
        gens = [RatVector(g) for g in generators]
        if dim is None:
            if not gens:
                raise ConeError("ambient dimension needed for the zero cone")
            dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise ConeError("generators of mixed dimension")
        gens = [g if g.is_integral() else g.primitive() for g in gens if not g.is_zero()]
        self.ambient_dim = dim
        self.generators: tuple[RatVector, ...] = tuple(gens)
        self._compute_facets()
        self._verify()

    def _compute_facets(self):
        d = self.ambient_dim
        gens = list(self.generators)
        self.dim = _rank(gens, d)
        if not gens:
            self.equations = tuple(RatVector.unit(d, i) for i in range(d))
            self.facets: tuple[RatVector, ...] = ()
            return
        self.equations = tuple(v.primitive() for v in RatMatrix(gens, d).nullspace())
        span = _span_basis(gens, d)
        k = len(span)
        rows = [[g.dot(y) for y in span] for g in gens]
        if _rank(rows, k) < k:
            raise ConeError("internal: dual description not pointed")
        dual_rays = extreme_rays(rows, k)
        facets = []
        for c in dual_rays:
            a = sum((y * ci for y, ci in zip(span, c)), RatVector.zero(d))
            facets.append(a.primitive())
        self.facets = tuple(sorted(set(facets)))

    def _verify(self):
        for g in self.generators:
            if not self.contains(g):
                raise ConeError("double description mismatch: generator violates a facet")
        for f in self.facets:
            tight = [g for g in self.generators if f.dot(g) == 0]
            if _rank(tight, self.ambient_dim) != self.dim - 1:
                raise ConeError("double description mismatch: facet not supported by generators")

    @classmethod
    def from_inequalities(
        cls, inequalities: Sequence[Sequence], dim: int, equations: Sequence[Sequence] = ()
    ) -> "RationalCone":
        rows = [RatVector(a) for a in inequalities]
        for e in equations:
            e = RatVector(e)
            rows += [e, -e]
        return cls(extreme_rays(rows, dim), dim)

    @property
    def is_pointed(self) -> bool:
        return _rank(list(self.facets) + list(self.equations), self.ambient_dim) == self.ambient_dim

    @property
    def rays(self) -> tuple[RatVector, ...]:
        """Primitive extreme rays (pointed cones only)."""
        d = self.ambient_dim
        out = set()
        for g in self.generators:
            tight = [f for f in self.facets if f.dot(g) == 0] + list(self.equations)
            if _rank(tight, d) == d - 1:
                out.add(g.primitive())
        return tuple(sorted(out))

    def contains(self, p: Sequence) -> bool:
        p = RatVector(p)
        return all(e.dot(p) == 0 for e in self.equations) and all(f.dot(p) >= 0 for f in self.facets)

    def in_relative_interior(self, p: Sequence) -> bool:
        p = RatVector(p)
        return all(e.dot(p) == 0 for e in self.equations) and all(f.dot(p) > 0 for f in self.facets)

    def active_facets(self, p: Sequence) -> frozenset[int]:
        if not self.contains(p):
            raise NotInConeError(f"{tuple(p)} is not in the cone")
        p = RatVector(p)
        return frozenset(i for i, f in enumerate(self.facets) if f.dot(p) == 0)

    def interior_point(self) -> RatVector:
        return sum(self.generators, RatVector.zero(self.ambient_dim))

    def intersection(self, other: "RationalCone") -> "RationalCone":
        return RationalCone.from_inequalities(
            list(self.facets) + list(other.facets), self.ambient_dim, list(self.equations) + list(other.equations)
        )

    def face(self, facet_indices: Iterable[int]) -> "RationalCone":
        normals = [self.facets[i] for i in facet_indices]
        gens = [g for g in self.generators if all(f.dot(g) == 0 for f in normals)]
        return RationalCone(gens, self.ambient_dim)

    def faces(self) -> list["RationalCone"]:
        """All faces, the cone itself and the apex included, by decreasing dimension."""
        seen = {}
        n = len(self.facets)
        for k in range(n + 1):
            for idx in combinations(range(n), k):
                f = self.face(idx)
                key = frozenset(g.primitive() for g in f.generators)
                seen.setdefault(key, f)
        return sorted(seen.values(), key=lambda c: (-c.dim, sorted(c.rays)))

    def __eq__(self, other):
        if not isinstance(other, RationalCone):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and all(other.contains(g) for g in self.generators)
            and all(self.contains(g) for g in other.generators)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.dim, self.facets))

    def __repr__(self):
        gens = ", ".join(str(tuple(str(a) for a in g)).replace("'", "") for g in self.generators)
        return f"{type(self).__name__}([{gens}])"


class SimplicialCone(RationalCone):
    """Cone on linearly independent integral generators (order kept as given)."""

    def __init__(self, generators: Iterable[Sequence], dim: int | None = None):
        gens = [RatVector(g) for g in generators]
        if any(not g.is_integral() for g in gens):
            raise ConeError("simplicial cone generators must be integral")
        if any(g.is_zero() for g in gens):
            raise ConeError("zero generator")
        super().__init__(gens, dim)
        if self.dim != len(self.generators):
            raise ConeError("generators of a simplicial cone must be linearly independent")

    def coordinates(self, p: Sequence) -> RatVector:
        """The unique lambda with ``p = sum lambda_i v_i`` (p must lie in the span)."""
        from .exact import solve_linear

        if not self.generators:
            if not RatVector(p).is_zero():
                raise NotInConeError("only the origin lies in the zero cone")
            return RatVector()
        return solve_linear(RatMatrix.from_columns(self.generators, self.ambient_dim), p)

    def fundamental_parallelepiped(self) -> list[tuple[int, ...]]:
        return fundamental_parallelepiped(self)


def minimal_face(V: RationalCone, p: Sequence) -> RationalCone:
    """Smallest face of V containing p."""
    return V.face(V.active_facets(p))


def is_more_general(V: RationalCone, p: Sequence, q: Sequence) -> bool:
    """``p`` is more general than ``q`` in V: the minimal face of p contains that of q."""
    return V.active_facets(p) <= V.active_facets(q)


def _normal_in_span(tau: Sequence[RatVector], equations: Sequence[RatVector], d: int) -> RatVector:
    null = RatMatrix(list(tau) + list(equations), d).nullspace() if (tau or equations) else []
    if len(null) != 1:
        raise ConeError("internal: facet normal is not unique")
    return null[0]


def triangulate(V: RationalCone) -> list[SimplicialCone]:
    """Placing triangulation using V's generators in the order given.

    A generator already inside the cone spanned by the earlier ones is not
    used.  Every returned cone is full-dimensional in the span of V and any
    two of them meet in a common face.
    """
    if not V.generators:
        return []
    if not V.is_pointed:
        raise ConeError("triangulation needs a pointed cone")
    d = V.ambient_dim
    gens = [g.as_ints() if g.is_integral() else g.primitive().as_ints() for g in V.generators]
    gens = [RatVector(g) for g in gens]
    used: list[int] = []
    simplices: list[tuple[int, ...]] = []
    for i, g in enumerate(gens):
        if not used:
            used, simplices = [i], [(i,)]
            continue
        current = [gens[j] for j in used]
        if _rank(current + [g], d) > len(simplices[0]):
            simplices = [s + (i,) for s in simplices]
            used.append(i)
            continue
        cone = RationalCone(current, d)
        if cone.contains(g):
            continue
        counts: dict[frozenset, int] = {}
        for s in simplices:
            for j in s:
                tau = frozenset(s) - {j}
                counts[tau] = counts.get(tau, 0) + 1
        new = []
        for s in simplices:
            for j in s:
                tau = frozenset(s) - {j}
                if counts[tau] != 1:
                    continue
                n = _normal_in_span([gens[k] for k in sorted(tau)], cone.equations, d)
                if n.dot(gens[j]) < 0:
                    n = -n
                if n.dot(g) < 0:
                    new.append(tuple(sorted(tau)) + (i,))
        simplices += new
        used.append(i)
    return [SimplicialCone([gens[j] for j in s], d) for s in simplices]


def fundamental_parallelepiped(S: SimplicialCone) -> list[tuple[int, ...]]:
    """Integer points ``sum lambda_i v_i`` with ``0 <= lambda_i < 1``, sorted."""
    d = S.ambient_dim
    gens = [g.as_ints() for g in S.generators]
    r = len(gens)
    if r == 0:
        return [tuple([0] * d)]
    # r pivot coordinates on which the generators are independent
    _, pivots = _pivot_columns(gens, d)
    M = [[gens[i][c] for c in pivots] for i in range(r)]  # row i = v_i restricted
    Mt = RatMatrix(M).transpose()
    det = Mt.det()
    adj = Mt.inverse()
    den = int(abs(det))
    adj_int = np.array([[int(a * den) for a in row] for row in adj], dtype=object)
    ranges = []
    for c in pivots:
        lo = sum(min(0, g[c]) for g in gens)
        hi = sum(max(0, g[c]) for g in gens)
        ranges.append(np.arange(lo, hi + 1, dtype=object))
    grid = np.array(np.meshgrid(*ranges, indexing="ij"), dtype=object).reshape(r, -1)
    lam_num = adj_int.dot(grid)  # lambda * den
    ok = np.all((lam_num >= 0) & (lam_num < den), axis=0)
    lam_num = lam_num[:, ok]
    V = np.array(gens, dtype=object).T  # d x r
    pts_num = V.dot(lam_num)
    integral = np.all(pts_num % den == 0, axis=0)
    pts = (pts_num[:, integral] // den).T
    return sorted(tuple(int(x) for x in p) for p in pts)


def _pivot_columns(rows: Sequence[Sequence[int]], d: int) -> tuple[int, list[int]]:
    from .exact import _rref

    rref, pivots = _rref([RatVector(r) for r in rows], d)
    return len(pivots), pivots


def sigma_projection(S: SurfaceLattice, gamma: Iterable[int], D: Sequence) -> tuple[RatVector, RatVector]:
    """Split D = F1 + F2 with F1 in the span of gamma and F2 orthogonal to gamma."""
    gamma = sorted(gamma)
    D = S.divisor(D)
    if gamma and not is_negative_definite(S.gram(gamma)):
        raise GammaNotNegativeDefiniteError(f"curves {gamma} do not have a negative definite intersection matrix")
    F1 = S.combination(negative_part_on(S, D, gamma))
    return F1, D - F1


@dataclass(frozen=True)
class Chamber:
    gamma: frozenset
    cone: RationalCone

    def contains(self, p: Sequence) -> bool:
        return self.cone.contains(p)


def _gamma_functionals(S: SurfaceLattice, gamma: Sequence[int], G: Sequence[int]):
    """Linear functionals on divisors whose nonnegativity cuts out sigma^{-1}(S_gamma x T_G)."""
    form = S.form
    dual = [form @ S.curves[k] for k in gamma]  # D -> D.C_k
    coeff_rows: list[RatVector] = []
    if gamma:
        ginv = S.gram(gamma).inverse()
        for j in range(len(gamma)):
            coeff_rows.append(sum((dual[k] * ginv[j, k] for k in range(len(gamma))), RatVector.zero(S.rank)))
    orth_rows = []
    for c in G:
        row = form @ S.curves[c]
        for j, k in enumerate(gamma):
            row = row - coeff_rows[j] * S.pair(S.curves[k], S.curves[c])
        orth_rows.append(row)
    return coeff_rows, orth_rows


def candidate_negative_curves(S: SurfaceLattice, W: RationalCone) -> list[int]:
    """Curves C with ``P . C = 0`` for the nef part P of some generator of W."""
    G = set()
    for g in W.generators:
        z = zariski_decompose(S, g)
        G |= {i for i, x in enumerate(S.curve_pairings(z.P)) if x == 0}
        G |= z.support
    return sorted(G)


def zariski_chambers(S: SurfaceLattice, W: RationalCone) -> list[Chamber]:
    """Closures of the loci in W where the negative part has support exactly gamma."""
    G = candidate_negative_curves(S, W)
    chambers = []
    for k in range(len(G) + 1):
        for gamma in combinations(G, k):
            if not S.is_negative_definite_set(gamma):
                continue
            coeff_rows, orth_rows = _gamma_functionals(S, gamma, G)
            cone = RationalCone.from_inequalities(
                list(W.facets) + coeff_rows + orth_rows, S.rank, W.equations
            )
            if not cone.generators and W.generators:
                continue
            p = cone.interior_point()
            if zariski_decompose(S, p).support != frozenset(gamma):
                continue
            chambers.append(Chamber(frozenset(gamma), cone))
    return chambers


def chamber_of(chambers: Sequence[Chamber], p: Sequence) -> list[Chamber]:
    return [c for c in chambers if c.contains(p)]
