"""Toric varieties from complete fans.

Sections of a torus-invariant divisor ``D = sum a_rho D_rho`` are counted as
lattice points of ``P_D = {u : <u, v_rho> >= -a_rho}``; rational coefficients
are rounded down first.  The divisor class group is the cokernel of
``m -> (<m, v_rho>)_rho``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import floor
from typing import Sequence

import numpy as np

from .cones import RationalCone
from .exact import RatMatrix, RatVector, int_matrix_inverse, smith_normal_form, solve_linear
from .series.poly import MultiPoly, RationalSeries
from .surface import SurfaceLattice


class ToricError(ValueError):
    """Domain error with a short machine-readable ``code``."""

    def __init__(self, code: str, message: str = ""):
        super().__init__(message or code)
        self.code = code


@dataclass(frozen=True)
class ToricDivisor:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        return ToricDivisor(tuple(a + b for a, b in zip(self.coeffs, _coeffs(other))))

    def __sub__(self, other):
        return ToricDivisor(tuple(a - b for a, b in zip(self.coeffs, _coeffs(other))))

    def __mul__(self, k):
        return ToricDivisor(tuple(a * k for a in self.coeffs))

    __rmul__ = __mul__

    def floor(self) -> tuple[int, ...]:
        return tuple(floor(a) for a in self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)


def _coeffs(D) -> tuple:
    return D.coeffs if isinstance(D, ToricDivisor) else tuple(Fraction(c) for c in D)


class Fan:
    """Fan given by primitive rays and maximal cones (ray index sets)."""

    def __init__(self, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]],
                 ray_names: Sequence[str] = ()):
        rays = [tuple(int(x) for x in r) for r in rays]
        if not rays:
            raise ToricError("invalid-fan", "no rays")
        self.dim = len(rays[0])
        if any(len(r) != self.dim for r in rays):
            raise ToricError("invalid-fan", "rays of mixed dimension")
        if len(set(rays)) != len(rays):
            raise ToricError("invalid-fan", "rays must be distinct")
        for r in rays:
            if RatVector(r).primitive() != RatVector(r):
                raise ToricError("invalid-fan", f"ray {r} is not primitive")
        self.rays = tuple(rays)
        self.max_cones = tuple(tuple(sorted(set(int(i) for i in c))) for c in max_cones)
        if not self.max_cones:
            raise ToricError("invalid-fan", "no maximal cones")
        for c in self.max_cones:
            if any(not 0 <= i < len(rays) for i in c):
                raise ToricError("invalid-fan", f"cone {list(c)} has a ray index out of range")
        names = tuple(ray_names) if ray_names else tuple(f"D{i + 1}" for i in range(len(rays)))
        if len(names) != len(rays):
            raise ToricError("invalid-fan", "one name per ray is required")
        self.ray_names = names
        self._cones = [RationalCone([rays[i] for i in c], self.dim) for c in self.max_cones]
        for c, cone in zip(self.max_cones, self._cones):
            if cone.dim != self.dim:
                raise ToricError("invalid-fan", f"maximal cone {list(c)} is not full-dimensional")
            if not cone.is_pointed:
                raise ToricError("invalid-fan", f"maximal cone {list(c)} is not strongly convex")
            if set(cone.rays) != {RatVector(rays[i]) for i in c}:
                raise ToricError("invalid-fan", f"cone {list(c)} lists a ray that is not extreme")
        for a, b in combinations(range(len(self.max_cones)), 2):
            common = sorted(set(self.max_cones[a]) & set(self.max_cones[b]))
            meet = self._cones[a].intersection(self._cones[b])
            if meet != RationalCone([rays[i] for i in common], self.dim):
                raise ToricError(
                    "invalid-fan", f"cones {list(self.max_cones[a])} and {list(self.max_cones[b])} do not meet in a face"
                )

    def __repr__(self):
        return f"Fan(rays={list(self.rays)}, max_cones={[list(c) for c in self.max_cones]})"

    @cached_property
    def cones(self) -> tuple[frozenset, ...]:
        """Every cone of the fan as a set of ray indices (the apex is the empty set)."""
        index = {RatVector(r): i for i, r in enumerate(self.rays)}
        out = set()
        for cone in self._cones:
            for face in cone.faces():
                out.add(frozenset(index[g.primitive()] for g in face.rays))
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))

    def cones_of_dim(self, k: int) -> list[frozenset]:
        return [c for c in self.cones if _rank_of([self.rays[i] for i in c], self.dim) == k]

    @cached_property
    def is_simplicial(self) -> bool:
        return all(len(c) == self.dim for c in self.max_cones)

    @cached_property
    def is_smooth(self) -> bool:
        return self.is_simplicial and all(
            abs(RatMatrix([self.rays[i] for i in c]).det()) == 1 for c in self.max_cones
        )

    @cached_property
    def is_complete(self) -> bool:
        if _rank_of(self.rays, self.dim) < self.dim:
            return False
        walls: dict[frozenset, int] = {}
        for cone, c in zip(self._cones, self.max_cones):
            for f in cone.facets:
                wall = frozenset(i for i in c if RatVector(self.rays[i]).dot(f) == 0)
                walls[wall] = walls.get(wall, 0) + 1
        if any(v != 2 for v in walls.values()):
            return False
        rng = random.Random(20240611)
        for _ in range(64):
            p = [rng.randint(-97, 97) for _ in range(self.dim)]
            if not any(cone.contains(p) for cone in self._cones):
                return False
        return True

    def require_complete(self):
        if not self.is_complete:
            raise ToricError("unbounded-polytope", "the fan is not complete")


def _rank_of(vectors, d: int) -> int:
    return RatMatrix(list(vectors), d).rank() if vectors else 0


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    return Fan(rays, cones)


def hirzebruch_fan(a: int) -> Fan:
    """e1 = (1,0), e2 = (0,1), e3 = (-1,a), e4 = (0,-1); D_{e2} is the negative section."""
    return Fan([(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (3, 0)])


def _principal_rows(F: Fan) -> list[list[int]]:
    """Row i is ``div(chi^{e_i}) = (<e_i, v_rho>)_rho``."""
    return [[r[i] for r in F.rays] for i in range(F.dim)]


class DivisorClassGroup:
    """``Z^{rays} / principal divisors`` with a chosen basis of the free part.

    When the complement of a set of ``n - dim`` rays spans a unimodular cone,
    those ray classes form a basis and class coordinates are read off after
    subtracting the principal divisor that clears the complementary
    coordinates.  Otherwise the Smith normal form supplies the basis.
    """

    def __init__(self, F: Fan, basis_rays: Sequence[int] | None = None):
        self.fan = F
        n, d = len(F.rays), F.dim
        self.n_rays = n
        self.relations = _principal_rows(F)
        A = [list(r) for r in F.rays]  # n x d, columns are the characters
        S, U, V = smith_normal_form(A)
        diag = [S[i][i] for i in range(min(n, d))]
        k = sum(1 for s in diag if s)
        self.rank = n - k
        self.torsion = tuple(s for s in diag if s > 1)
        self._U = U
        self._Uinv = int_matrix_inverse(U)
        self._k = k
        self.basis_rays: tuple[int, ...] | None = None
        anchor = None
        if basis_rays is not None:
            basis_rays = tuple(basis_rays)
            anchor = tuple(i for i in range(n) if i not in basis_rays)
            if len(basis_rays) != self.rank or not self._unimodular(anchor):
                raise ToricError("bad-class-basis", f"rays {list(basis_rays)} do not give a lattice basis")
        elif not self.torsion and k == d:
            for c in F.max_cones:
                if self._unimodular(c):
                    anchor = tuple(c)
                    basis_rays = tuple(i for i in range(n) if i not in c)
                    break
        if anchor is not None:
            self.basis_rays = tuple(basis_rays)
            self._anchor = anchor
            self._anchor_matrix = RatMatrix([F.rays[i] for i in anchor])

    def _unimodular(self, idx) -> bool:
        return len(idx) == self.fan.dim and abs(RatMatrix([self.fan.rays[i] for i in idx]).det()) == 1

    @property
    def variables(self) -> tuple[str, ...]:
        if self.rank == 1:
            return ("t",)
        if self.basis_rays is not None:
            return tuple(f"t{i + 1}" for i in self.basis_rays)
        return tuple(f"t{i + 1}" for i in range(self.rank))

    @property
    def basis_names(self) -> tuple[str, ...]:
        if self.basis_rays is not None:
            return tuple(self.fan.ray_names[i] for i in self.basis_rays)
        return tuple(f"c{i + 1}" for i in range(self.rank))

    def class_of(self, D) -> RatVector:
        """Coordinates of the class of D in the chosen basis (free part only)."""
        x = RatVector(_coeffs(D))
        if len(x) != self.n_rays:
            raise ToricError("bad-divisor", f"expected {self.n_rays} ray coefficients, got {len(x)}")
        if self.basis_rays is not None:
            m = solve_linear(self._anchor_matrix, [x[i] for i in self._anchor])
            y = [x[i] - sum(m[j] * self.fan.rays[i][j] for j in range(self.fan.dim)) for i in range(self.n_rays)]
            return RatVector(y[i] for i in self.basis_rays)
        ux = [sum(self._U[i][j] * x[j] for j in range(self.n_rays)) for i in range(self.n_rays)]
        return RatVector(ux[self._k:])

    def torsion_of(self, D) -> tuple[int, ...]:
        x = [int(c) for c in _coeffs(D)]
        ux = [sum(self._U[i][j] * x[j] for j in range(self.n_rays)) for i in range(self.n_rays)]
        return tuple(ux[i] % s for i, s in zip(range(self._k - len(self.torsion), self._k), self.torsion))

    def lift(self, coords: Sequence) -> ToricDivisor:
        """A torus-invariant divisor in the class with the given coordinates."""
        c = [Fraction(a) for a in coords]
        if len(c) != self.rank:
            raise ToricError("bad-divisor", f"expected {self.rank} class coordinates, got {len(c)}")
        if self.basis_rays is not None:
            out = [Fraction(0)] * self.n_rays
            for i, a in zip(self.basis_rays, c):
                out[i] = a
            return ToricDivisor(out)
        y = [Fraction(0)] * self._k + c
        return ToricDivisor([sum(self._Uinv[i][j] * y[j] for j in range(self.n_rays)) for i in range(self.n_rays)])

    def ray_classes(self) -> list[RatVector]:
        return [self.class_of([int(i == j) for j in range(self.n_rays)]) for i in range(self.n_rays)]


def divisor_class_group(F: Fan, basis_rays: Sequence[int] | None = None) -> DivisorClassGroup:
    if _rank_of(F.rays, F.dim) < F.dim:
        raise ToricError("invalid-fan", "rays do not span the ambient space")
    return DivisorClassGroup(F, basis_rays)


def _vertices(F: Fan, a: Sequence[int]) -> list[RatVector]:
    out = []
    for idx in combinations(range(len(F.rays)), F.dim):
        M = RatMatrix([F.rays[i] for i in idx])
        if M.det() == 0:
            continue
        u = solve_linear(M, [-a[i] for i in idx])
        if all(RatVector(r).dot(u) >= -ai for r, ai in zip(F.rays, a)):
            out.append(u)
    return out


def _slices(F: Fan, a: Sequence[int]):
    """Lattice points of P_a grouped as (prefix grid, lo, hi) along the last axis."""
    d = F.dim
    verts = _vertices(F, a)
    if not verts:
        return None
    lo = [floor(min(v[i] for v in verts)) for i in range(d)]
    hi = [-floor(-max(v[i] for v in verts)) for i in range(d)]
    V = np.array(F.rays, dtype=np.int64)  # n x d
    A = np.array(a, dtype=np.int64)
    if d > 1:
        axes = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(d - 1)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d - 1)
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    rhs = -A[None, :] - grid @ V[:, : d - 1].T  # need c * u_last >= rhs
    c = V[:, d - 1]
    low = np.full(len(grid), lo[d - 1], dtype=np.int64)
    high = np.full(len(grid), hi[d - 1], dtype=np.int64)
    ok = np.ones(len(grid), dtype=bool)
    for j in range(len(c)):
        if c[j] > 0:
            low = np.maximum(low, -((-rhs[:, j]) // c[j]))
        elif c[j] < 0:
            high = np.minimum(high, rhs[:, j] // c[j])
        else:
            ok &= rhs[:, j] <= 0
    ok &= low <= high
    return grid[ok], low[ok], high[ok]


def h0_toric(F: Fan, D) -> int:
    """Number of lattice points in the section polytope of ``floor(D)``."""
    F.require_complete()
    a = ToricDivisor(_coeffs(D)).floor()
    if len(a) != len(F.rays):
        raise ToricError("bad-divisor", f"expected {len(F.rays)} ray coefficients, got {len(a)}")
    sl = _slices(F, a)
    if sl is None:
        return 0
    _, low, high = sl
    return int(np.sum(high - low + 1))


def fixed_part_toric(F: Fan, D) -> ToricDivisor:
    """Fixed part of the complete linear series ``|floor(D)|``."""
    F.require_complete()
    a = ToricDivisor(_coeffs(D)).floor()
    sl = _slices(F, a)
    if sl is None or len(sl[0]) == 0:
        raise ToricError("empty-linear-series", "the divisor has no sections")
    grid, low, high = sl
    d = F.dim
    out = []
    for r, ar in zip(F.rays, a):
        v = np.array(r, dtype=np.int64)
        last = np.where(v[d - 1] >= 0, low, high)
        vals = grid @ v[: d - 1] + v[d - 1] * last + ar
        out.append(int(vals.min()))
    return ToricDivisor(out)


class ToricH0Oracle:
    """h0 of divisor classes, given by coordinates in a class group basis."""

    def __init__(self, F: Fan, group: DivisorClassGroup | None = None):
        F.require_complete()
        self.fan = F
        self.group = group or divisor_class_group(F)
        self.calls = 0

    def __call__(self, coords: Sequence) -> int:
        self.calls += 1
        return h0_toric(self.fan, self.group.lift(coords))


class ToricFixedPartOracle:
    """Fixed part, as ray coefficients, of the class with given coordinates."""

    def __init__(self, F: Fan, group: DivisorClassGroup | None = None):
        self.fan = F
        self.group = group or divisor_class_group(F)

    def __call__(self, coords: Sequence) -> tuple[int, ...]:
        return fixed_part_toric(self.fan, self.group.lift(coords)).coeffs


def euler_chow_divisors(F: Fan, group: DivisorClassGroup | None = None) -> RationalSeries:
    """``prod_rho 1 / (1 - t^{[D_rho]})`` in the class group basis."""
    F.require_complete()
    group = group or divisor_class_group(F)
    factors = []
    for cls in group.ray_classes():
        if not cls.is_integral():
            raise ToricError("non-integral-class", "ray class is not integral in the chosen basis")
        factors.append((cls.as_ints(), 1))
    return RationalSeries.geometric(factors, group.rank, group.variables)


def _power_of_geometric(k: int) -> RationalSeries:
    return RationalSeries(MultiPoly.constant(1, 1), (((1,), k),) if k else ())


def euler_chow_points(F: Fan) -> RationalSeries:
    F.require_complete()
    return _power_of_geometric(len(F.max_cones))


def euler_chow_top(F: Fan) -> RationalSeries:
    F.require_complete()
    return _power_of_geometric(1)


def euler_chow_rank_one(F: Fan, p: int, assume_rank_one: bool = False) -> RationalSeries:
    """Series for p-dimensional cycles when every orbit closure of that
    dimension has the same class generating a rank-one Chow group.

    The caller must assert that hypothesis with ``assume_rank_one=True``.
    """
    if not assume_rank_one:
        raise ToricError(
            "rank-one-not-asserted", "pass assume_rank_one=True to assert the Chow group is Z with equal orbit classes"
        )
    if not 0 <= p <= F.dim:
        raise ToricError("bad-dimension", f"cycle dimension {p} outside 0..{F.dim}")
    F.require_complete()
    return _power_of_geometric(len(F.cones_of_dim(F.dim - p)))


def surface_lattice_from_fan(F: Fan, group: DivisorClassGroup | None = None) -> SurfaceLattice:
    """Picard lattice of a smooth complete toric surface with its invariant curves.

    Ray divisors with equal class are catalogued once, under the first name.
    """
    if F.dim != 2 or not F.is_smooth or not F.is_complete:
        raise ToricError("not-a-smooth-surface-fan", "need a smooth complete two-dimensional fan")
    group = group or divisor_class_group(F)
    if group.basis_rays is None:
        raise ToricError("not-a-smooth-surface-fan", "no ray basis for the class group")
    Q = ray_intersections(F)
    form = [[Q[i][j] for j in group.basis_rays] for i in group.basis_rays]
    curves, labels = [], []
    for i, cls in enumerate(group.ray_classes()):
        if cls in curves:
            continue
        curves.append(cls)
        labels.append(F.ray_names[i])
    return SurfaceLattice(form, curves, labels, group.basis_names)


def ray_intersections(F: Fan) -> list[list[int]]:
    """Intersection numbers ``D_i . D_j`` of the ray divisors of a smooth surface."""
    n = len(F.rays)
    Q = [[0] * n for _ in range(n)]
    nbrs: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in (tuple(c) for c in F.max_cones):
        Q[i][j] = Q[j][i] = 1
        nbrs[i].append(j)
        nbrs[j].append(i)
    for i in range(n):
        if len(nbrs[i]) != 2:
            raise ToricError("not-a-smooth-surface-fan", f"ray {i} lies in {len(nbrs[i])} maximal cones")
        a, b = nbrs[i]
        s = [F.rays[a][k] + F.rays[b][k] for k in range(2)]
        v = F.rays[i]
        k = next(x for x in range(2) if v[x])
        coef = Fraction(s[k], v[k])
        if [coef * x for x in v] != s or coef.denominator != 1:
            raise ToricError("not-a-smooth-surface-fan", f"wall relation fails at ray {i}")
        Q[i][i] = -int(coef)
    return Q
