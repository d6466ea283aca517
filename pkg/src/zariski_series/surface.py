"""A surface presented by its divisor lattice.

The Néron-Severi lattice is given by an intersection matrix on a chosen basis
together with a finite catalogue of irreducible curve classes.  Nefness and
effectivity are always *relative to that catalogue*: a divisor is called nef
here when it meets every catalogued curve nonnegatively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import RatMatrix, RatVector, is_negative_definite

Divisor = RatVector


class SurfaceError(ValueError):
    code = "invalid-surface"


@dataclass(frozen=True)
class SurfaceLattice:
    form: RatMatrix
    curves: tuple[RatVector, ...]
    labels: tuple[str, ...]
    basis_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        form = self.form if isinstance(self.form, RatMatrix) else RatMatrix(self.form)
        object.__setattr__(self, "form", form)
        if form.rows != form.cols or form.rows == 0:
            raise SurfaceError("intersection form must be a nonempty square matrix")
        if not form.symmetric:
            raise SurfaceError("intersection form must be symmetric")
        if any(a.denominator != 1 for row in form for a in row):
            raise SurfaceError("intersection form must have integer entries")
        curves = tuple(RatVector(c) for c in self.curves)
        object.__setattr__(self, "curves", curves)
        labels = tuple(self.labels) if self.labels else tuple(f"C{i}" for i in range(len(curves)))
        object.__setattr__(self, "labels", labels)
        if len(labels) != len(curves):
            raise SurfaceError("one label per curve is required")
        names = tuple(self.basis_names) if self.basis_names else tuple(f"e{i}" for i in range(form.rows))
        object.__setattr__(self, "basis_names", names)
        if len(names) != form.rows:
            raise SurfaceError("one basis name per lattice coordinate is required")
        seen = set()
        for label, c in zip(labels, curves):
            if len(c) != form.rows:
                raise SurfaceError(f"curve {label} has dimension {len(c)}, expected {form.rows}")
            if c.is_zero():
                raise SurfaceError(f"curve {label} has zero class")
            if not c.is_integral():
                raise SurfaceError(f"curve {label} must have an integral class")
            if c in seen:
                raise SurfaceError(f"curve class of {label} is listed twice")
            seen.add(c)

    @property
    def rank(self) -> int:
        return self.form.rows

    def divisor(self, coords: Sequence) -> Divisor:
        d = RatVector(coords)
        if len(d) != self.rank:
            raise SurfaceError(f"divisor has dimension {len(d)}, lattice rank is {self.rank}")
        return d

    def pair(self, d1: Sequence, d2: Sequence) -> Fraction:
        """Intersection number ``d1 . d2``."""
        d1, d2 = self.divisor(d1), self.divisor(d2)
        return self.form.bilinear(d1, d2)

    def gram(self, indices: Sequence[int]) -> RatMatrix:
        """Intersection matrix of the catalogued curves with the given indices."""
        return RatMatrix(
            [[self.pair(self.curves[i], self.curves[j]) for j in indices] for i in indices], len(indices)
        )

    def is_negative_definite_set(self, indices: Sequence[int]) -> bool:
        return not indices or is_negative_definite(self.gram(indices))

    def curve_pairings(self, d: Sequence) -> list[Fraction]:
        d = self.divisor(d)
        return [self.pair(d, c) for c in self.curves]

    def is_nef(self, d: Sequence) -> bool:
        return all(x >= 0 for x in self.curve_pairings(d))

    def combination(self, coefficients: dict[int, Fraction]) -> Divisor:
        """Divisor ``sum c_i C_i`` over catalogued curves."""
        out = RatVector.zero(self.rank)
        for i, c in coefficients.items():
            out = out + Fraction(c) * self.curves[i]
        return out

    def format_divisor(self, d: Sequence) -> str:
        return format_combination(self.divisor(d), self.basis_names)


def support(coefficients: dict[int, Fraction] | Sequence) -> frozenset[int]:
    """Indices with strictly positive coefficient in an effective presentation.

    Accepts either a mapping ``curve index -> coefficient`` or a sequence of
    coefficients parallel to the curve catalogue.
    """
    items = coefficients.items() if isinstance(coefficients, dict) else enumerate(coefficients)
    out = set()
    for i, c in items:
        c = Fraction(c)
        if c < 0:
            raise SurfaceError(f"coefficient {c} of curve {i} is negative: not an effective presentation")
        if c > 0:
            out.add(i)
    return frozenset(out)


def format_combination(coords: Sequence, names: Sequence[str]) -> str:
    """``"1/2 E + 1 f"`` style rendering; zero coordinates are dropped."""
    parts = []
    for c, name in zip(coords, names):
        c = Fraction(c)
        if c == 0:
            continue
        if not parts:
            parts.append(f"{c} {name}" if c > 0 else f"-{-c} {name}")
        else:
            parts.append(f"+ {c} {name}" if c > 0 else f"- {-c} {name}")
    return " ".join(parts) if parts else "0"
