"""Quasi-polynomial fitting by exact interpolation per residue class."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import SeriesError


class NoFitError(SeriesError):
    code = "no-fit"


@dataclass(frozen=True)
class QuasiPolynomial:
    """``f(n) = sum_k c_{n mod period, k} n^k`` for ``n >= onset``."""

    period: int
    onset: int
    table: tuple  # table[rho] = (c_0, c_1, ..., c_deg), Fractions

    @property
    def degree(self) -> int:
        return max((k for row in self.table for k, c in enumerate(row) if c), default=0)

    def __call__(self, n: int) -> Fraction:
        row = self.table[n % self.period]
        return sum((c * n**k for k, c in enumerate(row)), Fraction(0))

    def describe(self, var: str = "n") -> str:
        lines = []
        for rho, row in enumerate(self.table):
            terms = []
            for k in range(len(row) - 1, -1, -1):
                c = row[k]
                if c == 0:
                    continue
                mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
                if not mono:
                    terms.append(str(c))
                elif c in (1, -1):
                    terms.append(mono if c == 1 else f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
            poly = " + ".join(terms) if terms else "0"
            lines.append(f"n = {rho} mod {self.period}: {poly.replace('+ -', '- ')}")
        return "\n".join(lines)


def _interpolate(points: Sequence[tuple[int, Fraction]], degree: int) -> tuple[Fraction, ...]:
    """Coefficients of the polynomial of the given degree through the points."""
    from ..exact import solve_linear

    rows = [[Fraction(n) ** k for k in range(degree + 1)] for n, _ in points]
    return tuple(solve_linear(rows, [Fraction(v) for _, v in points]))


def quasi_poly_fit(
    values: Sequence[int],
    max_period: int,
    degree: int = 2,
    min_checks: int = 3,
) -> QuasiPolynomial:
    """Smallest period, then smallest onset, whose per-class polynomial fits.

    Each residue class is interpolated on its first ``degree + 1`` samples past
    the onset and must reproduce at least ``min_checks`` further samples.
    """
    values = [Fraction(v) for v in values]
    L = len(values)
    need = degree + 1 + min_checks
    for r in range(1, max_period + 1):
        for n0 in range(0, L):
            if any(len(range(n0 + rho, L, r)) < need for rho in range(r)):
                break
            table = []
            for rho in range(r):
                idx = list(range(n0 + rho, L, r))
                pts = [(n, values[n]) for n in idx[: degree + 1]]
                coeffs = _interpolate(pts, degree)
                if any(sum(c * n**k for k, c in enumerate(coeffs)) != values[n] for n in idx[degree + 1 :]):
                    break
                table.append((n0 + rho, coeffs))
            else:
                table.sort(key=lambda t: t[0] % r)
                return QuasiPolynomial(r, n0, tuple(c for _, c in table))
    raise NoFitError(
        f"no quasi-polynomial of degree <= {degree} and period <= {max_period} fits {L} values"
    )
