"""Zariski decomposition of pseudo-effective Q-divisors on a surface.

``zariski_decompose`` grows the support of the negative part: start with the
catalogued curves meeting D negatively, solve for the part of D supported on
them that is orthogonal to each of them, and add any curve the remainder
still meets negatively.  The loop ends after at most ``len(curves)`` rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .exact import NoSolutionError, RatVector, UnderdeterminedError, is_negative_definite, solve_linear
from .surface import Divisor, SurfaceLattice


class ZariskiError(ValueError):
    code = "zariski"


class NotPseudoEffectiveError(ZariskiError):
    code = "not-pseudo-effective"


class InconsistentCatalogueError(ZariskiError):
    code = "inconsistent-catalogue"


@dataclass(frozen=True)
class ZariskiPair:
    P: Divisor
    N: Divisor
    coefficients: dict  # curve index -> positive Fraction

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.coefficients)


def negative_part_on(S: SurfaceLattice, D: Sequence, support: Sequence[int]) -> dict[int, Fraction]:
    """Coefficients x with ``(D - sum x_i C_i) . C_j = 0`` for every j in support."""
    support = sorted(support)
    if not support:
        return {}
    gram = S.gram(support)
    rhs = [S.pair(D, S.curves[j]) for j in support]
    x = solve_linear(gram, rhs)
    return dict(zip(support, x))


def zariski_decompose(S: SurfaceLattice, D: Sequence) -> ZariskiPair:
    D = S.divisor(D)
    sigma = {i for i, x in enumerate(S.curve_pairings(D)) if x < 0}
    while True:
        try:
            coeffs = negative_part_on(S, D, sigma)
        except UnderdeterminedError as exc:
            raise InconsistentCatalogueError(
                f"singular intersection matrix on support {sorted(sigma)}"
            ) from exc
        except NoSolutionError as exc:
            raise NotPseudoEffectiveError(
                f"no divisor on support {[S.labels[i] for i in sorted(sigma)]} is orthogonal to it"
            ) from exc
        if sigma and not is_negative_definite(S.gram(sorted(sigma))):
            raise NotPseudoEffectiveError(
                f"support {[S.labels[i] for i in sorted(sigma)]} is not negative definite"
            )
        negative = [i for i, x in coeffs.items() if x <= 0]
        if negative:
            raise NotPseudoEffectiveError(
                f"negative part has nonpositive coefficient on {[S.labels[i] for i in negative]}"
            )
        N = S.combination(coeffs)
        P = D - N
        entering = {i for i, x in enumerate(S.curve_pairings(P)) if x < 0} - sigma
        if not entering:
            return ZariskiPair(P, N, coeffs)
        sigma |= entering


def compatible(S: SurfaceLattice, D1: Sequence, D2: Sequence) -> bool:
    """True when ``(P1 + P2) . (N1 + N2) = 0``."""
    z1, z2 = zariski_decompose(S, D1), zariski_decompose(S, D2)
    return S.pair(z1.P + z2.P, z1.N + z2.N) == 0


def all_compatible(S: SurfaceLattice, divisors: Sequence[Sequence]) -> bool:
    """Compatibility of a whole family: ``(sum P_i) . (sum N_i) = 0``."""
    pairs = [zariski_decompose(S, d) for d in divisors]
    P = sum((z.P for z in pairs), RatVector.zero(S.rank))
    N = sum((z.N for z in pairs), RatVector.zero(S.rank))
    return S.pair(P, N) == 0


def is_big(S: SurfaceLattice, D: Sequence) -> bool:
    """Big relative to the catalogue: pseudo-effective with ``P^2 > 0``."""
    try:
        z = zariski_decompose(S, D)
    except ZariskiError:
        return False
    return S.pair(z.P, z.P) > 0


def axioms(S: SurfaceLattice, D: Sequence, z: ZariskiPair) -> dict[str, bool]:
    """The five defining properties, evaluated individually."""
    D = S.divisor(D)
    supp = sorted(z.support)
    return {
        "sum": z.P + z.N == D and S.combination(z.coefficients) == z.N,
        "P_nef": S.is_nef(z.P),
        "N_effective": all(c > 0 for c in z.coefficients.values()),
        "negative_definite": not supp or is_negative_definite(S.gram(supp)),
        "orthogonal": S.pair(z.P, z.N) == 0 and all(S.pair(z.P, S.curves[i]) == 0 for i in supp),
    }


FixedPartOracle = Callable[[tuple], Sequence]


def asymptotic_fixed_part(oracle: FixedPartOracle, D: Sequence, n_max: int) -> list[tuple[int, RatVector]]:
    """Normalised fixed parts ``F_{|nD|} / n`` for ``1 <= n <= n_max`` with nD integral.

    ``oracle`` maps an integral coefficient tuple to the coefficient tuple of
    the fixed part of its complete linear series.
    """
    D = RatVector(D)
    out = []
    for n in range(1, n_max + 1):
        nD = D * n
        if not nD.is_integral():
            continue
        out.append((n, RatVector(oracle(nD.as_ints())) / n))
    return out


def fixed_part_lower_bound_witness(
    oracle: FixedPartOracle, D: Sequence, E: Sequence, limit: Sequence, n_max: int
) -> int | None:
    """Smallest N with ``F_{|nD+E|} >= (n - N) * limit`` for all ``N <= n <= n_max``.

    Returns None when no N up to n_max works.  ``D`` and ``E`` must be integral.
    """
    D, E, limit = RatVector(D), RatVector(E), RatVector(limit)
    ok = []
    for n in range(n_max + 1):
        F = RatVector(oracle((D * n + E).as_ints()))
        ok.append(F)
    for N in range(n_max + 1):
        if all(all(f >= (n - N) * l for f, l in zip(ok[n], limit)) for n in range(N, n_max + 1)):
            return N
    return None
