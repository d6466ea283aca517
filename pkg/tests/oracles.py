"""Independent reference implementations used to check the library.

Nothing here calls into the code under test for the computation it checks:
Zariski decompositions come from exhaustive search over supports, lattice
counts from naive loops over a box, cone membership from Caratheodory
subsets solved with a private Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb


def gauss_solve(A, b):
    """Unique solution of a square system by plain Gaussian elimination, or None."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def det(A):
    A = [[Fraction(x) for x in row] for row in A]
    n = len(A)
    sign, out = 1, Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        out *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            A[r] = [a - f * c for a, c in zip(A[r], A[col])]
    return sign * out


def bilinear(form, u, v):
    return sum(Fraction(u[i]) * form[i][j] * Fraction(v[j]) for i in range(len(u)) for j in range(len(v)))


def negative_definite_by_minors(G):
    return all((-1) ** k * det([row[:k] for row in G[:k]]) > 0 for k in range(1, len(G) + 1))


def brute_zariski(form, curves, D, max_support=None):
    """All (P, coefficient dict) satisfying the defining axioms, by trying every support.

    Only curves with negative self-intersection can lie in a negative definite
    support, and ``max_support`` (when given) caps the subset size; nothing
    else is pruned.
    """
    n = len(curves)
    gram = [[bilinear(form, curves[i], curves[j]) for j in range(n)] for i in range(n)]
    dc = [bilinear(form, D, c) for c in curves]
    negative = [i for i in range(n) if gram[i][i] < 0]
    cap = len(negative) if max_support is None else min(max_support, len(negative))
    found = []
    for k in range(cap + 1):
        for sup in combinations(negative, k):
            G = [[gram[i][j] for j in sup] for i in sup]
            if sup and not negative_definite_by_minors(G):
                continue
            x = gauss_solve(G, [dc[i] for i in sup]) if sup else []
            if x is None or any(c <= 0 for c in x):
                continue
            pc = [dc[k2] - sum(x[t] * gram[i][k2] for t, i in enumerate(sup)) for k2 in range(n)]
            if any(v < 0 for v in pc):
                continue
            if sum(x[t] * pc[i] for t, i in enumerate(sup)) != 0:
                continue
            N = [sum((x[t] * curves[i][j] for t, i in enumerate(sup)), Fraction(0)) for j in range(len(D))]
            P = [Fraction(d) - c for d, c in zip(D, N)]
            found.append((P, dict(zip(sup, x))))
    return found


def in_cone(gens, p):
    """Membership of p in cone(gens) via Caratheodory: some independent subset works."""
    d = len(p)
    if all(x == 0 for x in p):
        return True
    gens = [list(g) for g in gens]
    for k in range(1, min(d, len(gens)) + 1):
        for sub in combinations(gens, k):
            # least-squares-free test: pick k coordinates where the subset is independent
            for rows in combinations(range(d), k):
                A = [[sub[j][r] for j in range(k)] for r in rows]
                if det(A) == 0:
                    continue
                lam = gauss_solve(A, [p[r] for r in rows])
                if all(
                    sum(lam[j] * sub[j][r] for j in range(k)) == p[r] for r in range(d)
                ) and all(x >= 0 for x in lam):
                    return True
                break
    return False


def _box_points(rays, a, radius):
    import numpy as np

    d = len(rays[0])
    R = radius if radius is not None else 4 * sum(abs(x) for x in a) + 2
    axes = [np.arange(-R, R + 1)] * d
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    vals = pts @ np.array(rays).T + np.array(a)[None, :]
    return pts[np.all(vals >= 0, axis=1)], vals[np.all(vals >= 0, axis=1)]


def lattice_points_in_polytope(rays, a, radius=None):
    """Count of u with <u, v_rho> >= -a_rho, scanning every point of a box."""
    pts, _ = _box_points(rays, a, radius)
    return len(pts)


def fixed_part_bruteforce(rays, a, radius=None):
    """Minimum of <u, v_rho> + a_rho over all lattice points found in the box."""
    _, vals = _box_points(rays, a, radius)
    return [int(v) for v in vals.min(axis=0)]


def half_triangle_count(n):
    """Points with x, y >= 0 and x + y <= floor(n/2)."""
    k = n // 2
    return (k + 1) * (k + 2) // 2


def projective_euler_chow_exponent(n, p):
    return comb(n + 1, p + 1)


def series_coefficient_product(factors, exponent, bound=60):
    """Coefficient of t^exponent in prod 1/(1 - t^v) (v with positive total degree), by direct search."""
    # count representations exponent = sum k_i v_i with k_i >= 0
    def rec(i, rest):
        if i == len(factors):
            return int(all(x == 0 for x in rest))
        v = factors[i]
        total = 0
        k = 0
        while True:
            cur = [r - k * x for r, x in zip(rest, v)]
            if k > bound:
                break
            total += rec(i + 1, cur)
            k += 1
        return total

    return rec(0, list(exponent))


HIRZEBRUCH_RAYS = {a: [(1, 0), (0, 1), (-1, a), (0, -1)] for a in range(0, 6)}


def hirzebruch_h0(a, E, f):
    """h0(E * (negative section) + f * (fibre)) on the a-th Hirzebruch surface, by box scan."""
    # the section polytope has -E <= u2 <= 0 and -f <= u1 <= a*u2, so this box holds it
    R = abs(f) + (a + 1) * abs(E) + 2
    return lattice_points_in_polytope(HIRZEBRUCH_RAYS[a], (f, E, 0, 0), radius=R)


def projective_h0(n, k):
    """h0(O(k)) on P^n as a box scan of the dilated simplex."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    return lattice_points_in_polytope(rays, (0,) * n + (k,), radius=abs(k) + 1)
