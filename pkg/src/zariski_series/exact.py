"""Exact rational scalars, vectors and matrices.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere.  Elimination is fraction-free (Bareiss) on row-scaled integer
copies of the input, so intermediate entries stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class LinearAlgebraError(ValueError):
    code = "linear-algebra"


class NoSolutionError(LinearAlgebraError):
    """The system ``A x = b`` is inconsistent."""

    code = "no-solution"


class UnderdeterminedError(LinearAlgebraError):
    """The system ``A x = b`` has a positive-dimensional solution set."""

    code = "underdetermined"


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def denominator_lcm(values: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


class RatVector(tuple):
    """Immutable vector of Fractions with the usual linear operations."""

    def __new__(cls, entries: Iterable = ()):
        return super().__new__(cls, (Fraction(e) for e in entries))

    @classmethod
    def zero(cls, n: int) -> "RatVector":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "RatVector":
        return cls([1 if j == i else 0 for j in range(n)])

    @property
    def dim(self) -> int:
        return len(self)

    def _check(self, other):
        if len(other) != len(self):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return RatVector(a + b for a, b in zip(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        self._check(other)
        return RatVector(a - b for a, b in zip(self, other))

    def __rsub__(self, other):
        self._check(other)
        return RatVector(b - a for a, b in zip(self, other))

    def __neg__(self):
        return RatVector(-a for a in self)

    def __mul__(self, scalar):
        if isinstance(scalar, (tuple, list)):
            return NotImplemented
        s = Fraction(scalar)
        return RatVector(a * s for a in self)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return RatVector(a / s for a in self)

    def dot(self, other) -> Fraction:
        self._check(other)
        return sum((a * Fraction(b) for a, b in zip(self, other)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self)

    def primitive(self) -> "RatVector":
        """Positive multiple with coprime integer entries (zero stays zero)."""
        if self.is_zero():
            return self
        scaled = [a * denominator_lcm(self) for a in self]
        g = abs(reduce(gcd, (int(a) for a in scaled)))
        return RatVector(a / g for a in scaled)

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"vector {self} is not integral")
        return tuple(int(a) for a in self)

    def __repr__(self):
        return "RatVector([" + ", ".join(str(a) for a in self) + "])"


class RatMatrix:
    """Immutable row-major rational matrix."""

    __slots__ = ("_rows", "rows", "cols", "symmetric")

    def __init__(self, rows: Iterable[Iterable], cols: int | None = None):
        data = tuple(RatVector(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix rows")
        self._rows = data
        self.rows = len(data)
        self.cols = cols
        self.symmetric = self.rows == self.cols and all(
            data[i][j] == data[j][i] for i in range(self.rows) for j in range(i)
        )

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([RatVector.unit(n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RatMatrix":
        if not columns:
            return cls([[] for _ in range(rows or 0)], 0)
        return cls(zip(*columns), len(columns))

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self._rows == other._rows and self.cols == other.cols

    def __hash__(self):
        return hash((self._rows, self.cols))

    def __repr__(self):
        return "RatMatrix([" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self._rows) + "])"

    def column(self, j: int) -> RatVector:
        return RatVector(r[j] for r in self._rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([self.column(j) for j in range(self.cols)], self.rows)

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if other.rows != self.cols:
                raise ValueError("shape mismatch in matrix product")
            cols = [other.column(j) for j in range(other.cols)]
            return RatMatrix([[r.dot(c) for c in cols] for r in self._rows], other.cols)
        vec = RatVector(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return RatVector(r.dot(vec) for r in self._rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return RatMatrix([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def bilinear(self, u, v) -> Fraction:
        return RatVector(u).dot(self @ v)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return Fraction(1)
        ints, scales = _integer_rows(self._rows)
        d, _, _ = _bareiss(ints, self.cols)
        return Fraction(d, reduce(lambda a, b: a * b, scales, 1))

    def leading_minors(self) -> list[Fraction]:
        return [self.submatrix(range(k)).det() for k in range(1, self.rows + 1)]

    def rank(self) -> int:
        ints, _ = _integer_rows(self._rows)
        _, rank, _ = _bareiss(ints, self.cols)
        return rank

    def nullspace(self) -> list[RatVector]:
        """Basis of ``{x : A x = 0}`` read off the reduced row echelon form."""
        rref, pivots = _rref(self._rows, self.cols)
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            x = [Fraction(0)] * self.cols
            x[f] = Fraction(1)
            for row, p in zip(rref, pivots):
                x[p] = -row[f]
            basis.append(RatVector(x))
        return basis

    def inverse(self) -> "RatMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        cols = []
        for i in range(n):
            cols.append(solve_linear(self, RatVector.unit(n, i)))
        return RatMatrix.from_columns(cols, n)


def _integer_rows(rows) -> tuple[list[list[int]], list[int]]:
    ints, scales = [], []
    for r in rows:
        s = denominator_lcm(r)
        ints.append([int(a * s) for a in r])
        scales.append(s)
    return ints, scales


def _bareiss(m: list[list[int]], ncols: int) -> tuple[int, int, list[int]]:
    """Fraction-free forward elimination, in place.

    Returns (determinant for square input, rank, pivot columns).  Every entry
    stays an integer because each step divides exactly by the previous pivot.
    """
    nrows = len(m)
    prev = 1
    sign = 1
    row = 0
    pivots = []
    for col in range(ncols):
        if row >= nrows:
            break
        piv = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
            sign = -sign
        p = m[row][col]
        for i in range(row + 1, nrows):
            mi = m[i]
            f = mi[col]
            for j in range(col + 1, len(mi)):
                mi[j] = (p * mi[j] - f * m[row][j]) // prev
            mi[col] = 0
        prev = p
        pivots.append(col)
        row += 1
    rank = row
    if nrows == ncols and rank == nrows:
        det = sign * m[nrows - 1][ncols - 1]
    else:
        det = 0
    return det, rank, pivots


def _rref(rows, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve_linear(A: RatMatrix, b: Sequence) -> RatVector:
    """Unique exact solution of ``A x = b``.

    Raises NoSolutionError for inconsistent systems and UnderdeterminedError
    when the solution set has positive dimension.
    """
    if not isinstance(A, RatMatrix):
        A = RatMatrix(A)
    b = RatVector(b)
    if A.rows != len(b):
        raise ValueError(f"A has {A.rows} rows but b has {len(b)} entries")
    aug, _ = _integer_rows([list(r) + [bi] for r, bi in zip(A, b)])
    _, rank, pivots = _bareiss(aug, A.cols + 1)
    if pivots and pivots[-1] == A.cols:
        raise NoSolutionError("inconsistent linear system")
    if rank < A.cols:
        raise UnderdeterminedError(f"solution space has dimension {A.cols - rank}")
    x = [Fraction(0)] * A.cols
    for i in reversed(range(rank)):
        c = pivots[i]
        acc = Fraction(aug[i][A.cols])
        for j in range(c + 1, A.cols):
            acc -= aug[i][j] * x[j]
        x[c] = acc / aug[i][c]
    x = RatVector(x)
    assert A @ x == b
    return x


def is_negative_definite(A: RatMatrix) -> bool:
    """Sylvester criterion: ``(-1)^k`` times the k-th leading minor is positive."""
    if not A.symmetric:
        raise ValueError("negative definiteness needs a symmetric matrix")
    return all((-1) ** k * m > 0 for k, m in enumerate(A.leading_minors(), start=1))


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (S, U, V) with ``U A V = S`` diagonal, U and V unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, r)) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]

    def add_row(M, src, dst, f):  # row dst += f * row src
        M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, f):
        for r in M:
            r[dst] += f * r[src]

    for t in range(min(m, n)):
        nonzero = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nonzero:
            break
        while True:
            _, i, j = min((abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j])
            swap_rows(S, t, i)
            swap_rows(U, t, i)
            swap_cols(S, t, j)
            swap_cols(V, t, j)
            p = S[t][t]
            done = True
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    add_row(S, t, i, -q)
                    add_row(U, t, i, -q)
                if S[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(S, t, j, -q)
                    add_col(V, t, j, -q)
                if S[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is None:
                break
            add_row(S, bad[0], t, 1)
            add_row(U, bad[0], t, 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return S, U, V


def int_matrix_inverse(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    inv = RatMatrix(M).inverse()
    out = [[a for a in row] for row in inv]
    if any(a.denominator != 1 for row in out for a in row):
        raise ValueError("matrix is not unimodular")
    return [[int(a) for a in row] for row in out]
