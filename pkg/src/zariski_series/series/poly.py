"""Laurent polynomials with integer coefficients and rational series over them.

A :class:`RationalSeries` is ``numerator / prod (1 - t^v)^m``.  Its canonical
string form is the golden-test format::

    series      ::= "(" numerator ") / (" denominator ")"
    numerator   ::= "0" | term { (" + " | " - ") term }
    term        ::= [ "-" ] ( integer | [ integer "*" ] monomial )
    monomial    ::= power { "*" power }
    power       ::= variable [ "^" [ "-" ] integer ]
    denominator ::= "1" | factor { "*" factor }
    factor      ::= "(1 - " monomial ")" [ "^" integer ]

Numerator terms come in graded-lex order (total degree ascending, then
exponent vectors lex-descending); denominator factors are merged per exponent
vector and sorted lexicographically by it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence


class SeriesError(ValueError):
    code = "series"


Exponent = tuple[int, ...]


def default_variables(arity: int) -> tuple[str, ...]:
    return ("t",) if arity == 1 else tuple(f"t{i + 1}" for i in range(arity))


def _glex_key(e: Exponent):
    return (sum(e), tuple(-x for x in e))


class MultiPoly:
    """Sparse Laurent polynomial ``{exponent: integer coefficient}``."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None, arity: int | None = None):
        clean: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        if arity is None:
            if not clean:
                raise SeriesError("arity needed for the zero polynomial")
            arity = len(next(iter(clean)))
        if any(len(e) != arity for e in clean):
            raise SeriesError("exponent vectors of mixed length")
        self.terms = clean
        self.arity = arity

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls({}, arity)

    @classmethod
    def constant(cls, c: int, arity: int) -> "MultiPoly":
        return cls({(0,) * arity: c}, arity)

    @classmethod
    def monomial(cls, e: Sequence[int], c: int = 1) -> "MultiPoly":
        return cls({tuple(e): c}, len(e))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out, self.arity)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.arity)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.arity)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out, self.arity)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(1, self.arity)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, e: Sequence[int]) -> "MultiPoly":
        return MultiPoly({tuple(a + b for a, b in zip(x, e)): c for x, c in self.terms.items()}, self.arity)

    def substitute(self, matrix: Sequence[Sequence[int]]) -> "MultiPoly":
        """Monomial map: exponent e becomes ``matrix @ e`` (new arity = rows)."""
        rows = len(matrix)
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            ne = tuple(sum(r[j] * e[j] for j in range(self.arity)) for r in matrix)
            out[ne] = out.get(ne, 0) + c
        return MultiPoly(out, rows)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self.terms.items(), key=lambda kv: _glex_key(kv[0]))

    def grade_range(self, grading: Sequence[int]) -> tuple[int, int]:
        gs = [sum(g * x for g, x in zip(grading, e)) for e in self.terms]
        return min(gs), max(gs)

    def divide_one_minus(self, v: Exponent, grading: Sequence[int]) -> "MultiPoly | None":
        """Exact quotient by ``1 - t^v``, or None when it does not divide."""
        if self.is_zero():
            return self
        gv = sum(g * x for g, x in zip(grading, v))
        lo, _ = self.grade_range(grading)
        rem = dict(self.terms)
        quot: dict[Exponent, int] = {}

        def grade(e):
            return sum(g * x for g, x in zip(grading, e))

        while rem:
            e = max(rem, key=lambda x: (grade(x), x))
            c = rem[e]
            q = tuple(a - b for a, b in zip(e, v))
            if grade(q) < lo:
                return None
            # rem -= (1 - t^v) * (-c t^q)  i.e. rem += c t^q - c t^e
            quot[q] = quot.get(q, 0) - c
            rem[q] = rem.get(q, 0) + c
            if not rem[q]:
                del rem[q]
            rem[e] -= c
            if not rem[e]:
                del rem[e]
        return MultiPoly(quot, self.arity)

    def __repr__(self):
        return f"MultiPoly({format_poly(self, default_variables(self.arity))})"


def format_monomial(e: Exponent, variables: Sequence[str]) -> str:
    parts = []
    for x, name in zip(e, variables):
        if x == 0:
            continue
        parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts)


def format_poly(p: MultiPoly, variables: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = format_monomial(e, variables)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def _merge_factors(factors: Iterable[tuple[Sequence[int], int]]) -> tuple[tuple[Exponent, int], ...]:
    merged: dict[Exponent, int] = {}
    for v, m in factors:
        v = tuple(int(x) for x in v)
        if not any(v):
            raise SeriesError("denominator factor with zero exponent vector")
        if m < 0:
            raise SeriesError("negative multiplicity in denominator")
        if m:
            merged[v] = merged.get(v, 0) + int(m)
    return tuple(sorted(merged.items()))


def _lex_positive(v: Exponent) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


@dataclass(frozen=True, eq=False)
class RationalSeries:
    numerator: MultiPoly
    denominator: tuple = ()
    variables: tuple = ()
    certificate: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "denominator", _merge_factors(self.denominator))
        n = self.numerator.arity
        if any(len(v) != n for v, _ in self.denominator):
            raise SeriesError("denominator arity differs from numerator arity")
        names = tuple(self.variables) if self.variables else default_variables(n)
        if len(names) != n:
            raise SeriesError("one variable name per exponent coordinate is required")
        object.__setattr__(self, "variables", names)

    @property
    def arity(self) -> int:
        return self.numerator.arity

    @property
    def is_laurent(self) -> bool:
        return any(not _lex_positive(v) for v, _ in self.denominator) or any(
            min(e) < 0 for e in self.numerator.terms
        )

    @classmethod
    def constant(cls, c: int, arity: int, variables: Sequence[str] = ()) -> "RationalSeries":
        return cls(MultiPoly.constant(c, arity), (), tuple(variables))

    @classmethod
    def geometric(cls, factors: Iterable[tuple[Sequence[int], int]], arity: int, variables=()) -> "RationalSeries":
        """``1 / prod (1 - t^v)^m``."""
        return cls(MultiPoly.constant(1, arity), tuple(factors), tuple(variables))

    def __eq__(self, other):
        return (
            isinstance(other, RationalSeries)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def denominator_poly(self) -> MultiPoly:
        out = MultiPoly.constant(1, self.arity)
        for v, m in self.denominator:
            out = out * (_one_minus(v) ** m)
        return out

    def with_variables(self, variables: Sequence[str]) -> "RationalSeries":
        return RationalSeries(self.numerator, self.denominator, tuple(variables), self.certificate)

    def with_certificate(self, certificate: str | None) -> "RationalSeries":
        return RationalSeries(self.numerator, self.denominator, self.variables, certificate)

    def _rescale_to(self, target: dict[Exponent, int]) -> MultiPoly:
        num = self.numerator
        own = dict(self.denominator)
        for v, m in target.items():
            extra = m - own.get(v, 0)
            if extra:
                num = num * (_one_minus(v) ** extra)
        return num

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        if other.arity != self.arity:
            raise SeriesError("cannot add series of different arity")
        target = dict(self.denominator)
        for v, m in other.denominator:
            target[v] = max(target.get(v, 0), m)
        num = self._rescale_to(target) + other._rescale_to(target)
        return RationalSeries(num, tuple(target.items()), self.variables)

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(-self.numerator, self.denominator, self.variables)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + (-other)

    def __mul__(self, other) -> "RationalSeries":
        if isinstance(other, int):
            return RationalSeries(self.numerator * other, self.denominator, self.variables)
        if isinstance(other, MultiPoly):
            return RationalSeries(self.numerator * other, self.denominator, self.variables)
        return RationalSeries(
            self.numerator * other.numerator, self.denominator + other.denominator, self.variables
        )

    __rmul__ = __mul__

    def shift(self, e: Sequence[int]) -> "RationalSeries":
        """Multiply by the monomial ``t^e``."""
        return RationalSeries(self.numerator.shift(e), self.denominator, self.variables)

    def substitute(self, matrix: Sequence[Sequence[int]], variables: Sequence[str] = ()) -> "RationalSeries":
        """Monomial substitution ``t_j -> prod_i u_i^{matrix[i][j]}``."""
        num = self.numerator.substitute(matrix)
        den = []
        for v, m in self.denominator:
            nv = tuple(sum(r[j] * v[j] for j in range(len(v))) for r in matrix)
            den.append((nv, m))
        return RationalSeries(num, tuple(den), tuple(variables))

    def equals_as_function(self, other: "RationalSeries") -> bool:
        """Equality as rational functions (cross multiplication)."""
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    def reduced(self, grading: Sequence[int] | None = None) -> "RationalSeries":
        """Cancel denominator factors that divide the numerator.

        Whole factors ``1 - t^v`` are removed first; then a factor
        ``1 - t^{kw}`` is replaced by ``1 - t^w`` when the numerator is
        divisible by ``1 + t^w + ... + t^{(k-1)w}``.
        """
        if grading is None:
            try:
                grading = positive_grading(self)
            except SeriesError:
                return self  # no power-series expansion, so nothing to normalize against
        grading = list(grading)
        num = self.numerator
        den = dict(self.denominator)
        changed = True
        while changed:
            changed = False
            for v in sorted(den):
                while den.get(v, 0) > 0:
                    q = num.divide_one_minus(v, grading)
                    if q is None:
                        break
                    num = q
                    den[v] -= 1
                    if not den[v]:
                        del den[v]
                    changed = True
            for v in sorted(den):
                k = _content(v)
                for d in sorted(_divisors(k))[:-1]:
                    w = tuple(x // (k // d) for x in v)
                    # 1 - t^v = (1 - t^w) * cyclotomic-like cofactor
                    if den.get(v, 0) == 0:
                        break
                    cof = _geometric_sum(w, k // d)
                    q = _divide(num, cof, grading)
                    if q is None:
                        continue
                    num = q
                    den[v] -= 1
                    if not den[v]:
                        del den[v]
                    den[w] = den.get(w, 0) + 1
                    changed = True
                    break
                if changed:
                    break
        return RationalSeries(num, tuple(den.items()), self.variables, self.certificate)

    def expand(self, bound: int, grading: Sequence[int] | None = None) -> dict[Exponent, int]:
        return expand(self, bound, grading)

    def to_string(self) -> str:
        return serialize(self)

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"RationalSeries({serialize(self)!r})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "numerator": [[c, list(e)] for e, c in self.numerator.sorted_terms()],
            "denominator": [[list(v), m] for v, m in self.denominator],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalSeries":
        variables = tuple(data["variables"])
        num = MultiPoly({tuple(e): c for c, e in data["numerator"]}, len(variables))
        den = tuple((tuple(v), int(m)) for v, m in data["denominator"])
        return cls(num, den, variables)


def _one_minus(v: Sequence[int]) -> MultiPoly:
    n = len(v)
    return MultiPoly({(0,) * n: 1, tuple(v): -1}, n)


def _content(v: Exponent) -> int:
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def _geometric_sum(w: Exponent, k: int) -> MultiPoly:
    return MultiPoly({tuple(i * x for x in w): 1 for i in range(k)}, len(w))


def _divide(num: MultiPoly, den: MultiPoly, grading: Sequence[int]) -> MultiPoly | None:
    """Exact division by a polynomial whose top-graded part is a single term."""
    if num.is_zero():
        return num

    def grade(e):
        return sum(g * x for g, x in zip(grading, e))

    lead = max(den.terms, key=lambda e: (grade(e), e))
    if sum(1 for e in den.terms if grade(e) == grade(lead)) != 1:
        return None
    lc = den.terms[lead]
    lo = num.grade_range(grading)[0] - min(grade(e) for e in den.terms)
    rem = dict(num.terms)
    quot: dict[Exponent, int] = {}
    while rem:
        e = max(rem, key=lambda x: (grade(x), x))
        c = rem[e]
        if c % lc:
            return None
        q = tuple(a - b for a, b in zip(e, lead))
        if grade(q) < lo:
            return None
        qc = c // lc
        quot[q] = quot.get(q, 0) + qc
        for de, dc in den.terms.items():
            te = tuple(a + b for a, b in zip(q, de))
            rem[te] = rem.get(te, 0) - qc * dc
            if not rem[te]:
                del rem[te]
    return MultiPoly(quot, num.arity)


def positive_grading(R: RationalSeries) -> list[int]:
    """A weight vector that is positive on every denominator exponent.

    All-ones when it works; otherwise a small search over weights, which is the
    shift certificate needed to expand Laurent series.
    """
    n = R.arity
    vs = [v for v, _ in R.denominator]
    ones = [1] * n
    if all(sum(v) > 0 for v in vs):
        return ones
    from itertools import product

    for bound in range(2, 12):
        for w in product(range(1, bound + 1), repeat=n):
            if max(w) != bound:
                continue
            if all(sum(a * b for a, b in zip(w, v)) > 0 for v in vs):
                return list(w)
    raise SeriesError("denominator exponents admit no positive grading; series does not expand")


def expand(R: RationalSeries, bound: int, grading: Sequence[int] | None = None) -> dict[Exponent, int]:
    """Coefficients of all monomials of graded degree <= bound (zeros omitted).

    ``grading`` defaults to total degree; Laurent series need a weight vector
    that is positive on every denominator exponent.
    """
    grading = list(grading) if grading is not None else [1] * R.arity
    for v, _ in R.denominator:
        if sum(g * x for g, x in zip(grading, v)) <= 0:
            raise SeriesError(
                f"denominator factor (1 - t^{v}) has nonpositive grade; pass a grading (shift certificate)"
            )

    def grade(e):
        return sum(g * x for g, x in zip(grading, e))

    coeffs = {e: c for e, c in R.numerator.terms.items() if grade(e) <= bound}
    for v, m in R.denominator:
        gv = grade(v)
        for _ in range(m):
            out: dict[Exponent, int] = {}
            for e, c in coeffs.items():
                k = 0
                cur = e
                while grade(cur) <= bound:
                    out[cur] = out.get(cur, 0) + c
                    cur = tuple(a + b for a, b in zip(cur, v))
                    k += 1
            coeffs = {e: c for e, c in out.items() if c}
    return coeffs


def coefficient_list(R: RationalSeries, bound: int) -> list[int]:
    """Univariate convenience: ``[c_0, ..., c_bound]``."""
    if R.arity != 1:
        raise SeriesError("coefficient_list needs a univariate series")
    table = expand(R, bound)
    return [table.get((n,), 0) for n in range(bound + 1)]


def serialize(R: RationalSeries) -> str:
    num = format_poly(R.numerator, R.variables)
    if not R.denominator:
        den = "1"
    else:
        parts = []
        for v, m in R.denominator:
            f = f"(1 - {format_monomial(v, R.variables)})"
            parts.append(f if m == 1 else f"{f}^{m}")
        den = "*".join(parts)
    return f"({num}) / ({den})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\()|(\))|(/))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    kinds = ["int", "name", "^", "*", "+", "-", "(", ")", "/"]
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SeriesError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, variables):
        self.toks = tokens
        self.i = 0
        self.vars = list(variables)

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "")

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise SeriesError(f"expected {kind!r}, found {tok[1]!r}")
        self.i += 1
        return tok[1]

    def power(self, exps):
        name = self.take("name")
        if name not in self.vars:
            self.vars.append(name)
            for e in exps:
                e.append(0)
        idx = self.vars.index(name)
        k = 1
        if self.peek()[0] == "^":
            self.take("^")
            sign = -1 if self.peek()[0] == "-" else 1
            if sign < 0:
                self.take("-")
            k = sign * int(self.take("int"))
        return idx, k

    def monomial(self):
        e = [0] * len(self.vars)
        holder = [e]
        idx, k = self.power(holder)
        e = holder[0]
        e[idx] += k
        while self.peek()[0] == "*" and self.peek(1)[0] == "name":
            self.take("*")
            idx, k = self.power(holder)
            holder[0][idx] += k
        return holder[0]

    def term(self, terms_store):
        sign = 1
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1
        if self.peek()[0] == "int":
            c = int(self.take("int"))
            if self.peek()[0] == "*":
                self.take("*")
                e = self.monomial()
            else:
                e = [0] * len(self.vars)
        else:
            c = 1
            e = self.monomial()
        terms_store.append((e, sign * c))

    def numerator(self):
        store = []
        self.term(store)
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])
            before = len(store)
            self.term(store)
            if op == "-":
                e, c = store[before]
                store[before] = (e, -c)
        return store

    def denominator(self):
        factors = []
        if self.peek()[0] == "int" and self.peek()[1] == "1" and self.peek(1)[0] == ")":
            self.take("int")
            return factors
        while True:
            self.take("(")
            if self.take("int") != "1":
                raise SeriesError("denominator factors must read (1 - monomial)")
            self.take("-")
            e = self.monomial()
            self.take(")")
            m = 1
            if self.peek()[0] == "^":
                self.take("^")
                m = int(self.take("int"))
            factors.append((e, m))
            if self.peek()[0] != "*":
                return factors
            self.take("*")


def parse_series(text: str, variables: Sequence[str] = ()) -> RationalSeries:
    """Inverse of :func:`serialize`."""
    p = _Parser(_tokenize(text), variables)
    p.take("(")
    if p.peek()[0] == "int" and p.peek()[1] == "0" and p.peek(1)[0] == ")":
        p.take("int")
        num_terms = []
    else:
        num_terms = p.numerator()
    p.take(")")
    p.take("/")
    p.take("(")
    den = p.denominator()
    p.take(")")
    if p.peek()[0] != "eof":
        raise SeriesError(f"trailing input: {p.peek()[1]!r}")
    n = len(p.vars)
    if n == 0:
        raise SeriesError("series mentions no variables; pass variables explicitly")

    def pad(e):
        return tuple(list(e) + [0] * (n - len(e)))

    terms: dict[Exponent, int] = {}
    for e, c in num_terms:
        e = pad(e)
        terms[e] = terms.get(e, 0) + c
    return RationalSeries(MultiPoly(terms, n), tuple((pad(e), m) for e, m in den), tuple(p.vars))


def binomial_series_coefficient(n: int, k: int) -> int:
    """Coefficient of t^n in ``1/(1-t)^k``; handy for checks."""
    return comb(n + k - 1, k - 1) if k > 0 else int(n == 0)
