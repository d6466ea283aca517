"""Command line front end.

Exit status: 0 on success, 1 on usage errors (bad flags, missing files), 2
when the input is well formed but the computation is refused (not
pseudo-effective, no certified rational form, invalid file contents, ...).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import random
import sys
from fractions import Fraction
from typing import Sequence

from .cones import ConeError, RationalCone, zariski_chambers
from .exact import LinearAlgebraError, RatVector
from .io import (
    ParseError,
    format_divisor,
    load_series,
    parse_divisor,
    parse_divisor_list,
    parse_fan_with_group,
    parse_surface,
    _read_json,
)
from .series import (
    SeriesError,
    TableOracle,
    chamber_reduction,
    expand,
    poincare_series,
    quasi_poly_fit,
)
from .surface import SurfaceError
from .toric import (
    ToricError,
    ToricH0Oracle,
    euler_chow_divisors,
    euler_chow_points,
    euler_chow_rank_one,
    euler_chow_top,
    fixed_part_toric,
    h0_toric,
    surface_lattice_from_fan,
)
from .zariski import ZariskiError, zariski_decompose

DOMAIN_ERRORS = (
    ParseError,
    SeriesError,
    ZariskiError,
    ToricError,
    ConeError,
    SurfaceError,
    LinearAlgebraError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def cmd_zariski_decompose(args) -> str:
    S = parse_surface(args.surface)
    D = parse_divisor(args.divisor, S.basis_names)
    z = zariski_decompose(S, D)
    return f"P = {S.format_divisor(z.P)} ; N = {S.format_divisor(z.N)}"


def cmd_chambers(args) -> str:
    from .io import surface_nef_generators

    S = parse_surface(args.surface)
    if args.generators:
        gens = parse_divisor_list(args.generators, S.basis_names)
    else:
        gens = surface_nef_generators(_read_json(args.surface), S)
        if not gens:
            raise UsageError("chambers: pass --generators or give nef_generators in the surface file")
    W = RationalCone(gens, S.rank)
    chambers = zariski_chambers(S, W)
    lines = []
    for ch in chambers:
        label = "{" + ", ".join(S.labels[i] for i in sorted(ch.gamma)) + "}"
        rays = " | ".join(S.format_divisor(r) for r in ch.cone.rays)
        lines.append(f"chamber {label}: rays {rays}")
    if args.samples:
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.samples):
            p = sum((g * rng.randint(0, 9) for g in W.generators), RatVector.zero(S.rank))
            if p.is_zero():
                continue
            support = zariski_decompose(S, p).support
            if not any(ch.gamma == support and ch.contains(p) for ch in chambers):
                bad += 1
        lines.append(f"verified {args.samples} samples (seed {args.seed}): {bad} mismatches")
        if bad:
            raise ZariskiError("\n".join(lines))
    return "\n".join(lines)


def _table_oracle(path, key_len: int | None = None) -> TableOracle:
    data = _read_json(path)
    if isinstance(data, list):
        return TableOracle({(n,): v for n, v in enumerate(data)})
    if not isinstance(data, dict) or "entries" not in data:
        raise ParseError("expected a list of values or an object with 'entries'", str(path))
    return TableOracle({tuple(k): v for k, v in data["entries"]})


def cmd_poincare(args) -> str:
    if args.fan:
        F, group = parse_fan_with_group(args.fan)
        D = parse_divisor(args.divisor, F.ray_names) if args.divisor else None
        if D is None:
            raise UsageError("poincare: --divisor is required with --fan")

        def h(n):
            return h0_toric(F, [c * n for c in D])

    elif args.table:
        oracle = _table_oracle(args.table)

        def h(n):
            return oracle((n,))

    else:
        raise UsageError("poincare: pass --fan with --divisor, or --table")
    R = poincare_series(h, effective=args.effective, r_hint=args.r_hint, window=args.window)
    return R.reduced().to_string() if args.reduce else R.to_string()


def cmd_multi_series(args) -> str:
    if args.fan:
        F, group = parse_fan_with_group(args.fan)
        S = surface_lattice_from_fan(F, group)
        h = ToricH0Oracle(F, group)
    elif args.surface and args.table:
        S = parse_surface(args.surface)
        h = _table_oracle(args.table)
    else:
        raise UsageError("multi-series: pass --fan, or --surface with --table")
    D = parse_divisor(args.base, S.basis_names) if args.base else RatVector.zero(S.rank)
    bigs = parse_divisor_list(args.bigs, S.basis_names)
    rep = chamber_reduction(S, D, bigs, h, allow_non_big=args.allow_non_big)
    out = [rep.series.to_string()]
    if args.verbose:
        for ch in rep.chambers:
            out.append("chamber {" + ", ".join(S.labels[i] for i in sorted(ch.gamma)) + "}")
        for rec in rep.shifts:
            out.append(f"shift n={rec.shift} for coset {list(rec.coset)} (scale {rec.scale})")
    return "\n".join(out)


def cmd_toric_h0(args) -> str:
    F, _ = parse_fan_with_group(args.fan)
    D = parse_divisor(args.divisor, F.ray_names)
    if args.fixed_part:
        return format_divisor(fixed_part_toric(F, D).coeffs, F.ray_names)
    return str(h0_toric(F, D))


def cmd_euler_chow(args) -> str:
    F, group = parse_fan_with_group(args.fan)
    c = args.codim
    if not 0 <= c <= F.dim:
        raise ToricError("bad-dimension", f"codimension {c} outside 0..{F.dim}")
    if c == 1:
        return euler_chow_divisors(F, group).to_string()
    if c == F.dim:
        return euler_chow_points(F).to_string()
    if c == 0:
        return euler_chow_top(F).to_string()
    return euler_chow_rank_one(F, F.dim - c, assume_rank_one=args.assume_rank_one).to_string()


def cmd_expand(args) -> str:
    if args.series:
        R = load_series(args.series)
    elif args.string:
        from .series import parse_series

        R = parse_series(args.string)
    else:
        raise UsageError("expand: pass --series FILE or --string TEXT")
    grading = [int(x) for x in args.grading.split(",")] if args.grading else None
    table = expand(R, args.bound, grading)
    if R.arity == 1 and not R.is_laurent:
        return "\n".join(f"{n} {table.get((n,), 0)}" for n in range(args.bound + 1))
    w = grading or [1] * R.arity
    keys = sorted(table, key=lambda e: (sum(a * b for a, b in zip(w, e)), e))
    return "\n".join(" ".join(str(x) for x in e) + f" {table[e]}" for e in keys)


def cmd_fit_quasipoly(args) -> str:
    if args.values:
        values = [int(x) for x in args.values.replace(",", " ").split()]
    elif args.values_file:
        values = [int(x) for x in json.loads(open(args.values_file).read())]
    else:
        raise UsageError("fit-quasipoly: pass --values or --values-file")
    q = quasi_poly_fit(values, args.max_period)
    lines = [f"period {q.period} onset {q.onset}"]
    for rho, row in enumerate(q.table):
        c, b, a = (list(row) + [Fraction(0)] * 3)[:3]
        lines.append(f"n = {rho} mod {q.period}: a = {a}, b = {b}, c = {c}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zariski-series", description="Zariski decompositions, chambers and rational series.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("zariski-decompose", help="Zariski decomposition of a divisor")
    s.add_argument("--surface", required=True)
    s.add_argument("--divisor", required=True, help='e.g. "2E+1f" or "2,1"')
    s.set_defaults(func=cmd_zariski_decompose)

    s = sub.add_parser("chambers", help="Zariski chambers of a cone of divisors")
    s.add_argument("--surface", required=True)
    s.add_argument("--generators", help='divisors separated by ";" (default: nef_generators of the file)')
    s.add_argument("--samples", type=int, default=0, help="random lattice points to check against the chambers")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_chambers)

    s = sub.add_parser("poincare", help="rational form of sum h0(nD) t^n")
    s.add_argument("--fan")
    s.add_argument("--divisor", help="ray coefficients or a combination of ray names")
    s.add_argument("--table", help="JSON list of h0(nD) for n = 0, 1, ...")
    s.add_argument("--effective", action="store_true")
    s.add_argument("--r-hint", type=int, default=None)
    s.add_argument("--window", type=int, default=None)
    s.add_argument("--reduce", action="store_true", help="cancel common factors")
    s.set_defaults(func=cmd_poincare)

    s = sub.add_parser("multi-series", help="sum over m of h0(D + sum m_i D_i) t^m")
    s.add_argument("--fan")
    s.add_argument("--surface")
    s.add_argument("--table", help='JSON {"entries": [[class coords, h0], ...]}')
    s.add_argument("--base", help="the divisor D (default 0)")
    s.add_argument("--bigs", required=True, help='divisors D_i separated by ";"')
    s.add_argument("--allow-non-big", action="store_true")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_multi_series)

    s = sub.add_parser("toric-h0", help="h0 (or fixed part) of a torus-invariant divisor")
    s.add_argument("--fan", required=True)
    s.add_argument("--divisor", required=True)
    s.add_argument("--fixed-part", action="store_true")
    s.set_defaults(func=cmd_toric_h0)

    s = sub.add_parser("euler-chow", help="Euler-Chow series of a toric variety")
    s.add_argument("--fan", required=True)
    s.add_argument("--codim", type=int, required=True)
    s.add_argument("--assume-rank-one", action="store_true",
                   help="assert the Chow group in this codimension is Z with equal orbit classes")
    s.set_defaults(func=cmd_euler_chow)

    s = sub.add_parser("expand", help="coefficients of a series up to a degree bound")
    s.add_argument("--series", help="JSON or canonical-string file")
    s.add_argument("--string", help="canonical series string")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--grading", help="comma-separated positive weights (Laurent series)")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("fit-quasipoly", help="fit a degree-2 quasi-polynomial")
    s.add_argument("--values")
    s.add_argument("--values-file")
    s.add_argument("--max-period", type=int, default=6)
    s.set_defaults(func=cmd_fit_quasipoly)
    return p


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    err, help_out = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(help_out):
            args = parser.parse_args(list(argv))
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        out = args.func(args)
    except UsageError as exc:
        return 1, "", f"usage error: {exc}\n{parser.format_usage()}"
    except SystemExit as exc:  # --help
        return (0 if not exc.code else 1), help_out.getvalue(), err.getvalue()
    except FileNotFoundError as exc:
        return 1, "", f"usage error: file not found: {exc.filename}\n"
    except DOMAIN_ERRORS as exc:
        return 2, "", f"error [{getattr(exc, 'code', 'domain-error')}]: {exc}\n"
    return 0, out + "\n", ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
