"""JSON file formats for surfaces, fans and series, plus divisor strings."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema

from .exact import RatVector
from .series.poly import RationalSeries, SeriesError, parse_series
from .surface import SurfaceError, SurfaceLattice, format_combination
from .toric import DivisorClassGroup, Fan, ToricError, divisor_class_group


class ParseError(ValueError):
    """Invalid input; ``path`` locates the offending field (JSON-pointer style)."""

    code = "invalid-input"

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("zariski_series").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts) if parts else "/"


def validate(data: Any, schema_name: str) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ParseError(err.message, _pointer(err.absolute_path))


def _read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg}) at line {exc.lineno}", str(path)) from None


# divisors ---------------------------------------------------------------

_NUMBER = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*({_NUMBER})?\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)\s*")
_VECTOR = re.compile(rf"^\s*-?{_NUMBER}(\s*[, ]\s*-?{_NUMBER})*\s*$")


def parse_divisor(text: str | Sequence, names: Sequence[str]) -> RatVector:
    """``"2E+1f"``, ``"1/2 E - f"`` or a coordinate list ``"2,1"`` / ``[2, 1]``."""
    if not isinstance(text, str):
        vec = RatVector(Fraction(x) for x in text)
        if len(vec) != len(names):
            raise ParseError(f"expected {len(names)} coordinates, got {len(vec)}", "divisor")
        return vec
    if text.strip() == "0":
        return RatVector([0] * len(names))
    if _VECTOR.match(text):
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        return parse_divisor([Fraction(p) for p in parts], names)
    coords = [Fraction(0)] * len(names)
    pos = 0
    first = True
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty divisor", "divisor")
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse divisor near {text[pos:]!r}", "divisor")
        sign, num, name = m.groups()
        if sign is None and not first:
            raise ParseError(f"missing + or - before {name!r}", "divisor")
        if name not in names:
            raise ParseError(f"unknown basis name {name!r}; expected one of {list(names)}", "divisor")
        c = Fraction(num) if num else Fraction(1)
        coords[names.index(name)] += -c if sign == "-" else c
        first = False
        pos = m.end()
    return RatVector(coords)


def parse_divisor_list(text: str, names: Sequence[str]) -> list[RatVector]:
    """Divisors separated by ``;``."""
    return [parse_divisor(part, names) for part in text.split(";") if part.strip()]


def format_divisor(coords: Sequence, names: Sequence[str]) -> str:
    return format_combination(coords, names)


# surfaces ---------------------------------------------------------------

def surface_from_dict(data: dict) -> SurfaceLattice:
    validate(data, "surface")
    basis = data["basis"]
    n = len(basis)
    M = data["intersection_matrix"]
    if len(M) != n:
        raise ParseError(f"has {len(M)} rows, basis has {n} names", "/intersection_matrix")
    for i, row in enumerate(M):
        if len(row) != n:
            raise ParseError(f"has {len(row)} entries, expected {n}", f"/intersection_matrix/{i}")
    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j] != M[j][i]:
                raise ParseError(
                    f"matrix is not symmetric: entry ({i},{j}) = {M[i][j]} but entry ({j},{i}) = {M[j][i]}",
                    f"/intersection_matrix/{i}/{j}",
                )
    for k, c in enumerate(data["curves"]):
        if len(c["class"]) != n:
            raise ParseError(f"has {len(c['class'])} coordinates, expected {n}", f"/curves/{k}/class")
    try:
        return SurfaceLattice(
            M, [c["class"] for c in data["curves"]], [c["name"] for c in data["curves"]], basis
        )
    except SurfaceError as exc:
        raise ParseError(str(exc), "/curves") from None


def surface_nef_generators(data: dict, S: SurfaceLattice) -> list[RatVector]:
    return [parse_divisor(g, S.basis_names) for g in data.get("nef_generators", [])]


def surface_to_dict(S: SurfaceLattice, nef_generators: Sequence[Sequence] = ()) -> dict:
    out = {
        "basis": list(S.basis_names),
        "intersection_matrix": [[int(a) for a in row] for row in S.form],
        "curves": [{"name": l, "class": list(c.as_ints())} for l, c in zip(S.labels, S.curves)],
    }
    if nef_generators:
        out["nef_generators"] = [[int(x) for x in g] for g in nef_generators]
    return out


def parse_surface(path) -> SurfaceLattice:
    return surface_from_dict(_read_json(path))


# fans -------------------------------------------------------------------

def fan_from_dict(data: dict) -> tuple[Fan, DivisorClassGroup]:
    """The fan together with its class group in the declared (or default) basis."""
    validate(data, "fan")
    d = data["dim"]
    rays = data["rays"]
    for i, r in enumerate(rays):
        if len(r) != d:
            raise ParseError(f"has {len(r)} coordinates, dim is {d}", f"/rays/{i}")
    for i, c in enumerate(data["max_cones"]):
        for j, idx in enumerate(c):
            if idx >= len(rays):
                raise ParseError(f"ray index {idx} out of range (0..{len(rays) - 1})", f"/max_cones/{i}/{j}")
    names = data.get("ray_names", ())
    if names and len(names) != len(rays):
        raise ParseError(f"has {len(names)} names for {len(rays)} rays", "/ray_names")
    try:
        F = Fan(rays, data["max_cones"], names)
        group = divisor_class_group(F, data.get("class_basis"))
    except ToricError as exc:
        raise ParseError(f"{exc.code}: {exc}", "/") from None
    return F, group


def fan_to_dict(F: Fan, group: DivisorClassGroup | None = None, explicit_basis: bool = False) -> dict:
    out = {
        "dim": F.dim,
        "rays": [list(r) for r in F.rays],
        "max_cones": [list(c) for c in F.max_cones],
        "ray_names": list(F.ray_names),
    }
    if explicit_basis and group is not None and group.basis_rays is not None:
        out["class_basis"] = list(group.basis_rays)
    return out


def parse_fan(path) -> Fan:
    return fan_from_dict(_read_json(path))[0]


def parse_fan_with_group(path) -> tuple[Fan, DivisorClassGroup]:
    return fan_from_dict(_read_json(path))


# series -----------------------------------------------------------------

def series_from_dict(data: dict) -> RationalSeries:
    validate(data, "series")
    n = len(data["variables"])
    for i, (c, e) in enumerate(data["numerator"]):
        if len(e) != n:
            raise ParseError(f"exponent has {len(e)} entries, expected {n}", f"/numerator/{i}/1")
    for i, (v, m) in enumerate(data["denominator"]):
        if len(v) != n:
            raise ParseError(f"exponent has {len(v)} entries, expected {n}", f"/denominator/{i}/0")
        if not any(v):
            raise ParseError("zero exponent vector", f"/denominator/{i}/0")
    return RationalSeries.from_json(data)


def series_to_dict(R: RationalSeries) -> dict:
    out = R.to_json()
    out["string"] = R.to_string()
    return out


def load_series(path) -> RationalSeries:
    """A series file: JSON per the series schema, or the canonical string."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return series_from_dict(_read_json(path))
    try:
        return parse_series(text.strip())
    except SeriesError as exc:
        raise ParseError(str(exc), str(path)) from None
