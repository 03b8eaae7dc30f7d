"""JSON documents for families and reports.

Rationals are written as JSON integers when integral and as ``"p/q"``
strings otherwise; floats are never emitted and never accepted.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .errors import HellyError, InputError
from .geometry import Box, HollowBox, Interval
from .intersection import Family, Kind, Member


class ParseError(InputError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


def format_rational(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_point(p) -> list:
    return [format_rational(c) for c in p]


def parse_rational(v: Any, path: str = "$") -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(path, f"rationals must be integers or 'p/q' strings, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        text = v.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ParseError(path, f"malformed rational {v!r}") from None
        if q == 0:
            raise ParseError(path, f"zero denominator in {v!r}")
        # non-lowest-terms input is normalized silently
        return Fraction(n, q)
    raise ParseError(path, f"expected a rational, got {type(v).__name__}")


def parse_point(v: Any, dim: Optional[int] = None, path: str = "$") -> tuple:
    if not isinstance(v, list):
        raise ParseError(path, "expected an array of rationals")
    if dim is not None and len(v) != dim:
        raise ParseError(path, f"expected {dim} coordinates, got {len(v)}")
    return tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(v))


def serialize_box(b: Box) -> dict:
    return {"lo": format_point(b.lo), "hi": format_point(b.hi)}


def serialize_member(m: Member) -> dict:
    h = m.hull
    return {"kind": m.kind.value, "lo": format_point(h.lo), "hi": format_point(h.hi)}


def serialize_family(f: Family) -> dict:
    return {"dim": f.dim, "members": [serialize_member(m) for m in f.members]}


def parse_family(doc: Any) -> Family:
    if not isinstance(doc, dict):
        raise ParseError("$", "family document must be an object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("$.dim", f"dim must be a positive integer, got {dim!r}")
    members = doc.get("members")
    if not isinstance(members, list) or not members:
        raise ParseError("$.members", "members must be a nonempty array")
    out = []
    for k, m in enumerate(members):
        path = f"$.members[{k}]"
        if not isinstance(m, dict):
            raise ParseError(path, "member must be an object")
        kind = m.get("kind")
        if kind not in ("solid", "hollow"):
            raise ParseError(f"{path}.kind", f"kind must be 'solid' or 'hollow', got {kind!r}")
        lo = parse_point(m.get("lo"), dim, f"{path}.lo")
        hi = parse_point(m.get("hi"), dim, f"{path}.hi")
        for i, (a, b) in enumerate(zip(lo, hi)):
            if a > b:
                raise ParseError(f"{path}.lo[{i}]", f"member {k}: lo {a} > hi {b}")
            if kind == "hollow" and a == b:
                raise ParseError(f"{path}.lo[{i}]", f"member {k}: hollow box degenerate on axis {i}")
        box = Box(tuple(Interval(a, b) for a, b in zip(lo, hi)))
        out.append(Member(Kind(kind), box if kind == "solid" else HollowBox(box)))
    return Family(tuple(out))


def load_json(path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_family(path) -> Family:
    return parse_family(load_json(path))


def dump_json(doc: Any, path=None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def report_document(command: str, config: dict, results: dict) -> dict:
    """A self-contained report: command, config echo (including the input family), results."""
    return {"command": command, "config": config, "results": results, "version": __version__}


def parse_patterns(doc: Any) -> list:
    if not isinstance(doc, list) or not all(isinstance(p, str) for p in doc):
        raise ParseError("$", "a pattern set is an array of strings")
    return list(doc)


def explain(exc: HellyError) -> str:
    return f"{type(exc).__name__}: {exc}"
