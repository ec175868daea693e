"""Exact text encodings of rationals, vectors and matrices."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Sequence


class MalformedDocument(ValueError):
    """Structurally invalid input; ``location`` names the offending field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qvec(v: Sequence) -> list[str]:
    return [q(x) for x in v]


def qmat(m: Sequence[Sequence]) -> list[list[str]]:
    return [qvec(r) for r in m]


def parse_q(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise MalformedDocument(where, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise MalformedDocument(where, f"not a rational: {value!r}") from None
    raise MalformedDocument(where, f"expected a rational string, got {type(value).__name__}")


def parse_vec(value: Any, where: str, dim: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise MalformedDocument(where, "expected a list")
    out = tuple(parse_q(x, f"{where}[{i}]") for i, x in enumerate(value))
    if dim is not None and len(out) != dim:
        raise MalformedDocument(where, f"expected length {dim}, got {len(out)}")
    return out


def parse_mat(value: Any, where: str, ncols: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise MalformedDocument(where, "expected a list of rows")
    return tuple(parse_vec(r, f"{where}[{i}]", ncols) for i, r in enumerate(value))


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()
