"""Versioned JSON documents for every data kind the CLI reads or writes.

Rationals are written as ``"n/d"`` strings (plain integers for whole
numbers). Unknown fields are rejected so typos never pass silently.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from ..killing import Flavor, SummandSpec
from ..killing.certificate import KIND as CERT_KIND
from ..killing.certificate import from_document as certificate_from_document
from ..nccc import Cell, NcccDescriptor, RankClass
from ..ordgrp import DirectSum, FinGen, Lex, ScaledOrderedGroup, SpanKind, State, Subgroup, Tail
from ..serial import MalformedDocument, parse_mat, parse_vec, qmat, qvec

VERSION = 1
KINDS = ("group", "subgroup", "state", "summands", "kill-certificate", "nccc-descriptor", "rank-class", "report")


def _expect(doc: Any, required: set, where: str, optional: set = frozenset()) -> dict:
    if not isinstance(doc, dict):
        raise MalformedDocument(where, "expected an object")
    missing = required - doc.keys()
    extra = doc.keys() - required - optional
    if missing:
        raise MalformedDocument(where, f"missing fields {sorted(missing)}")
    if extra:
        raise MalformedDocument(where, f"unknown fields {sorted(extra)}")
    return doc


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedDocument(where, "expected an integer")
    return value


def _ints(value: Any, where: str) -> tuple:
    if not isinstance(value, list):
        raise MalformedDocument(where, "expected a list of integers")
    return tuple(_int(v, f"{where}[{i}]") for i, v in enumerate(value))


def _header(doc: Any, kind: str, fields: set, optional: set = frozenset()) -> dict:
    doc = _expect(doc, {"kind", "version"} | fields, kind, optional)
    if doc["kind"] != kind:
        raise MalformedDocument(f"{kind}.kind", f"expected {kind!r}, got {doc['kind']!r}")
    if doc["version"] != VERSION:
        raise MalformedDocument(f"{kind}.version", f"unsupported version {doc['version']!r}")
    return doc


# cones and groups


def cone_to_doc(cone) -> dict:
    if isinstance(cone, FinGen):
        return {"type": "FinGen", "dim": cone.dim, "generators": qmat(cone.generators)}
    if isinstance(cone, Lex):
        return {"type": "Lex", "dim": cone.dim, "functionals": qmat(cone.functionals), "tail": cone.tail.value}
    return {"type": "DirectSum", "parts": [cone_to_doc(p) for p in cone.parts]}


def cone_from_doc(doc: Any, where: str = "cone"):
    if not isinstance(doc, dict) or "type" not in doc:
        raise MalformedDocument(where, "expected a cone object with a type")
    t = doc["type"]
    if t == "FinGen":
        doc = _expect(doc, {"type", "dim", "generators"}, where)
        dim = _int(doc["dim"], f"{where}.dim")
        return FinGen(dim, parse_mat(doc["generators"], f"{where}.generators", dim))
    if t == "Lex":
        doc = _expect(doc, {"type", "dim", "functionals"}, where, {"tail"})
        dim = _int(doc["dim"], f"{where}.dim")
        tail = doc.get("tail", Tail.ZERO_ONLY.value)
        if tail not in {x.value for x in Tail}:
            raise MalformedDocument(f"{where}.tail", f"unknown tail {tail!r}")
        return Lex(dim, parse_mat(doc["functionals"], f"{where}.functionals", dim), Tail(tail))
    if t == "DirectSum":
        doc = _expect(doc, {"type", "parts"}, where)
        if not isinstance(doc["parts"], list) or not doc["parts"]:
            raise MalformedDocument(f"{where}.parts", "expected a nonempty list")
        return DirectSum(tuple(cone_from_doc(p, f"{where}.parts[{i}]") for i, p in enumerate(doc["parts"])))
    raise MalformedDocument(f"{where}.type", f"unknown cone type {t!r}")


def group_to_doc(g: ScaledOrderedGroup) -> dict:
    return {"kind": "group", "version": VERSION, "dim": g.dim, "cone": cone_to_doc(g.cone), "unit": qvec(g.unit)}


def group_from_doc(doc: Any) -> ScaledOrderedGroup:
    doc = _header(doc, "group", {"dim", "cone", "unit"})
    dim = _int(doc["dim"], "group.dim")
    cone = cone_from_doc(doc["cone"], "group.cone")
    if cone.dim != dim:
        raise MalformedDocument("group.cone", f"cone dimension {cone.dim} differs from group dimension {dim}")
    return ScaledOrderedGroup(dim, cone, parse_vec(doc["unit"], "group.unit", dim))


def subgroup_to_doc(h: Subgroup) -> dict:
    return {"kind": "subgroup", "version": VERSION, "dim": h.dim, "span": h.span_kind.value, "generators": qmat(h.generators)}


def subgroup_from_doc(doc: Any) -> Subgroup:
    doc = _header(doc, "subgroup", {"dim", "generators"}, {"span"})
    dim = _int(doc["dim"], "subgroup.dim")
    span = doc.get("span", SpanKind.Q.value)
    if span not in {x.value for x in SpanKind}:
        raise MalformedDocument("subgroup.span", f"unknown span kind {span!r}")
    return Subgroup(dim, parse_mat(doc["generators"], "subgroup.generators", dim), SpanKind(span))


def state_to_doc(s: State) -> dict:
    return {"kind": "state", "version": VERSION, "functional": qvec(s.functional)}


def state_from_doc(doc: Any) -> State:
    doc = _header(doc, "state", {"functional"})
    return State(parse_vec(doc["functional"], "state.functional"))


def summands_to_doc(summands) -> dict:
    return {
        "kind": "summands",
        "version": VERSION,
        "summands": [{"flavor": s.flavor.value, "group": group_to_doc(s.group)} for s in summands],
    }


def summands_from_doc(doc: Any) -> list[SummandSpec]:
    doc = _header(doc, "summands", {"summands"})
    if not isinstance(doc["summands"], list) or not doc["summands"]:
        raise MalformedDocument("summands.summands", "expected a nonempty list")
    out = []
    for i, s in enumerate(doc["summands"]):
        s = _expect(s, {"flavor", "group"}, f"summands[{i}]")
        if s["flavor"] not in {f.value for f in Flavor}:
            raise MalformedDocument(f"summands[{i}].flavor", f"unknown flavor {s['flavor']!r}")
        out.append(SummandSpec(group_from_doc(s["group"]), Flavor(s["flavor"])))
    return out


def descriptor_to_doc(d: NcccDescriptor) -> dict:
    return {
        "kind": "nccc-descriptor",
        "version": VERSION,
        "f0_blocks": list(d.f0_blocks),
        "cells": [{"n": c.n, "r": c.r, "mult": list(c.mult)} for c in d.cells],
    }


def descriptor_from_doc(doc: Any) -> NcccDescriptor:
    doc = _header(doc, "nccc-descriptor", {"f0_blocks", "cells"})
    if not isinstance(doc["cells"], list):
        raise MalformedDocument("nccc-descriptor.cells", "expected a list")
    cells = []
    for i, c in enumerate(doc["cells"]):
        w = f"nccc-descriptor.cells[{i}]"
        c = _expect(c, {"n", "r", "mult"}, w)
        try:
            cells.append(Cell(_int(c["n"], f"{w}.n"), _int(c["r"], f"{w}.r"), _ints(c["mult"], f"{w}.mult")))
        except ValueError as exc:
            if isinstance(exc, MalformedDocument):
                raise
            raise MalformedDocument(w, str(exc)) from None
    blocks = _ints(doc["f0_blocks"], "nccc-descriptor.f0_blocks")
    if any(b < 1 for b in blocks):
        raise MalformedDocument("nccc-descriptor.f0_blocks", "block sizes must be positive")
    return NcccDescriptor(blocks, tuple(cells))


def rank_class_to_doc(rc: RankClass) -> dict:
    return {
        "kind": "rank-class",
        "version": VERSION,
        "y": list(rc.y),
        "s_membership": None if rc.s_membership is None else list(rc.s_membership),
    }


def rank_class_from_doc(doc: Any) -> RankClass:
    doc = _header(doc, "rank-class", {"y"}, {"s_membership"})
    w = doc.get("s_membership")
    return RankClass(_ints(doc["y"], "rank-class.y"), None if w is None else _ints(w, "rank-class.s_membership"))


_READERS = {
    "group": group_from_doc,
    "subgroup": subgroup_from_doc,
    "state": state_from_doc,
    "summands": summands_from_doc,
    CERT_KIND: certificate_from_document,
    "nccc-descriptor": descriptor_from_doc,
    "rank-class": rank_class_from_doc,
}


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedDocument(str(path), f"cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(str(path), f"invalid JSON: {exc.msg} at line {exc.lineno}") from None


def load(path: str | Path, kind: str):
    """Read a document of the given kind from disk."""
    doc = read_json(path)
    if isinstance(doc, dict) and doc.get("kind") != kind:
        raise MalformedDocument(str(path), f"expected a {kind!r} document, got {doc.get('kind')!r}")
    return _READERS[kind](doc)


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def dump(doc: dict) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]" if m.group(1).strip() else "[]", text) + "\n"
