"""Kill certificates and their document form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .. import __version__
from ..serial import MalformedDocument, digest, parse_mat, parse_vec, qmat, qvec

KIND = "kill-certificate"
VERSION = 1


@dataclass(frozen=True)
class SummandRecord:
    """Everything derived for one summand: kernel, quotient, cones, states."""

    zero_basis: tuple
    projection: tuple
    lift: tuple
    quotient_generators: tuple
    quotient_unit: tuple
    neg_rays: tuple
    neg_lineality: tuple
    sign_cone_rays: tuple
    sign_cone_facets: tuple
    state: tuple
    faithful: bool
    induced_state: tuple
    sign_states: tuple


@dataclass(frozen=True)
class KillCertificate:
    summands: tuple  # (dim, generators, unit, flavor) per summand, as given
    subgroup: tuple  # input generators
    seed: int
    sample_count: int
    input_digest: str
    trivial: bool
    separator: Optional[tuple]
    extended: bool
    subgroup_basis: tuple
    image_basis: tuple
    image_separator: Optional[tuple]
    pure_coordinate: tuple
    records: tuple
    sign_separator: Optional[tuple]
    samples: tuple  # (point, signs)
    verdict: str
    tool_version: str = __version__

    def to_document(self) -> dict:
        return {
            "kind": KIND,
            "version": VERSION,
            "tool_version": self.tool_version,
            "input": input_document(self.summands, self.subgroup, self.seed, self.sample_count),
            "input_digest": self.input_digest,
            "trivial": self.trivial,
            "separator": None if self.separator is None else qvec(self.separator),
            "extended": self.extended,
            "subgroup_basis": qmat(self.subgroup_basis),
            "image_basis": qmat(self.image_basis),
            "image_separator": None if self.image_separator is None else qvec(self.image_separator),
            "pure_coordinate": [qmat(b) for b in self.pure_coordinate],
            "records": [_record_doc(r) for r in self.records],
            "sign_separator": None if self.sign_separator is None else qvec(self.sign_separator),
            "samples": [{"point": qvec(p), "signs": list(s)} for p, s in self.samples],
            "verdict": self.verdict,
        }


def input_document(summands, subgroup, seed: int, sample_count: int) -> dict:
    return {
        "summands": [
            {"dim": dim, "generators": qmat(gens), "unit": qvec(unit), "flavor": flavor}
            for dim, gens, unit, flavor in summands
        ],
        "subgroup": qmat(subgroup),
        "seed": seed,
        "samples": sample_count,
    }


def input_digest(summands, subgroup, seed: int, sample_count: int) -> str:
    return digest(input_document(summands, subgroup, seed, sample_count))


_RECORD_MATS = (
    "zero_basis",
    "projection",
    "lift",
    "quotient_generators",
    "neg_rays",
    "neg_lineality",
    "sign_cone_rays",
    "sign_cone_facets",
    "sign_states",
)
_RECORD_VECS = ("quotient_unit", "state", "induced_state")


def _record_doc(r: SummandRecord) -> dict:
    out: dict[str, Any] = {k: qmat(getattr(r, k)) for k in _RECORD_MATS}
    out.update({k: qvec(getattr(r, k)) for k in _RECORD_VECS})
    out["faithful"] = r.faithful
    return out


_TOP_KEYS = {
    "kind",
    "version",
    "tool_version",
    "input",
    "input_digest",
    "trivial",
    "separator",
    "extended",
    "subgroup_basis",
    "image_basis",
    "image_separator",
    "pure_coordinate",
    "records",
    "sign_separator",
    "samples",
    "verdict",
}


def _expect(doc: Any, keys: set, where: str) -> dict:
    if not isinstance(doc, dict):
        raise MalformedDocument(where, "expected an object")
    missing = keys - doc.keys()
    extra = doc.keys() - keys
    if missing:
        raise MalformedDocument(where, f"missing fields {sorted(missing)}")
    if extra:
        raise MalformedDocument(where, f"unknown fields {sorted(extra)}")
    return doc


def _bool(value: Any, where: str) -> bool:
    if not isinstance(value, bool):
        raise MalformedDocument(where, "expected a boolean")
    return value


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedDocument(where, "expected an integer")
    return value


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise MalformedDocument(where, "expected a string")
    return value


def _opt_vec(value: Any, where: str) -> Optional[tuple]:
    return None if value is None else parse_vec(value, where)


def parse_input(doc: Any, where: str = "input"):
    doc = _expect(doc, {"summands", "subgroup", "seed", "samples"}, where)
    if not isinstance(doc["summands"], list):
        raise MalformedDocument(f"{where}.summands", "expected a list")
    summands = []
    for i, s in enumerate(doc["summands"]):
        w = f"{where}.summands[{i}]"
        s = _expect(s, {"dim", "generators", "unit", "flavor"}, w)
        dim = _int(s["dim"], f"{w}.dim")
        summands.append(
            (dim, parse_mat(s["generators"], f"{w}.generators", dim), parse_vec(s["unit"], f"{w}.unit", dim), _str(s["flavor"], f"{w}.flavor"))
        )
    total = sum(s[0] for s in summands)
    subgroup = parse_mat(doc["subgroup"], f"{where}.subgroup", total)
    return tuple(summands), subgroup, _int(doc["seed"], f"{where}.seed"), _int(doc["samples"], f"{where}.samples")


def from_document(doc: Any) -> KillCertificate:
    doc = _expect(doc, _TOP_KEYS, "certificate")
    if doc["kind"] != KIND:
        raise MalformedDocument("certificate.kind", f"expected {KIND!r}")
    if doc["version"] != VERSION:
        raise MalformedDocument("certificate.version", f"unsupported version {doc['version']!r}")
    summands, subgroup, seed, count = parse_input(doc["input"])
    records = []
    if not isinstance(doc["records"], list):
        raise MalformedDocument("certificate.records", "expected a list")
    for i, r in enumerate(doc["records"]):
        w = f"certificate.records[{i}]"
        r = _expect(r, set(_RECORD_MATS) | set(_RECORD_VECS) | {"faithful"}, w)
        fields = {k: parse_mat(r[k], f"{w}.{k}") for k in _RECORD_MATS}
        fields.update({k: parse_vec(r[k], f"{w}.{k}") for k in _RECORD_VECS})
        fields["faithful"] = _bool(r["faithful"], f"{w}.faithful")
        records.append(SummandRecord(**fields))
    if not isinstance(doc["samples"], list) or not isinstance(doc["pure_coordinate"], list):
        raise MalformedDocument("certificate", "samples and pure_coordinate must be lists")
    samples = []
    for i, s in enumerate(doc["samples"]):
        w = f"certificate.samples[{i}]"
        s = _expect(s, {"point", "signs"}, w)
        if not isinstance(s["signs"], list):
            raise MalformedDocument(f"{w}.signs", "expected a list")
        samples.append((parse_vec(s["point"], f"{w}.point"), tuple(_int(x, f"{w}.signs") for x in s["signs"])))
    return KillCertificate(
        summands=summands,
        subgroup=subgroup,
        seed=seed,
        sample_count=count,
        input_digest=_str(doc["input_digest"], "certificate.input_digest"),
        trivial=_bool(doc["trivial"], "certificate.trivial"),
        separator=_opt_vec(doc["separator"], "certificate.separator"),
        extended=_bool(doc["extended"], "certificate.extended"),
        subgroup_basis=parse_mat(doc["subgroup_basis"], "certificate.subgroup_basis"),
        image_basis=parse_mat(doc["image_basis"], "certificate.image_basis"),
        image_separator=_opt_vec(doc["image_separator"], "certificate.image_separator"),
        pure_coordinate=tuple(parse_mat(b, f"certificate.pure_coordinate[{i}]") for i, b in enumerate(doc["pure_coordinate"])),
        records=tuple(records),
        sign_separator=_opt_vec(doc["sign_separator"], "certificate.sign_separator"),
        samples=tuple(samples),
        verdict=_str(doc["verdict"], "certificate.verdict"),
        tool_version=_str(doc["tool_version"], "certificate.tool_version"),
    )

