"""Built-in example algebras with designated ideals and expected invariants.

Entries live in ``data/<name>.json``. Each expected value carries a provenance tag:
PAPER (stated in the source text), DERIVED (independent rank/brute-force computation)
or TRIVIAL (follows from a dimension count).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .config import LieIdealError
from .exactlin import Subspace
from .liealg import (IdealData, LieAlgebra, is_ideal, make_ideal_data, subspace_from_json,
                     subspace_to_json, validate_lie_algebra)

NAMES = ("abelian2", "abelian3", "heisenberg3", "solvable2", "sl2", "sl2xsl2",
         "sl2_plus_center", "t3_upper_triangular")
PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL")


@dataclass(frozen=True)
class Expected:
    invariant: str
    value: object
    provenance: str
    ideal: str | None = None
    complex: str | None = None
    degree: int | None = None
    field: str | None = None
    note: str = ""

    def key(self) -> str:
        parts = [self.ideal or "-", self.invariant]
        if self.complex:
            parts += [self.complex, f"{self.field}{self.degree}"]
        return "/".join(parts)

    def to_json(self) -> dict:
        out = {"invariant": self.invariant, "value": self.value, "provenance": self.provenance}
        for k in ("ideal", "complex", "degree", "field"):
            if getattr(self, k) is not None:
                out[k] = getattr(self, k)
        if self.note:
            out["note"] = self.note
        return out

    @staticmethod
    def from_json(obj: dict) -> "Expected":
        if obj.get("provenance") not in PROVENANCE:
            raise ValueError(f"bad provenance tag {obj.get('provenance')!r}")
        return Expected(obj["invariant"], obj["value"], obj["provenance"], obj.get("ideal"),
                        obj.get("complex"), obj.get("degree"), obj.get("field"), obj.get("note", ""))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: LieAlgebra
    ideals: tuple            # ((name, Subspace), ...)
    expected: tuple = field(default=())
    description: str = ""

    def ideal(self, name: str) -> Subspace:
        for k, S in self.ideals:
            if k == name:
                return S
        raise KeyError(f"{self.name} has no ideal {name!r}; known: {[k for k, _ in self.ideals]}")

    def ideal_data(self, name: str, complement_rule="pivot") -> IdealData:
        return make_ideal_data(self.algebra, self.ideal(name), complement_rule)

    def pairs(self):
        return [(k, self.ideal_data(k)) for k, _ in self.ideals]

    def to_json(self) -> dict:
        return {"name": self.name, "description": self.description,
                "algebra": self.algebra.to_json(),
                "ideals": [{"name": k, "subspace": subspace_to_json(S)} for k, S in self.ideals],
                "expected": [e.to_json() for e in self.expected]}

    @staticmethod
    def from_json(obj: dict) -> "CorpusEntry":
        g = LieAlgebra.from_json(obj["algebra"])
        ideals = tuple((i["name"], subspace_from_json(i["subspace"])) for i in obj.get("ideals", []))
        exp = tuple(Expected.from_json(e) for e in obj.get("expected", []))
        entry = CorpusEntry(obj["name"], g, ideals, exp, obj.get("description", ""))
        _validate(entry)
        return entry


def _validate(entry: CorpusEntry):
    cert = validate_lie_algebra(entry.algebra)
    if not cert:
        raise LieIdealError(f"{entry.name}: not a Lie algebra", cert.witness)
    for k, S in entry.ideals:
        if S.ambient_dim != entry.algebra.dim:
            raise LieIdealError(f"{entry.name}/{k}: ambient dimension mismatch")
        c = is_ideal(entry.algebra, S)
        if not c:
            raise LieIdealError(f"{entry.name}/{k}: not an ideal", c.witness)


def evaluate(entry: CorpusEntry, e: Expected):
    """Recompute one expected-table value."""
    from .complexes import ComplexId, cohomology
    from .deform import certify_rigidity, certify_stability

    if e.invariant == "dim":
        return entry.algebra.dim if e.ideal is None else entry.ideal(e.ideal).dim
    if e.invariant == "lie":
        return bool(validate_lie_algebra(entry.algebra))
    d = entry.ideal_data(e.ideal)
    if e.invariant == "cohomology":
        rep = cohomology(ComplexId(e.complex, d), e.degree)
        return rep.table[e.degree][e.field]
    if e.invariant.startswith("stability_"):
        return bool(certify_stability(d, e.invariant[len("stability_"):]))
    if e.invariant.startswith("rigidity_"):
        return bool(certify_rigidity(d, e.invariant[len("rigidity_"):]))
    raise ValueError(f"unknown invariant {e.invariant!r}")


def self_check(entry: CorpusEntry) -> list:
    """List of (key, expected, got) mismatches; empty means every value re-derives."""
    bad = []
    for e in entry.expected:
        got = evaluate(entry, e)
        if got != e.value:
            bad.append((e.key(), e.value, got))
    return bad


@lru_cache(maxsize=None)
def _raw(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(NAMES)}")
    return resources.files("lieideal.data").joinpath(f"{name}.json").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load(name: str) -> CorpusEntry:
    return CorpusEntry.from_json(json.loads(_raw(name)))


def load(name: str, check: bool = False) -> CorpusEntry:
    entry = _load(name)
    if check:
        bad = self_check(entry)
        if bad:
            raise LieIdealError(f"{name}: expected table does not re-derive", {"mismatches": bad})
    return entry


def all_pairs():
    """Every (entry name, ideal name, IdealData) in the corpus."""
    out = []
    for n in NAMES:
        e = load(n)
        for k, d in e.pairs():
            out.append((n, k, d))
    return out
