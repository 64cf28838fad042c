"""Text documents for algebras, subalgebras and reports.

All documents are JSON. Rational numbers are always strings of the form
``"p"`` or ``"p/q"`` so nothing passes through floating point.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from .core import InputError, LieSuperalgebra, SubalgebraEmbedding

__all__ = [
    "AlgebraDocument",
    "SubalgebraDocument",
    "ReportDocument",
    "parse_rational",
    "format_rational",
    "parse_algebra",
    "print_algebra",
    "parse_subalgebra",
    "print_subalgebra",
    "parse_report",
    "print_report",
]

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise InputError(f"expected a rational string 'p' or 'p/q', got {text!r}")
    return Fraction(text.strip())


def format_rational(x) -> str:
    return str(Fraction(x))


Pairs = List[Tuple[str, str]]


@dataclass
class AlgebraDocument:
    name: str
    basis: List[Tuple[str, int]]
    brackets: List[Tuple[Tuple[str, str], Pairs]]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "basis": [[l, p] for l, p in self.basis],
            "brackets": [
                {"pair": [a, b], "value": [[l, c] for l, c in val]} for (a, b), val in self.brackets
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, obj) -> "AlgebraDocument":
        try:
            basis = [(str(l), int(p)) for l, p in obj["basis"]]
            brackets = []
            for entry in obj.get("brackets", []):
                a, b = entry["pair"]
                val = [(str(l), str(c)) for l, c in entry["value"]]
                brackets.append(((str(a), str(b)), val))
            return cls(str(obj.get("name", "")), basis, brackets, dict(obj.get("metadata", {})))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed algebra document: {exc}") from exc

    def build(self) -> LieSuperalgebra:
        labels = [l for l, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise InputError("duplicate basis labels")
        known = set(labels)
        table: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
        for (a, b), val in self.brackets:
            for lab in (a, b, *(l for l, _ in val)):
                if lab not in known:
                    raise InputError(f"unknown basis label {lab!r} in bracket [{a}, {b}]")
            if (a, b) in table:
                raise InputError(f"bracket [{a}, {b}] given twice")
            vec: Dict[str, Fraction] = {}
            for l, c in val:
                vec[l] = vec.get(l, Fraction(0)) + parse_rational(c)
            table[(a, b)] = vec
        return LieSuperalgebra.from_brackets(self.basis, table, name=self.name)

    @classmethod
    def from_algebra(cls, alg: LieSuperalgebra) -> "AlgebraDocument":
        lab = alg.labels
        brackets = []
        for (a, b) in sorted(alg.table):
            vec = alg.table[(a, b)]
            brackets.append(((lab[a], lab[b]), [(lab[c], format_rational(vec[c])) for c in sorted(vec)]))
        return cls(alg.name, list(zip(lab, alg.parities)), brackets)


@dataclass
class SubalgebraDocument:
    name: str
    vectors: List[Pairs]

    def to_json(self) -> dict:
        return {"name": self.name, "vectors": [[[l, c] for l, c in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, obj) -> "SubalgebraDocument":
        try:
            vectors = [[(str(l), str(c)) for l, c in v] for v in obj["vectors"]]
            return cls(str(obj.get("name", "")), vectors)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed subalgebra document: {exc}") from exc

    def build(self, alg: LieSuperalgebra) -> SubalgebraEmbedding:
        vecs = []
        for v in self.vectors:
            d: Dict[int, Fraction] = {}
            for l, c in v:
                i = alg.index(l)
                d[i] = d.get(i, Fraction(0)) + parse_rational(c)
            vecs.append(d)
        return SubalgebraEmbedding(alg, vecs, name=self.name)

    @classmethod
    def from_embedding(cls, h: SubalgebraEmbedding) -> "SubalgebraDocument":
        lab = h.parent.labels
        return cls(h.name, [[(lab[i], format_rational(v[i])) for i in sorted(v)] for v in h.vectors])


@dataclass
class ReportDocument:
    operation: str
    inputs: Dict[str, Any]
    result: Dict[str, Any]
    assumptions: Dict[str, Any]
    version: str

    def to_json(self) -> dict:
        return {
            "operation": self.operation,
            "inputs": self.inputs,
            "result": self.result,
            "assumptions": self.assumptions,
            "tool": {"name": "splitsuper", "version": self.version},
        }

    @classmethod
    def from_json(cls, obj) -> "ReportDocument":
        try:
            return cls(obj["operation"], obj["inputs"], obj["result"], obj["assumptions"], obj["tool"]["version"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed report document: {exc}") from exc


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def parse_algebra(text: str) -> AlgebraDocument:
    return AlgebraDocument.from_json(_loads(text))


def print_algebra(doc: AlgebraDocument) -> str:
    return _dumps(doc.to_json())


def parse_subalgebra(text: str) -> SubalgebraDocument:
    return SubalgebraDocument.from_json(_loads(text))


def print_subalgebra(doc: SubalgebraDocument) -> str:
    return _dumps(doc.to_json())


def parse_report(text: str) -> ReportDocument:
    return ReportDocument.from_json(_loads(text))


def print_report(doc: ReportDocument) -> str:
    return _dumps(doc.to_json())
