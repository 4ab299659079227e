"""JSON documents of named sets, maps, spans, polynomials, families and 2-cells.

A set reference is either the name of a declared set or a bare size.  Maps,
spans and polynomials may be referenced by name or written inline.  Output is
normalized: every reference is inlined and every set is written as its size,
so serializing a parsed document is a fixed point.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .famcat import Family
from .finset import FinMap, FinSet
from .poly import CartTwoCell, GeneralTwoCell, Polynomial
from .span import Span, SpanTwoCell

SECTIONS = ("sets", "maps", "spans", "polynomials", "families", "cells")


class DocumentError(ValueError):
    """Invalid input; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Document:
    sets: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    polynomials: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    cells: dict = field(default_factory=dict)

    def lookup(self, name: str):
        for section in SECTIONS[1:]:
            table = getattr(self, section)
            if name in table:
                return table[name]
        raise DocumentError(name, "no such span, polynomial, family, map or cell")


# ---------------------------------------------------------------- parsing

def _tuplify(value):
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


class _Parser:
    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise DocumentError("$", "document must be a JSON object")
        unknown = set(raw) - set(SECTIONS)
        if unknown:
            raise DocumentError("$", f"unknown sections {sorted(unknown)}")
        self.raw = raw
        self.doc = Document()

    def section(self, name: str) -> dict:
        value = self.raw.get(name, {})
        if not isinstance(value, dict):
            raise DocumentError(name, "section must be an object")
        return value

    def parse(self) -> Document:
        for name, size in self.section("sets").items():
            if not isinstance(size, int) or isinstance(size, bool) or size < 0:
                raise DocumentError(f"sets.{name}", f"size must be a natural number, got {size!r}")
            self.doc.sets[name] = FinSet(size)
        for name, obj in self.section("maps").items():
            self.doc.maps[name] = self.map(obj, f"maps.{name}")
        for name, obj in self.section("spans").items():
            self.doc.spans[name] = self.span(obj, f"spans.{name}")
        for name, obj in self.section("polynomials").items():
            self.doc.polynomials[name] = self.poly(obj, f"polynomials.{name}")
        for name, obj in self.section("families").items():
            self.doc.families[name] = self.family(obj, f"families.{name}")
        for name, obj in self.section("cells").items():
            self.doc.cells[name] = self.cell(obj, f"cells.{name}")
        return self.doc

    def set(self, ref, path: str) -> FinSet:
        if isinstance(ref, bool):
            raise DocumentError(path, f"bad set reference {ref!r}")
        if isinstance(ref, int):
            if ref < 0:
                raise DocumentError(path, f"negative set size {ref}")
            return FinSet(ref)
        if isinstance(ref, str) and ref in self.doc.sets:
            return self.doc.sets[ref]
        raise DocumentError(path, f"unknown set {ref!r}")

    def map(self, obj, path: str) -> FinMap:
        if isinstance(obj, str):
            if obj not in self.doc.maps:
                raise DocumentError(path, f"unknown map {obj!r}")
            return self.doc.maps[obj]
        if not isinstance(obj, dict):
            raise DocumentError(path, "map must be a name or an object")
        for key in ("dom", "cod", "table"):
            if key not in obj:
                raise DocumentError(path, f"missing '{key}'")
        dom, cod = self.set(obj["dom"], f"{path}.dom"), self.set(obj["cod"], f"{path}.cod")
        table = obj["table"]
        if not isinstance(table, list):
            raise DocumentError(f"{path}.table", "table must be a list")
        if len(table) != dom.size:
            raise DocumentError(f"{path}.table", f"has {len(table)} entries for a domain of size {dom.size}")
        for i, v in enumerate(table):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < cod.size:
                raise DocumentError(f"{path}.table[{i}]", f"{v!r} is not an element of a set of size {cod.size}")
        return FinMap(dom, cod, tuple(table))

    def _named(self, obj, path: str, table: dict, kind: str, build):
        if isinstance(obj, str):
            if obj not in table:
                raise DocumentError(path, f"unknown {kind} {obj!r}")
            return table[obj]
        if not isinstance(obj, dict):
            raise DocumentError(path, f"{kind} must be a name or an object")
        try:
            return build(obj)
        except DocumentError:
            raise
        except (ValueError, KeyError) as exc:
            raise DocumentError(path, str(exc)) from None

    def span(self, obj, path: str) -> Span:
        return self._named(obj, path, self.doc.spans, "span", lambda o: Span(
            self.map(o.get("left"), f"{path}.left"), self.map(o.get("right"), f"{path}.right")))

    def poly(self, obj, path: str) -> Polynomial:
        return self._named(obj, path, self.doc.polynomials, "polynomial", lambda o: Polynomial(
            self.map(o.get("s"), f"{path}.s"), self.map(o.get("p"), f"{path}.p"),
            self.map(o.get("t"), f"{path}.t")))

    def family(self, obj, path: str) -> Family:
        if not isinstance(obj, dict) or "index" not in obj:
            raise DocumentError(path, "family needs an 'index'")
        index = self.set(obj["index"], f"{path}.index")
        if "sizes" in obj:
            sizes = obj["sizes"]
            if not isinstance(sizes, list) or len(sizes) != index.size or \
                    not all(isinstance(n, int) and not isinstance(n, bool) and n >= 0 for n in sizes):
                raise DocumentError(f"{path}.sizes", f"expected {index.size} natural numbers")
            return Family.from_sizes(index, sizes)
        entries = obj.get("entries")
        if not isinstance(entries, list) or len(entries) != index.size:
            raise DocumentError(f"{path}.entries", f"expected {index.size} lists of elements")
        try:
            return Family(index, tuple(tuple(_tuplify(e) for e in entry) for entry in entries))
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"{path}.entries", str(exc)) from None

    def cell(self, obj, path: str):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise DocumentError(path, "cell needs a 'kind'")
        kind = obj["kind"]
        try:
            if kind == "span":
                return SpanTwoCell(self.span(obj.get("src"), f"{path}.src"), self.span(obj.get("tgt"), f"{path}.tgt"),
                                   self.map(obj.get("apex_map"), f"{path}.apex_map"), bool(obj.get("iso", False)))
            if kind == "cartesian":
                return CartTwoCell(self.poly(obj.get("src"), f"{path}.src"), self.poly(obj.get("tgt"), f"{path}.tgt"),
                                   self.map(obj.get("sigma"), f"{path}.sigma"), self.map(obj.get("nu"), f"{path}.nu"))
            if kind == "general":
                return GeneralTwoCell(self.poly(obj.get("src"), f"{path}.src"),
                                      self.poly(obj.get("tgt"), f"{path}.tgt"),
                                      self.map(obj.get("g"), f"{path}.g"), self.map(obj.get("e"), f"{path}.e"))
        except DocumentError:
            raise
        except ValueError as exc:
            raise DocumentError(path, str(exc)) from None
        raise DocumentError(f"{path}.kind", f"unknown cell kind {kind!r}")


def parse_document(raw: dict) -> Document:
    return _Parser(raw).parse()


def load_document(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON: {exc}") from None
    return parse_document(raw)


# ---------------------------------------------------------------- serialization

def _listify(value):
    if isinstance(value, tuple):
        return [_listify(v) for v in value]
    return value


def map_json(f: FinMap) -> dict:
    return {"dom": f.dom.size, "cod": f.cod.size, "table": list(f.table)}


def span_json(S: Span) -> dict:
    return {"left": map_json(S.left), "right": map_json(S.right)}


def poly_json(P: Polynomial) -> dict:
    return {"s": map_json(P.s), "p": map_json(P.p), "t": map_json(P.t)}


def family_json(A: Family) -> dict:
    return {"index": A.index.size, "entries": [[_listify(e) for e in entry] for entry in A.entries]}


def cell_json(cell) -> dict:
    if isinstance(cell, SpanTwoCell):
        out = {"kind": "span", "src": span_json(cell.src), "tgt": span_json(cell.tgt),
               "apex_map": map_json(cell.apex_map)}
        if cell.iso:
            out["iso"] = True
        return out
    if isinstance(cell, CartTwoCell):
        return {"kind": "cartesian", "src": poly_json(cell.src), "tgt": poly_json(cell.tgt),
                "sigma": map_json(cell.sigma), "nu": map_json(cell.nu)}
    return {"kind": "general", "src": poly_json(cell.src), "tgt": poly_json(cell.tgt),
            "g": map_json(cell.g), "e": map_json(cell.e)}


def serialize_document(doc: Document) -> dict:
    out = {
        "sets": {name: X.size for name, X in doc.sets.items()},
        "maps": {name: map_json(f) for name, f in doc.maps.items()},
        "spans": {name: span_json(S) for name, S in doc.spans.items()},
        "polynomials": {name: poly_json(P) for name, P in doc.polynomials.items()},
        "families": {name: family_json(A) for name, A in doc.families.items()},
        "cells": {name: cell_json(c) for name, c in doc.cells.items()},
    }
    return {k: v for k, v in out.items() if v}


def dumps(doc: Document) -> str:
    return json.dumps(serialize_document(doc), sort_keys=True, indent=2) + "\n"
