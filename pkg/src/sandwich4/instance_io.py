"""Instance serialization: canonical JSON, plus a terse line format
("p sandwich <n>" header, then "m u v" / "o u v" edge lines) for
hand-written fixtures."""

from __future__ import annotations

import json
from typing import Optional

from .graphs import Graph, SandwichInstance

FORMAT_VERSION = 1


class ParseError(Exception):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def to_json(inst: SandwichInstance, meta: Optional[dict] = None) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "n": inst.n,
        "mandatory": [list(e) for e in inst.sorted_mandatory()],
        "optional": [list(e) for e in inst.sorted_optional()],
    }
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str):
    """Returns (instance, meta)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(str(e.msg), e.lineno) from e
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    for key in ("n", "mandatory", "optional"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    try:
        inst = SandwichInstance.from_pairs(
            int(doc["n"]),
            [tuple(map(int, e)) for e in doc["mandatory"]],
            [tuple(map(int, e)) for e in doc["optional"]],
        )
    except (TypeError, ValueError) as e:
        raise ParseError(str(e)) from e
    return inst, doc.get("meta", {})


def to_text(inst: SandwichInstance) -> str:
    lines = [f"p sandwich {inst.n}"]
    lines += [f"m {u} {v}" for u, v in inst.sorted_mandatory()]
    lines += [f"o {u} {v}" for u, v in inst.sorted_optional()]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> SandwichInstance:
    n = None
    mandatory, optional = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 3 or parts[1] != "sandwich":
                raise ParseError("header must be 'p sandwich <n>'", lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[2]!r}", lineno)
        elif parts[0] in ("m", "o"):
            if n is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise ParseError(f"edge line needs two endpoints", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("endpoints must be integers", lineno)
            (mandatory if parts[0] == "m" else optional).append((u, v))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p sandwich <n>' header")
    try:
        return SandwichInstance.from_pairs(n, mandatory, optional)
    except ValueError as e:
        raise ParseError(str(e))


def load(path: str, fmt: Optional[str] = None):
    """Load an instance from a file; format inferred from the extension
    unless given.  Returns (instance, meta)."""
    with open(path) as fh:
        text = fh.read()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "text"
    if fmt == "json":
        return from_json(text)
    return from_text(text), {}


def dump(inst: SandwichInstance, path: str, fmt: Optional[str] = None,
         meta: Optional[dict] = None):
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "text"
    payload = to_json(inst, meta) if fmt == "json" else to_text(inst)
    with open(path, "w") as fh:
        fh.write(payload)


def witness_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def witness_from_json(doc: dict) -> Graph:
    return Graph.from_edges(doc["n"], [tuple(e) for e in doc["edges"]])
