"""Catalog of the eleven order-4 graphs, the pair classification table,
and the completion rules used by the closure-style solvers.

Pair names are canonicalized under complementation: a pair and its
complemented pair always share one table entry.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .graphs import Graph, contains_induced, is_pattern_free

# canonical labeled drawings of the eleven order-4 graphs
_QUARTET_EDGES = {
    "K4": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    "co-K4": [],
    "diamond": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
    "co-diamond": [(2, 3)],
    "paw": [(0, 1), (0, 2), (1, 2), (2, 3)],
    "co-paw": [(0, 3), (1, 3)],
    "claw": [(0, 1), (0, 2), (0, 3)],
    "co-claw": [(1, 2), (1, 3), (2, 3)],
    "C4": [(0, 1), (1, 2), (2, 3), (0, 3)],
    "co-C4": [(0, 2), (1, 3)],
    "P4": [(0, 1), (1, 2), (2, 3)],
}

QUARTET_NAMES = tuple(_QUARTET_EDGES)

CO_NAME = {
    "K4": "co-K4", "co-K4": "K4",
    "diamond": "co-diamond", "co-diamond": "diamond",
    "paw": "co-paw", "co-paw": "paw",
    "claw": "co-claw", "co-claw": "claw",
    "C4": "co-C4", "co-C4": "C4",
    "P4": "P4",
}

# order-3 patterns used by the completion rules
_SMALL_EDGES = {
    "K3": [(0, 1), (0, 2), (1, 2)],
    "P3": [(0, 1), (1, 2)],
    "co-P3": [(0, 1)],
}


@lru_cache(maxsize=None)
def quartet(name: str) -> Graph:
    if name not in _QUARTET_EDGES:
        raise KeyError(f"unknown order-4 graph name: {name!r}")
    return Graph.from_edges(4, _QUARTET_EDGES[name])


@lru_cache(maxsize=None)
def pattern(name: str) -> Graph:
    """Canonical graph for a quartet name or an order-3 pattern name."""
    if name in _QUARTET_EDGES:
        return quartet(name)
    if name in _SMALL_EDGES:
        return Graph.from_edges(3, _SMALL_EDGES[name])
    raise KeyError(f"unknown pattern name: {name!r}")


@dataclass(frozen=True)
class ForbiddenFamily:
    """A nonempty set of forbidden patterns, stored by sorted name."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("forbidden family must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate family member")

    @staticmethod
    def of(*names: str) -> "ForbiddenFamily":
        for nm in names:
            pattern(nm)  # validate
        return ForbiddenFamily(tuple(sorted(names)))

    @property
    def graphs(self) -> tuple[Graph, ...]:
        return tuple(pattern(nm) for nm in self.names)

    def complemented(self) -> "ForbiddenFamily":
        out = []
        for nm in self.names:
            if nm in CO_NAME:
                out.append(CO_NAME[nm])
            elif nm == "P3":
                out.append("co-P3")
            elif nm == "co-P3":
                out.append("P3")
            elif nm == "K3":
                raise ValueError("complement of K3 (3K1) is not in the catalog")
            else:
                raise KeyError(nm)
        return ForbiddenFamily(tuple(sorted(out)))

    def __iter__(self):
        return iter(self.names)


def co_pair(pair: tuple[str, str]) -> tuple[str, str]:
    a, b = pair
    return tuple(sorted((CO_NAME[a], CO_NAME[b])))


def canonical_pair(a: str, b: str) -> tuple[str, str]:
    """Representative of {a,b} under complementation: lexicographically
    smaller of the sorted pair and its complemented sorted pair."""
    if a not in CO_NAME or b not in CO_NAME:
        raise KeyError(f"unknown quartet in pair ({a!r},{b!r})")
    if a == b:
        raise ValueError("pair members must be distinct")
    p = tuple(sorted((a, b)))
    return min(p, co_pair(p))


# classification of the 30 canonical pairs: 15 tractable (with the
# algorithm id the dispatcher uses), 7 hard (with the reduction id),
# the remaining 8 open.  Entries may be written on either side of the
# complementation orbit; they are canonicalized on load.
_POLY = {
    ("diamond", "K4"): "closure",
    ("diamond", "C4"): "closure",
    ("diamond", "paw"): "closure",
    ("K4", "co-K4"): "ramsey-bound",
    ("P4", "C4"): "recursive-split",
    ("P4", "co-claw"): "closure-or-join-split",
    ("P4", "co-paw"): "closure-or-join-split",
    ("P4", "co-diamond"): "hub-or-cobipartite",
    ("paw", "C4"): "endpoint-check",
    ("paw", "claw"): "endpoint-check",
    ("paw", "co-claw"): "triangle-free-or-closure",
    ("paw", "co-paw"): "closure-or-complete-bipartite",
    ("C4", "co-C4"): "pseudo-split",
    ("claw", "co-claw"): "degree-endpoints",
    ("claw", "co-C4"): "two-sat-hub",
}

_NPC = {
    ("C4", "K4"): "external-citation",
    ("paw", "K4"): "3col-complete",
    ("paw", "co-K4"): "3col-tripartite",
    ("paw", "co-C4"): "chain-ch3",
    ("diamond", "co-C4"): "chain-ech4",
    ("paw", "co-diamond"): "one-in-three-p4",
    ("diamond", "co-diamond"): "one-in-three-pprime",
}


def _canonicalize_table(table: dict) -> dict:
    out = {}
    for (a, b), tag in table.items():
        key = canonical_pair(a, b)
        if key in out and out[key] != tag:
            raise ValueError(f"conflicting entries for {key}")
        out[key] = tag
    return out


POLY_PAIRS = _canonicalize_table(_POLY)
NPC_PAIRS = _canonicalize_table(_NPC)


def all_canonical_pairs() -> list[tuple[str, str]]:
    reps = {canonical_pair(a, b)
            for a, b in itertools.combinations(QUARTET_NAMES, 2)}
    return sorted(reps)


@dataclass(frozen=True)
class StatusEntry:
    pair: tuple[str, str]  # canonical representative
    status: str  # "Poly" | "NPComplete" | "Open"
    detail: Optional[str] = None  # algorithm or reduction id


def pair_status(a: str, b: str) -> StatusEntry:
    key = canonical_pair(a, b)
    if key in POLY_PAIRS:
        return StatusEntry(key, "Poly", POLY_PAIRS[key])
    if key in NPC_PAIRS:
        return StatusEntry(key, "NPComplete", NPC_PAIRS[key])
    return StatusEntry(key, "Open")


def status_table() -> list[StatusEntry]:
    return [pair_status(a, b) for a, b in all_canonical_pairs()]


def status_as_json() -> str:
    rows = [
        {"pair": list(e.pair), "status": e.status, "detail": e.detail}
        for e in status_table()
    ]
    return json.dumps({"pairs": rows}, indent=2, sort_keys=True) + "\n"


def status_as_text() -> str:
    lines = []
    w = max(len(f"{a} / {b}") for a, b in all_canonical_pairs())
    for e in status_table():
        name = f"{e.pair[0]} / {e.pair[1]}"
        detail = f"  [{e.detail}]" if e.detail else ""
        lines.append(f"{name:<{w}}  {e.status}{detail}")
    counts = {"Poly": 0, "NPComplete": 0, "Open": 0}
    for e in status_table():
        counts[e.status] += 1
    lines.append("")
    lines.append(
        f"total: {counts['Poly']} polynomial, {counts['NPComplete']} "
        f"NP-complete, {counts['Open']} open"
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# completion rules: families where every forbidden occurrence either has a
# unique family-free supergraph on the same vertices or is fatal

@dataclass(frozen=True)
class ClosureRule:
    family: tuple[str, ...]
    member: str
    completion: Optional[Graph]  # None means any occurrence is infeasible


# families handled by direct completion; {co-P3} is handled by complementing
# the instance and running {P3}, since its completion is not unique
CLOSURE_FAMILIES = (
    frozenset({"P3"}),
    frozenset({"diamond", "K4"}),
    frozenset({"diamond", "C4"}),
    frozenset({"diamond", "paw"}),
    frozenset({"P4", "K3"}),
    frozenset({"P4", "P3"}),
)

VIA_COMPLEMENT = {frozenset({"co-P3"}): frozenset({"P3"})}


def _unique_free_supergraph(member: Graph,
                            family_graphs: tuple[Graph, ...]) -> Optional[Graph]:
    """The unique family-free supergraph of `member` on its vertex set,
    or None when no family-free supergraph exists.  Raises if uniqueness
    fails (the family is then not completion-solvable)."""
    missing = [p for p in itertools.combinations(range(member.n), 2)
               if not member.has_edge(*p)]
    free = []
    for r in range(len(missing) + 1):
        for extra in itertools.combinations(missing, r):
            g = member.add_edges(extra)
            if is_pattern_free(g, family_graphs):
                free.append(g)
    if not free:
        return None
    if len(free) > 1:
        raise ValueError("completion is not unique for this family")
    return free[0]


@lru_cache(maxsize=None)
def closure_rule(family_names: frozenset, member: str) -> ClosureRule:
    if family_names not in CLOSURE_FAMILIES:
        raise KeyError(f"family {sorted(family_names)} has no registered "
                       "completion rules")
    if member not in family_names:
        raise KeyError(f"{member!r} is not a member of {sorted(family_names)}")
    graphs = tuple(pattern(nm) for nm in sorted(family_names))
    completion = _unique_free_supergraph(pattern(member), graphs)
    return ClosureRule(tuple(sorted(family_names)), member, completion)
