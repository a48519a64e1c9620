"""Hardness-reduction generators: the four gadget graphs, the
One-in-Three-3SAT reduction to the co-matched bipartite sandwich problem,
gadget wraps lifting chain/co-matched sources to quartet families, the
3-coloring reductions, and the small brute-force oracles used to validate
everything end to end.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Union

from .graphs import Graph, SandwichInstance, is_chain_graph
from .quartets import ForbiddenFamily


@dataclass(frozen=True)
class OneInThreeInstance:
    """Exactly-one-true 3SAT: each clause is three (variable, polarity)
    literals."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError("clauses must have exactly three literals")
            for var, pol in clause:
                if not (0 <= var < self.num_vars) or pol not in (True, False):
                    raise ValueError(f"bad literal ({var},{pol})")

    @staticmethod
    def of(num_vars: int, clauses) -> "OneInThreeInstance":
        return OneInThreeInstance(
            num_vars, tuple(tuple((v, bool(p)) for v, p in c) for c in clauses))


@dataclass(frozen=True)
class ReductionOutput:
    instance: SandwichInstance
    family: Union[tuple, str]  # quartet pair, or a target-class tag
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# gadgets

GADGET_KINDS = ("Ch3", "ECh4", "P4gadget", "Pprime")

# family each gadget wrap targets
WRAP_FAMILY = {
    "Ch3": ("paw", "co-C4"),
    "ECh4": ("diamond", "co-C4"),
    "P4gadget": ("paw", "co-diamond"),
    "Pprime": ("diamond", "co-diamond"),
}


def gadget(kind: str) -> Graph:
    if kind == "Ch3":
        # half graph on a1..a3 (0..2) and b1..b3 (3..5): a_i ~ b_j iff i+j >= 4
        edges = [(i - 1, 3 + j - 1)
                 for i in range(1, 4) for j in range(1, 4) if i + j >= 4]
        return Graph.from_edges(6, edges)
    if kind == "ECh4":
        # a=0, b=1, c=2, b1..b4 = 3..6, c1..c4 = 7..10
        edges = [(0, 1), (0, 2), (1, 2)]
        edges += [(1, 6 + j) for j in range(1, 5)]  # b ~ c1..c4
        edges += [(2, 2 + i) for i in range(1, 5)]  # c ~ b1..b4
        edges += [(2 + i, 6 + j)
                  for i in range(1, 5) for j in range(1, 5) if i + j >= 5]
        return Graph.from_edges(11, edges)
    if kind == "P4gadget":
        return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    if kind == "Pprime":
        # a1=0, b1=1, b1'=2, a2=3, b2=4
        return Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (3, 4)])
    raise KeyError(f"unknown gadget kind {kind!r}")


# ---------------------------------------------------------------------------
# One-in-Three 3SAT -> co-matched bipartite sandwich

CO_MATCHED_TAG = "co-matched-bipartite"


def reduce_one_in_three(f: OneInThreeInstance) -> ReductionOutput:
    """Per clause, eight vertices (c, d, one vertex per literal, one pin
    per literal); feasibility of the co-matched bipartite sandwich is
    equivalent to one-in-three satisfiability."""
    m = len(f.clauses)
    n = 8 * m

    def c(j):
        return 8 * j

    def d(j):
        return 8 * j + 1

    def lit(j, i):
        return 8 * j + 2 + i

    def pin(j, i):
        return 8 * j + 5 + i

    mandatory = set()
    for j in range(m):
        for i in range(3):
            mandatory.add(tuple(sorted((lit(j, i), pin(j, i)))))
    for i in range(m):
        for j in range(m):
            mandatory.add(tuple(sorted((c(i), d(j)))))
    # opposite occurrences of a variable are made adjacent (forcing them to
    # opposite sides); equal occurrences are tied to each other's pins,
    # which pins them to the same side.  Without the second family a
    # variable occurring with only one polarity could be assigned
    # inconsistently across clauses.
    for (j1, i1), (j2, i2) in itertools.combinations(
            [(j, i) for j in range(m) for i in range(3)], 2):
        v1, p1 = f.clauses[j1][i1]
        v2, p2 = f.clauses[j2][i2]
        if v1 != v2:
            continue
        if p1 != p2:
            mandatory.add(tuple(sorted((lit(j1, i1), lit(j2, i2)))))
        else:
            mandatory.add(tuple(sorted((lit(j1, i1), pin(j2, i2)))))
            mandatory.add(tuple(sorted((lit(j2, i2), pin(j1, i1)))))

    forbidden = set()
    for j in range(m):
        for i in range(3):
            forbidden.add(tuple(sorted((c(j), lit(j, i)))))
            forbidden.add(tuple(sorted((d(j), pin(j, i)))))
        for i1 in range(3):
            for i2 in range(3):
                if i1 != i2:
                    forbidden.add(tuple(sorted((lit(j, i1), pin(j, i2)))))

    optional = frozenset(
        p for p in itertools.combinations(range(n), 2)
        if p not in mandatory and p not in forbidden)
    inst = SandwichInstance(n, frozenset(mandatory), optional)
    return ReductionOutput(inst, CO_MATCHED_TAG,
                           {"source": "one-in-three", "num_clauses": m,
                            "num_vars": f.num_vars})


def co_matched_sandwich(inst: SandwichInstance) -> Optional[tuple]:
    """Brute-force check for a sandwich in the co-matched bipartite class
    (bipartite, each vertex at most one non-neighbor across).  Returns a
    bipartition (A, B) or None.  Test oracle; exponential in the number of
    lower-graph components."""
    g1, g2 = inst.g1(), inst.g2()
    bip = g1.bipartition()
    if bip is None:
        return None
    in_a = [v in set(bip[0]) for v in range(inst.n)]
    comps = g1.components()
    if len(comps) > 16:
        raise ValueError("too many components for exhaustive orientation")
    for flips in itertools.product((False, True), repeat=len(comps)):
        side = list(in_a)
        for comp, flip in zip(comps, flips):
            if flip:
                for v in comp:
                    side[v] = not side[v]
        # best candidate for this orientation: all available cross edges
        ok = True
        for u in range(inst.n):
            missing = 0
            for w in range(inst.n):
                if w != u and side[u] != side[w] and not g2.has_edge(u, w):
                    missing += 1
            if missing > 1:
                ok = False
                break
        if ok:
            a = sorted(v for v in range(inst.n) if side[v])
            b = sorted(v for v in range(inst.n) if not side[v])
            return a, b
    return None


# ---------------------------------------------------------------------------
# gadget wraps

def wrap_gadget(src: SandwichInstance, kind: str) -> ReductionOutput:
    """Disjoint union of the source's lower graph and the gadget, with all
    source-gadget pairs optional (ECh4: except to its vertex a)."""
    g = gadget(kind)
    if kind in ("P4gadget", "Pprime"):
        if src.n < 8:
            raise ValueError(f"{kind} wrap needs a source of order >= 8")
        g1 = src.g1()
        if any(g1.degree(u) == 0 for u in range(src.n)):
            raise ValueError(f"{kind} wrap source must have no isolated vertex")
    if kind == "ECh4":
        deg = [0] * src.n
        for u, v in src.mandatory:
            deg[u] += 1
            deg[v] += 1
        if src.n == 0 or any(x != 1 for x in deg):
            raise ValueError("ECh4 wrap source needs a perfect matching "
                             "as mandatory edges")

    n = src.n + g.n
    mandatory = set(src.mandatory)
    mandatory |= {(src.n + a, src.n + b) for a, b in g.edges()}
    optional = set(src.optional)
    gadget_part = range(src.n, n)
    if kind == "ECh4":
        gadget_part = range(src.n + 1, n)  # vertex a stays non-adjacent
    optional |= {(u, x) for u in range(src.n) for x in gadget_part}
    inst = SandwichInstance(n, frozenset(mandatory), frozenset(optional))
    return ReductionOutput(inst, WRAP_FAMILY[kind],
                           {"source_order": src.n, "gadget": kind})


# ---------------------------------------------------------------------------
# 3-coloring reductions

def reduce_3col(h: Graph, kind: str, t: int = 9) -> ReductionOutput:
    if kind == "pawK4":
        if not h.is_connected() or not h.has_triangle():
            raise ValueError("pawK4 reduction needs a connected graph "
                             "containing a triangle")
        inst = SandwichInstance.between(h, Graph.complete(h.n))
        return ReductionOutput(inst, ("paw", "K4"),
                               {"source": "3col", "order": h.n})
    if kind == "pawCoK4":
        n = h.n
        parts = [list(range(n + i * t, n + (i + 1) * t)) for i in range(3)]
        mandatory = set(h.edges())
        for pa, pb in itertools.combinations(parts, 2):
            mandatory |= {(u, w) for u in pa for w in pb}
        optional = set()
        ext = [v for part in parts for v in part]
        optional |= {(u, x) for u in range(n) for x in ext}
        optional |= {(u, w) for u, w in itertools.combinations(range(n), 2)
                     if not h.has_edge(u, w)}
        inst = SandwichInstance(n + 3 * t, frozenset(mandatory),
                                frozenset(optional))
        meta = {"source": "3col", "order": h.n, "t": t,
                "guaranteed": t == 9}
        co = ReductionOutput(inst.complemented(), ("paw", "co-K4"),
                             dict(meta, complemented=True))
        return ReductionOutput(inst, ("co-paw", "K4"),
                               dict(meta, complemented_variant=co))
    raise KeyError(f"unknown 3-coloring reduction kind {kind!r}")


def tripartite_witness(h: Graph, coloring: list, t: int = 9) -> Graph:
    """The explicit witness for a 3-colorable pawCoK4 source: complete
    tripartite on (V_i together with the i-th external set)."""
    n = h.n
    parts = [[v for v in range(n) if coloring[v] == i]
             + list(range(n + i * t, n + (i + 1) * t)) for i in range(3)]
    edges = []
    for pa, pb in itertools.combinations(parts, 2):
        edges += [(u, w) for u in pa for w in pb]
    return Graph.from_edges(n + 3 * t, edges)


# ---------------------------------------------------------------------------
# oracles (exhaustive; test scale only)

def oracle_one_in_three(f: OneInThreeInstance) -> bool:
    if f.num_vars > 20:
        raise ValueError("too many variables for the exhaustive oracle")
    for bits in range(1 << f.num_vars):
        if all(sum((bits >> v & 1) == p for v, p in clause) == 1
               for clause in f.clauses):
            return True
    return False


def oracle_3col(h: Graph) -> bool:
    if h.n > 10:
        raise ValueError("too many vertices for the exhaustive oracle")
    edges = h.edges()
    for colors in itertools.product(range(3), repeat=h.n):
        if all(colors[u] != colors[v] for u, v in edges):
            return True
    return False


def find_3coloring(h: Graph) -> Optional[list]:
    if h.n > 10:
        raise ValueError("too many vertices for the exhaustive oracle")
    edges = h.edges()
    for colors in itertools.product(range(3), repeat=h.n):
        if all(colors[u] != colors[v] for u, v in edges):
            return list(colors)
    return None


def oracle_chain_sandwich(inst: SandwichInstance) -> bool:
    opts = inst.sorted_optional()
    if len(opts) > 12:
        raise ValueError("too many optional edges for the exhaustive oracle")
    for r in range(len(opts) + 1):
        for chosen in itertools.combinations(opts, r):
            g = Graph.from_edges(inst.n, list(inst.mandatory) + list(chosen))
            if is_chain_graph(g):
                return True
    return False


# ---------------------------------------------------------------------------
# chain-sandwich source instances (the cited source reduction lives
# elsewhere; tests need a stream of small feasible/infeasible sources)

def generate_chain_source(n: int, seed: int, matching: bool = False
                          ) -> SandwichInstance:
    rng = random.Random(seed)
    if matching:
        if n % 2:
            raise ValueError("perfect-matching source needs even order")
        perm = list(range(n))
        rng.shuffle(perm)
        mand = {tuple(sorted((perm[2 * i], perm[2 * i + 1])))
                for i in range(n // 2)}
    else:
        mand = {p for p in itertools.combinations(range(n), 2)
                if rng.random() < 0.3}
    optional = {p for p in itertools.combinations(range(n), 2)
                if p not in mand and rng.random() < 0.5}
    return SandwichInstance(n, frozenset(mand), frozenset(optional))
