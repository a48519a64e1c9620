"""Immutable simple graphs, sandwich instances, and small-pattern detection.

Vertices are always 0..n-1.  Adjacency is stored as one bitmask per vertex,
so membership tests and neighborhood intersections are single int ops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 1 << 16


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    adj: tuple[int, ...]  # adj[u] = bitmask of neighbors of u

    def __post_init__(self):
        if not (0 <= self.n <= MAX_VERTICES):
            raise ValueError(f"vertex count {self.n} out of range")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length mismatch")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            u, v = _norm_edge(u, v)
            if v >= n:
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << u) for u in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return bin(self.adj[u]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self.adj[u] >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    out.append((u, v))
                m >>= 1
                v += 1
        return out

    def num_edges(self) -> int:
        return sum(self.degree(u) for u in range(self.n)) // 2

    def neighbors(self, u: int) -> list[int]:
        return _bits(self.adj[u])

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(
            self.n, tuple((full ^ self.adj[u]) & ~(1 << u) for u in range(self.n))
        )

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            u, v = _norm_edge(u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i] (sorted)."""
        vs = sorted(vertices)
        idx = {v: i for i, v in enumerate(vs)}
        adj = [0] * len(vs)
        for i, v in enumerate(vs):
            for w in _bits(self.adj[v]):
                j = idx.get(w)
                if j is not None:
                    adj[i] |= 1 << j
        return Graph(len(vs), tuple(adj))

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by minimum."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            frontier = 1 << s
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                for u in _bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
            seen |= comp
            comps.append(_bits(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bipartition(self) -> Optional[tuple[list[int], list[int]]]:
        """2-coloring (side A holds each component's minimum), or None."""
        color = [-1] * self.n
        for comp in self.components():
            color[comp[0]] = 0
            queue = [comp[0]]
            while queue:
                u = queue.pop()
                for v in _bits(self.adj[u]):
                    if color[v] == -1:
                        color[v] = 1 - color[u]
                        queue.append(v)
                    elif color[v] == color[u]:
                        return None
        sides = ([u for u in range(self.n) if color[u] == 0],
                 [u for u in range(self.n) if color[u] == 1])
        return sides

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def has_triangle(self) -> bool:
        for u, v in self.edges():
            if self.adj[u] & self.adj[v]:
                return True
        return False

    def max_degree(self) -> int:
        return max((self.degree(u) for u in range(self.n)), default=0)

    def universal_vertices(self) -> list[int]:
        full = (1 << self.n) - 1
        return [u for u in range(self.n)
                if self.adj[u] == (full ^ (1 << u)) and self.n > 1]

    def cache_key(self) -> tuple:
        return (self.n, self.adj)


def _bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


# pair slots of a k-set in lexicographic order, used by pattern matching
_PAIR_SLOTS = {
    3: ((0, 1), (0, 2), (1, 2)),
    4: ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
}


def pattern_bits(g: Graph) -> int:
    """Edge pattern of a graph of order 3 or 4 as a bitmask over pair slots."""
    slots = _PAIR_SLOTS[g.n]
    bits = 0
    for i, (a, b) in enumerate(slots):
        if g.has_edge(a, b):
            bits |= 1 << i
    return bits


@lru_cache(maxsize=None)
def _labelings(key: tuple) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """All distinct (pattern, permutation) labelings of a small graph.

    Permutation p maps pattern position i to the graph's vertex p[i]; the
    pattern set is deduplicated so automorphic relabelings appear once.
    """
    n, adj = key
    g = Graph(n, adj)
    slots = _PAIR_SLOTS[n]
    seen = {}
    for perm in itertools.permutations(range(n)):
        bits = 0
        for i, (a, b) in enumerate(slots):
            if g.has_edge(perm[a], perm[b]):
                bits |= 1 << i
        if bits not in seen:
            seen[bits] = perm
    return tuple(sorted(seen.items()))


def pattern_set(g: Graph) -> frozenset[int]:
    return frozenset(bits for bits, _ in _labelings(g.cache_key()))


def find_induced_pattern(g: Graph, pattern: Graph) -> Optional[tuple[int, ...]]:
    """Lexicographically first vertex tuple inducing `pattern` (order 3 or 4).

    The returned tuple is labeled: position i plays the role of pattern
    vertex i.  None if the pattern does not occur.
    """
    k = pattern.n
    if g.n < k:
        return None
    labelings = _labelings(pattern.cache_key())
    patterns = {bits: perm for bits, perm in labelings}
    slots = _PAIR_SLOTS[k]
    adj = g.adj
    for subset in itertools.combinations(range(g.n), k):
        bits = 0
        for i, (a, b) in enumerate(slots):
            if adj[subset[a]] >> subset[b] & 1:
                bits |= 1 << i
        perm = patterns.get(bits)
        if perm is not None:
            # perm maps pattern position -> subset slot; invert it
            out = [0] * k
            for slot_pos, pat_vertex in enumerate(perm):
                out[pat_vertex] = subset[slot_pos]
            return tuple(out)
    return None


def contains_induced(g: Graph, pattern: Graph) -> bool:
    return find_induced_pattern(g, pattern) is not None


def is_pattern_free(g: Graph, patterns: Iterable[Graph]) -> bool:
    return all(find_induced_pattern(g, p) is None for p in patterns)


def is_chain_graph(g: Graph) -> bool:
    """Bipartite with no induced pair of disjoint edges (2K2)."""
    if not g.is_bipartite():
        return False
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    return find_induced_pattern(g, two_k2) is None


@dataclass(frozen=True)
class SandwichInstance:
    """A sandwich instance: mandatory edges plus an optional edge pool.

    The lower graph G1 has exactly the mandatory edges; the upper graph G2
    has the mandatory and the optional edges.
    """

    n: int
    mandatory: frozenset[tuple[int, int]]
    optional: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in itertools.chain(self.mandatory, self.optional):
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u},{v}) for n={self.n}")
        if self.mandatory & self.optional:
            raise ValueError("mandatory and optional edge sets overlap")

    @staticmethod
    def from_pairs(n: int, mandatory: Iterable[tuple[int, int]],
                   optional: Iterable[tuple[int, int]]) -> "SandwichInstance":
        return SandwichInstance(
            n,
            frozenset(_norm_edge(u, v) for u, v in mandatory),
            frozenset(_norm_edge(u, v) for u, v in optional),
        )

    @staticmethod
    def between(g1: Graph, g2: Graph) -> "SandwichInstance":
        e1 = set(g1.edges())
        e2 = set(g2.edges())
        if g1.n != g2.n or not e1 <= e2:
            raise ValueError("lower graph is not a subgraph of the upper graph")
        return SandwichInstance(g1.n, frozenset(e1), frozenset(e2 - e1))

    def g1(self) -> Graph:
        return Graph.from_edges(self.n, self.mandatory)

    def g2(self) -> Graph:
        return Graph.from_edges(self.n, self.mandatory | self.optional)

    def complemented(self) -> "SandwichInstance":
        """Swap roles: sandwiches of the result are complements of sandwiches."""
        allowed = self.mandatory | self.optional
        co_mandatory = frozenset(
            p for p in itertools.combinations(range(self.n), 2) if p not in allowed
        )
        return SandwichInstance(self.n, co_mandatory, self.optional)

    def restrict(self, vertices: Sequence[int]) -> tuple["SandwichInstance", list[int]]:
        """Sub-instance induced on `vertices`; returns it plus new->old map."""
        vs = sorted(vertices)
        idx = {v: i for i, v in enumerate(vs)}
        keep = set(vs)

        def remap(pairs):
            return frozenset(
                (idx[u], idx[v]) for u, v in pairs if u in keep and v in keep
            )

        return SandwichInstance(len(vs), remap(self.mandatory), remap(self.optional)), vs

    def sorted_mandatory(self) -> list[tuple[int, int]]:
        return sorted(self.mandatory)

    def sorted_optional(self) -> list[tuple[int, int]]:
        return sorted(self.optional)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a sandwich solve: a witness graph or infeasibility."""

    feasible: bool
    witness: Optional[Graph] = None

    @staticmethod
    def yes(witness: Graph) -> "Verdict":
        return Verdict(True, witness)

    @staticmethod
    def no() -> "Verdict":
        return Verdict(False, None)


def verify_sandwich(inst: SandwichInstance, g: Graph,
                    patterns: Iterable[Graph]) -> bool:
    """True iff g is sandwiched between the instance's graphs and pattern-free."""
    if g.n != inst.n:
        raise ValueError(f"vertex count mismatch: {g.n} != {inst.n}")
    edges = set(g.edges())
    if not inst.mandatory <= edges:
        return False
    if not edges <= inst.mandatory | inst.optional:
        return False
    return is_pattern_free(g, patterns)
