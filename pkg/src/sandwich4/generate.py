"""Seeded instance generators: plain random instances, and planted
instances guaranteed feasible for a given forbidden pair (hide a
family-free graph between the two bounds)."""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .graphs import Graph, SandwichInstance, find_induced_pattern
from .quartets import CO_NAME, ForbiddenFamily


class PlantingError(Exception):
    """No family-free host graph was found within the restart budget."""


def random_instance(n: int, seed: int, density: float = 0.5,
                    mandatory_fraction: float = 0.4) -> SandwichInstance:
    """Sample the upper graph, then keep each of its edges mandatory with
    the given probability."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    mandatory, optional = [], []
    for p in itertools.combinations(range(n), 2):
        if rng.random() < density:
            (mandatory if rng.random() < mandatory_fraction else optional).append(p)
    return SandwichInstance.from_pairs(n, mandatory, optional)


def _repair_host(n: int, family: ForbiddenFamily, rng: random.Random,
                 restarts: int = 10, steps: int = 300) -> Optional[Graph]:
    """Random graph, then flip one pair of a forbidden occurrence until
    family-free (or give up)."""
    pairs = list(itertools.combinations(range(n), 2))
    for _ in range(restarts):
        edges = {p for p in pairs if rng.random() < 0.4}
        g = Graph.from_edges(n, edges)
        for _ in range(steps):
            hit = None
            for pat in family.graphs:
                t = find_induced_pattern(g, pat)
                if t is not None:
                    hit = t
                    break
            if hit is None:
                return g
            i, j = sorted(rng.sample(range(len(hit)), 2))
            u, v = tuple(sorted((hit[i], hit[j])))
            if (u, v) in edges:
                edges.discard((u, v))
            else:
                edges.add((u, v))
            g = Graph.from_edges(n, edges)
    return None


def _cycle(n: int) -> Graph:
    if n < 3:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _cliques(n: int, size: int) -> Graph:
    edges = []
    for start in range(0, n, size):
        block = range(start, min(start + size, n))
        edges += itertools.combinations(block, 2)
    return Graph.from_edges(n, edges)


def _balanced_parts(n: int, k: int) -> list:
    parts = [[] for _ in range(k)]
    for v in range(n):
        parts[v % k].append(v)
    return parts


def _complete_multipartite(n: int, k: int) -> Graph:
    parts = _balanced_parts(n, k)
    edges = []
    for pa, pb in itertools.combinations(parts, 2):
        edges += [(u, w) for u in pa for w in pb]
    return Graph.from_edges(n, edges)


def _stars(n: int) -> Graph:
    half = (n + 1) // 2
    edges = [(0, v) for v in range(1, half)]
    if half < n:
        edges += [(half, v) for v in range(half + 1, n)]
    return Graph.from_edges(n, edges)


_PALEY17_QR = {1, 2, 4, 8, 9, 13, 15, 16}


def _paley17_subgraph(n: int) -> Graph:
    if n > 17:
        raise PlantingError("no {K4,co-K4}-free graph exists beyond order 17")
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if (v - u) % 17 in _PALEY17_QR]
    return Graph.from_edges(n, edges)


def _random_split(n: int, rng: random.Random) -> Graph:
    k = n // 2
    edges = list(itertools.combinations(range(k), 2))
    edges += [(u, v) for u in range(k) for v in range(k, n)
              if rng.random() < 0.4]
    return Graph.from_edges(n, edges)


# deterministic family-free host constructions, used when random repair
# fails; keyed by the sorted pair
_FALLBACK_HOSTS = {
    ("K4", "diamond"): lambda n, rng: _cycle(n),
    ("C4", "diamond"): lambda n, rng: _cliques(n, 3),
    ("diamond", "paw"): lambda n, rng: _cycle(n),
    ("K4", "co-K4"): lambda n, rng: _paley17_subgraph(n),
    ("C4", "P4"): lambda n, rng: _stars(n),
    ("P4", "co-claw"): lambda n, rng: _complete_multipartite(n, 2),
    ("P4", "co-paw"): lambda n, rng: _complete_multipartite(n, 3),
    ("P4", "co-diamond"): lambda n, rng: _complete_multipartite(n, 3),
    ("C4", "paw"): lambda n, rng: _cliques(n, 4),
    ("claw", "paw"): lambda n, rng: _cliques(n, 4),
    ("co-claw", "paw"): lambda n, rng: _cycle(n),
    ("co-paw", "paw"): lambda n, rng: _complete_multipartite(n, 2),
    ("C4", "co-C4"): _random_split,
    ("claw", "co-claw"): lambda n, rng: _cycle(n),
    ("claw", "co-C4"): lambda n, rng: Graph.complete(n),
}


def _fallback_host(pair_key: tuple, n: int, rng: random.Random) -> Optional[Graph]:
    if pair_key in _FALLBACK_HOSTS:
        return _FALLBACK_HOSTS[pair_key](n, rng)
    co_key = tuple(sorted(CO_NAME[x] for x in pair_key))
    if co_key in _FALLBACK_HOSTS:
        return _FALLBACK_HOSTS[co_key](n, rng).complement()
    return None


def planted_instance(n: int, pair: tuple, seed: int,
                     keep: float = 0.6, extra: float = 0.3) -> SandwichInstance:
    """Feasible by construction: hide a family-free host graph G, take the
    lower graph as a random subgraph of G and the upper graph as G plus
    random extra pairs."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    family = ForbiddenFamily.of(*pair)
    host = _repair_host(n, family, rng)
    if host is None:
        host = _fallback_host(tuple(sorted(pair)), n, rng)
    if host is None or not all(
            find_induced_pattern(host, g) is None for g in family.graphs):
        raise PlantingError(f"could not plant a {pair} host at n={n}")
    host_edges = set(host.edges())
    mandatory = {e for e in host_edges if rng.random() < keep}
    optional = (host_edges - mandatory)
    optional |= {p for p in itertools.combinations(range(n), 2)
                 if p not in host_edges and rng.random() < extra}
    return SandwichInstance(n, frozenset(mandatory), frozenset(optional))


def generate_instance(n: int, seed: int, mode: str = "random",
                      pair: Optional[tuple] = None, density: float = 0.5,
                      mandatory_fraction: float = 0.4) -> SandwichInstance:
    if mode == "random":
        return random_instance(n, seed, density, mandatory_fraction)
    if mode == "planted":
        if pair is None:
            raise ValueError("planted mode needs a forbidden pair")
        return planted_instance(n, pair, seed)
    raise ValueError(f"unknown mode {mode!r}")
