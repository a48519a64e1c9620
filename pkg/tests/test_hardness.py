"""Hardness-reduction generators, cross-checked against the exhaustive
oracles and, at small sizes, against the exact solver."""

import itertools
import random

import pytest

from sandwich4.exact import solve_exact
from sandwich4.graphs import Graph, contains_induced, is_chain_graph, verify_sandwich
from sandwich4.hardness import (CO_MATCHED_TAG, GADGET_KINDS,
                                OneInThreeInstance, co_matched_sandwich,
                                find_3coloring, gadget, generate_chain_source,
                                oracle_3col, oracle_chain_sandwich,
                                oracle_one_in_three, reduce_3col,
                                reduce_one_in_three, tripartite_witness,
                                wrap_gadget)
from sandwich4.quartets import ForbiddenFamily, quartet


def _random_formula(rng, m, nv):
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(nv), 3)
        clauses.append([(v, rng.random() < 0.5) for v in vs])
    return OneInThreeInstance.of(nv, clauses)


# --- gadgets -------------------------------------------------------------------

def test_ch3_gadget_is_a_chain_graph():
    g = gadget("Ch3")
    assert g.n == 6 and is_chain_graph(g)
    assert g.num_edges() == 6


def test_ech4_gadget_shape():
    g = gadget("ECh4")
    assert g.n == 11
    # triangle a,b,c plus two fans of four
    assert g.has_edge(0, 1) and g.has_edge(0, 2) and g.has_edge(1, 2)
    assert g.degree(0) == 2
    assert not is_chain_graph(g)


def test_pprime_contains_induced_p4():
    assert contains_induced(gadget("Pprime"), quartet("P4"))


def test_p4gadget_is_p4():
    assert gadget("P4gadget") == quartet("P4")


def test_unknown_gadget_rejected():
    with pytest.raises(KeyError):
        gadget("Ch5")


# --- one-in-three reduction ------------------------------------------------------

def test_single_clause_is_satisfiable():
    f = OneInThreeInstance.of(3, [[(0, True), (1, True), (2, True)]])
    assert oracle_one_in_three(f)
    out = reduce_one_in_three(f)
    assert out.family == CO_MATCHED_TAG
    assert out.instance.n == 8
    assert co_matched_sandwich(out.instance) is not None


def test_unsatisfiable_formula_has_no_sandwich():
    # one-polarity-only variable repeated across clauses; verified
    # unsatisfiable by the exhaustive oracle
    f = OneInThreeInstance.of(4, [
        [(2, False), (3, True), (1, False)],
        [(1, False), (2, True), (0, False)],
        [(0, False), (2, False), (1, False)],
    ])
    assert not oracle_one_in_three(f)
    assert co_matched_sandwich(reduce_one_in_three(f).instance) is None


def test_reduction_matches_oracle_on_random_formulas():
    rng = random.Random(5)
    for trial in range(40):
        f = _random_formula(rng, 1 + trial % 3, rng.randint(3, 5))
        want = oracle_one_in_three(f)
        got = co_matched_sandwich(reduce_one_in_three(f).instance) is not None
        assert got == want, (trial, f)


def test_clause_validation():
    with pytest.raises(ValueError):
        OneInThreeInstance.of(2, [[(0, True), (1, True)]])
    with pytest.raises(ValueError):
        OneInThreeInstance.of(1, [[(0, True), (1, True), (2, True)]])


# --- gadget wraps ------------------------------------------------------------------

def test_ch3_wrap_counts():
    src = generate_chain_source(4, seed=1)
    out = wrap_gadget(src, "Ch3")
    assert out.instance.n == 10
    cross = {p for p in out.instance.optional if p[0] < 4 <= p[1]}
    assert len(cross) == 24
    assert out.family == ("paw", "co-C4")


def test_wrap_families():
    src = generate_chain_source(4, seed=1, matching=True)
    assert wrap_gadget(src, "ECh4").family == ("diamond", "co-C4")


def test_p4_wrap_rejects_small_or_isolated_sources():
    small = generate_chain_source(4, seed=0)
    with pytest.raises(ValueError):
        wrap_gadget(small, "P4gadget")
    isolated = reduce_one_in_three(
        OneInThreeInstance.of(3, [[(0, True), (1, True), (2, True)]]))
    bad = isolated.instance
    bad = bad.__class__(bad.n + 1, bad.mandatory, bad.optional)
    with pytest.raises(ValueError):
        wrap_gadget(bad, "Pprime")


def test_ech4_wrap_requires_perfect_matching():
    with pytest.raises(ValueError):
        wrap_gadget(generate_chain_source(4, seed=0), "ECh4")


def test_chain_wraps_match_oracle():
    for s in range(12):
        n = 2 + s % 4
        src = generate_chain_source(n, seed=s)
        want = oracle_chain_sandwich(src)
        w = wrap_gadget(src, "Ch3")
        v = solve_exact(w.instance, ForbiddenFamily.of(*w.family))
        assert v.feasible == want, ("Ch3", s)
        nn = n + n % 2
        src2 = generate_chain_source(nn, seed=s, matching=True)
        w2 = wrap_gadget(src2, "ECh4")
        v2 = solve_exact(w2.instance, ForbiddenFamily.of(*w2.family))
        assert v2.feasible == oracle_chain_sandwich(src2), ("ECh4", s)


def test_one_in_three_wraps_match_oracle():
    rng = random.Random(9)
    for trial in range(6):
        f = _random_formula(rng, 1 + trial % 2, rng.randint(3, 5))
        want = oracle_one_in_three(f)
        src = reduce_one_in_three(f).instance
        for kind in ("P4gadget", "Pprime"):
            w = wrap_gadget(src, kind)
            v = solve_exact(w.instance, ForbiddenFamily.of(*w.family))
            assert v.feasible == want, (trial, kind)


# --- 3-coloring reductions -----------------------------------------------------------

def test_3col_k3_feasible():
    out = reduce_3col(Graph.complete(3), "pawK4")
    v = solve_exact(out.instance, ForbiddenFamily.of(*out.family))
    assert v.feasible


def test_3col_k4_infeasible():
    out = reduce_3col(Graph.complete(4), "pawK4")
    v = solve_exact(out.instance, ForbiddenFamily.of(*out.family))
    assert not v.feasible


def test_3col_rejects_triangle_free_source():
    with pytest.raises(ValueError):
        reduce_3col(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), "pawK4")


def test_3col_matches_oracle():
    rng = random.Random(3)
    done = 0
    while done < 25:
        n = rng.randint(4, 7)
        edges = [p for p in itertools.combinations(range(n), 2)
                 if rng.random() < 0.5]
        h = Graph.from_edges(n, edges)
        if not h.is_connected() or not h.has_triangle():
            continue
        done += 1
        out = reduce_3col(h, "pawK4")
        v = solve_exact(out.instance, ForbiddenFamily.of(*out.family))
        assert v.feasible == oracle_3col(h)


def test_tripartite_reduction_structure():
    h = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    t = 5
    out = reduce_3col(h, "pawCoK4", t=t)
    inst = out.instance
    assert inst.n == 4 + 3 * t
    assert out.family == ("co-paw", "K4")
    # the three external sets are pairwise completely joined and internally
    # untouchable (neither mandatory nor optional)
    parts = [range(4 + i * t, 4 + (i + 1) * t) for i in range(3)]
    for pa, pb in itertools.combinations(parts, 2):
        for u, w in itertools.product(pa, pb):
            assert tuple(sorted((u, w))) in inst.mandatory
    for part in parts:
        for u, w in itertools.combinations(part, 2):
            p = tuple(sorted((u, w)))
            assert p not in inst.mandatory and p not in inst.optional
    co = out.meta["complemented_variant"]
    assert co.family == ("paw", "co-K4")
    assert co.instance == inst.complemented()
    assert out.meta["guaranteed"] is False
    assert reduce_3col(h, "pawCoK4").meta["guaranteed"] is True


def test_tripartite_witness_verifies():
    fam = ForbiddenFamily.of("co-paw", "K4")
    rng = random.Random(17)
    for _ in range(10):
        n = rng.randint(3, 6)
        edges = [p for p in itertools.combinations(range(n), 2)
                 if rng.random() < 0.4]
        h = Graph.from_edges(n, edges)
        coloring = find_3coloring(h)
        if coloring is None:
            continue
        out = reduce_3col(h, "pawCoK4", t=4)
        w = tripartite_witness(h, coloring, t=4)
        assert verify_sandwich(out.instance, w, fam.graphs)


# --- oracles and sources ----------------------------------------------------------

def test_oracle_one_in_three_single_clause():
    f = OneInThreeInstance.of(3, [[(0, True), (1, True), (2, True)]])
    assert oracle_one_in_three(f)


def test_oracle_3col_k4_false():
    assert not oracle_3col(Graph.complete(4))


def test_oracle_chain_2k2_false():
    inst = generate_chain_source(4, seed=0)
    inst = inst.__class__(4, frozenset({(0, 1), (2, 3)}), frozenset())
    assert not oracle_chain_sandwich(inst)


def test_chain_source_is_deterministic():
    a = generate_chain_source(6, seed=4)
    b = generate_chain_source(6, seed=4)
    assert a == b


def test_matching_source_has_perfect_matching():
    src = generate_chain_source(8, seed=2, matching=True)
    deg = [0] * 8
    for u, v in src.mandatory:
        deg[u] += 1
        deg[v] += 1
    assert deg == [1] * 8
    with pytest.raises(ValueError):
        generate_chain_source(5, seed=0, matching=True)
