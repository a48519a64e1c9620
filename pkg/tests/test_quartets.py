"""Quartet catalog: the 11 order-4 graphs, pair canonicalization, the
status table, and closure rules."""

import itertools
import time

import pytest

from sandwich4.graphs import Graph, contains_induced, is_pattern_free
from sandwich4.quartets import (CLOSURE_FAMILIES, CO_NAME, NPC_PAIRS,
                                POLY_PAIRS, QUARTET_NAMES, ForbiddenFamily,
                                all_canonical_pairs, canonical_pair,
                                closure_rule, co_pair, pair_status, pattern,
                                quartet, status_table)


def test_eleven_quartets():
    assert len(QUARTET_NAMES) == 11
    for name in QUARTET_NAMES:
        assert quartet(name).n == 4


def test_quartets_pairwise_nonisomorphic():
    gs = [quartet(name) for name in QUARTET_NAMES]
    for a, b in itertools.combinations(gs, 2):
        if a.num_edges() != b.num_edges():
            continue
        assert not (contains_induced(a, b) and contains_induced(b, a))


def test_co_names_are_complements():
    for name, co in CO_NAME.items():
        if name.startswith("co-") or name in ("C4",):  # self-paired handled below
            continue
        g, h = quartet(name), quartet(co)
        assert sorted(g.complement().edges()) == sorted(h.edges()) or \
            contains_induced(g.complement(), h)


def test_self_complementary_quartets():
    assert CO_NAME["P4"] == "P4"
    p4 = quartet("P4")
    assert contains_induced(p4.complement(), p4)


def test_p4_is_a_path():
    assert sorted(quartet("P4").edges()) == [(0, 1), (1, 2), (2, 3)]


def test_co_paw_is_k1_plus_p3():
    g = quartet("co-paw")
    comps = sorted(g.components(), key=len)
    assert [len(c) for c in comps] == [1, 3]
    assert g.induced(comps[1]).num_edges() == 2


def test_small_patterns():
    assert pattern("K3").num_edges() == 3
    assert pattern("P3").num_edges() == 2
    assert pattern("co-P3").num_edges() == 1


# --- pair canonicalization and status ----------------------------------------

def test_canonical_pair_is_symmetric_and_co_invariant():
    for a, b in itertools.combinations(QUARTET_NAMES, 2):
        c1 = canonical_pair(a, b)
        assert c1 == canonical_pair(b, a)
        assert c1 == canonical_pair(CO_NAME[a], CO_NAME[b])


def test_thirty_canonical_pairs():
    pairs = all_canonical_pairs()
    assert len(pairs) == 30
    assert len(set(pairs)) == 30


def test_status_counts():
    table = status_table()
    by = {}
    for e in table:
        by.setdefault(e.status, []).append(e.pair)
    assert len(by["Poly"]) == 15
    assert len(by["NPComplete"]) == 7
    assert len(by["Open"]) == 8


def test_status_invariant_under_complement():
    for a, b in itertools.combinations(QUARTET_NAMES, 2):
        assert pair_status(a, b).status == \
            pair_status(CO_NAME[a], CO_NAME[b]).status


def test_poly_and_npc_tables_disjoint():
    assert not set(POLY_PAIRS) & set(NPC_PAIRS)


def test_known_statuses():
    assert pair_status("P4", "C4").status == "Poly"
    assert pair_status("K4", "co-K4").status == "Poly"
    assert pair_status("paw", "co-diamond").status == "NPComplete"
    assert pair_status("diamond", "co-diamond").status == "NPComplete"
    assert pair_status("C4", "K4").status == "NPComplete"
    assert pair_status("claw", "K4").status == "Open"


def test_forbidden_family_complement():
    fam = ForbiddenFamily.of("paw", "C4")
    co = fam.complemented()
    assert set(co.names) == {"co-paw", "co-C4"}


# --- closure rules -------------------------------------------------------------

def _all_supergraph_completions(member, family_graphs):
    """Reference enumeration: supergraphs of the member (same order) that
    are family-free."""
    missing = [p for p in itertools.combinations(range(member.n), 2)
               if not member.has_edge(*p)]
    out = []
    for r in range(len(missing) + 1):
        for extra in itertools.combinations(missing, r):
            g = member.add_edges(extra)
            if is_pattern_free(g, family_graphs):
                out.append(g)
    return out


def test_closure_diamond_c4():
    rule = closure_rule(frozenset({"diamond", "C4"}), "diamond")
    assert rule.completion == Graph.complete(4)


def test_closure_diamond_k4_is_fatal():
    assert closure_rule(frozenset({"diamond", "K4"}), "diamond").completion is None
    assert closure_rule(frozenset({"diamond", "K4"}), "K4").completion is None


def test_closure_p3_to_k3():
    rule = closure_rule(frozenset({"P3"}), "P3")
    assert rule.completion is not None
    assert rule.completion.num_edges() == 3


def test_closure_p4_k3():
    assert closure_rule(frozenset({"P4", "K3"}), "K3").completion is None
    rule = closure_rule(frozenset({"P4", "K3"}), "P4")
    # P4 closes into C4
    assert sorted(rule.completion.edges()) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_every_registered_closure_is_unique_and_fast():
    """Each rule's completion is the unique family-free supergraph of the
    member; fatal rules have none.  Same enumeration as the slow
    end-to-end check, kept fast here for quick runs."""
    start = time.perf_counter()
    for names in CLOSURE_FAMILIES:
        fam = tuple(pattern(x) for x in sorted(names))
        for member_name in sorted(names):
            member = pattern(member_name)
            rule = closure_rule(names, member_name)
            completions = _all_supergraph_completions(member, fam)
            if rule.completion is None:
                assert completions == []
            else:
                assert completions == [rule.completion]
    assert time.perf_counter() - start < 1.0


def test_co_pair_round_trip():
    assert co_pair(("paw", "C4")) == ("co-C4", "co-paw")
    assert co_pair(co_pair(("P4", "claw"))) == ("P4", "claw")
