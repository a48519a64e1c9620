"""Exact solver: clause compilation vectors, verdict cross-checks against
blind enumeration, budgets, and determinism."""

import pytest
from hypothesis import given, settings

from sandwich4.exact import (BudgetExceeded, compile_clauses, naive_enumerate,
                             solve_exact)
from sandwich4.graphs import Graph, SandwichInstance, verify_sandwich
from sandwich4.quartets import ForbiddenFamily, all_canonical_pairs

from strategies import instances

C5 = [(i, (i + 1) % 5) for i in range(5)]


def test_compile_forced_k4_is_infeasible():
    inst = SandwichInstance.from_pairs(
        4, [(a, b) for a in range(4) for b in range(a + 1, 4)], [])
    cs = compile_clauses(inst, ForbiddenFamily.of("K4", "diamond"))
    assert cs.infeasible


def test_compile_small_instance_has_no_clauses():
    inst = SandwichInstance.from_pairs(3, [(0, 1)], [(1, 2)])
    cs = compile_clauses(inst, ForbiddenFamily.of("paw", "C4"))
    assert cs.clauses == [] and not cs.infeasible


def test_compile_diamond_with_one_variable():
    # diamond mandatory, missing pair optional: adding it makes K4,
    # leaving it out keeps the diamond -- jointly unsatisfiable
    diamond = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    inst = SandwichInstance.from_pairs(4, diamond, [(2, 3)])
    fam = ForbiddenFamily.of("diamond", "K4")
    cs = compile_clauses(inst, fam)
    assert sorted(cs.clauses) == [(0,), (1,)]
    assert not solve_exact(inst, fam).feasible


def test_c5_is_paw_co_paw_feasible():
    inst = SandwichInstance.from_pairs(5, C5, [])
    v = solve_exact(inst, ForbiddenFamily.of("paw", "co-paw"))
    assert v.feasible and v.witness == Graph.from_edges(5, C5)


def test_forced_co_claw_is_infeasible():
    inst = SandwichInstance.from_pairs(4, [(0, 1), (0, 2), (1, 2)], [])
    assert not solve_exact(inst, ForbiddenFamily.of("co-claw")).feasible


def test_budget_exhaustion_raises():
    inst = SandwichInstance.from_pairs(
        8, [], [(a, b) for a in range(8) for b in range(a + 1, 8)])
    with pytest.raises(BudgetExceeded) as exc:
        solve_exact(inst, ForbiddenFamily.of("C4", "co-C4"), budget=2)
    assert exc.value.nodes == 3


def test_node_stats_are_reported():
    inst = SandwichInstance.from_pairs(5, C5, [(0, 2), (1, 3)])
    stats = {}
    solve_exact(inst, ForbiddenFamily.of("paw", "C4"), stats=stats)
    assert stats["nodes"] >= 1


@given(instances(max_n=5))
@settings(max_examples=120, deadline=None)
def test_matches_naive_enumeration(inst):
    fam = ForbiddenFamily.of("paw", "co-paw")
    assert solve_exact(inst, fam).feasible == \
        naive_enumerate(inst, fam).feasible


def test_matches_naive_on_every_pair():
    import random
    import itertools
    rng = random.Random(11)
    for pair in all_canonical_pairs():
        fam = ForbiddenFamily.of(*pair)
        for _ in range(6):
            n = rng.randint(4, 6)
            pairs = list(itertools.combinations(range(n), 2))
            mand = {p for p in pairs if rng.random() < 0.3}
            opt = {p for p in pairs if p not in mand and rng.random() < 0.5}
            inst = SandwichInstance(n, frozenset(mand), frozenset(opt))
            assert solve_exact(inst, fam).feasible == \
                naive_enumerate(inst, fam).feasible


@given(instances(min_n=4, max_n=6))
@settings(max_examples=80, deadline=None)
def test_witness_verifies_and_is_deterministic(inst):
    fam = ForbiddenFamily.of("diamond", "co-diamond")
    a = solve_exact(inst, fam)
    b = solve_exact(inst, fam)
    assert a.feasible == b.feasible
    if a.feasible:
        assert verify_sandwich(inst, a.witness, fam.graphs)
        assert a.witness == b.witness
