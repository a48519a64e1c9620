"""Exact sandwich solver: forbidden patterns compiled to clauses over
edge variables, then backtracking search with unit propagation.

One boolean variable per optional pair; mandatory pairs are fixed true and
pairs outside the upper graph fixed false.  Every k-subset and every distinct
labeling of a forbidden pattern yields the clause "not all pairs match",
with fixed pairs folded in at compile time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from numba import njit

from .graphs import (Graph, SandwichInstance, Verdict, _PAIR_SLOTS,
                     pattern_set, verify_sandwich)
from .quartets import ForbiddenFamily


class BudgetExceeded(Exception):
    """Search node budget exhausted before a verdict was reached."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass
class ClauseSet:
    """Clauses over edge variables.  A literal is 2*var + s, where s=1
    requires the variable true and s=0 requires it false."""

    num_vars: int
    var_pairs: list  # var id -> (u, v)
    clauses: list  # list of tuples of literal ints, each sorted
    infeasible: bool = False  # an empty clause appeared during compilation


def _pattern_bits_by_order(family: ForbiddenFamily) -> dict[int, list[int]]:
    by_order = {}
    for g in family.graphs:
        bits = by_order.setdefault(g.n, set())
        bits |= pattern_set(g)
    return {k: sorted(v) for k, v in by_order.items()}


def compile_clauses(inst: SandwichInstance, family: ForbiddenFamily) -> ClauseSet:
    n = inst.n
    var_pairs = inst.sorted_optional()
    num_vars = len(var_pairs)

    # per-pair status: variable id, or fixed truth value
    pair_id = np.full((n, n), -1, dtype=np.int64)
    fixed_val = np.full((n, n), 0, dtype=np.int8)  # absent pairs are false
    for u, v in inst.mandatory:
        fixed_val[u, v] = fixed_val[v, u] = 1
    for i, (u, v) in enumerate(var_pairs):
        pair_id[u, v] = pair_id[v, u] = i
        fixed_val[u, v] = fixed_val[v, u] = -1  # marks "variable"

    blocks = []
    max_slots = 0
    for k, patterns in _pattern_bits_by_order(family).items():
        if n < k:
            continue
        subs = np.array(list(itertools.combinations(range(n), k)),
                        dtype=np.int64)
        slots = _PAIR_SLOTS[k]
        max_slots = max(max_slots, len(slots))
        us = subs[:, [a for a, _ in slots]]
        vs = subs[:, [b for _, b in slots]]
        slot_fixed = fixed_val[us, vs]  # (rows, nslots)
        slot_var = pair_id[us, vs]
        is_var = slot_fixed == -1
        for bits in patterns:
            req = np.array([(bits >> i) & 1 for i in range(len(slots))],
                           dtype=np.int8)
            alive = ~((~is_var) & (slot_fixed != req)).any(axis=1)
            if not alive.any():
                continue
            lits = np.where(is_var[alive],
                            2 * slot_var[alive] + (1 - req),
                            -1)
            lits.sort(axis=1)
            blocks.append(lits)

    infeasible = False
    clauses = []
    if blocks:
        width = max(b.shape[1] for b in blocks)
        padded = [np.pad(b, ((0, 0), (width - b.shape[1], 0)),
                         constant_values=-1) for b in blocks]
        rows = np.unique(np.vstack(padded), axis=0)
        for row in rows.tolist():
            clause = tuple(x for x in row if x >= 0)
            if not clause:
                infeasible = True
                break
            clauses.append(clause)

    return ClauseSet(num_vars, var_pairs, sorted(set(clauses)), infeasible)


@njit(cache=True)
def _assign(var, val, assignment, trail, trail_len, sat_count, free_count,
            score, num_active, cl_lits, cl_off, occ_ids, occ_off, qvar, qval):
    """Set var and propagate units.  Returns (ok, trail_len, num_active);
    counter updates for a conflicting step are still fully applied, so
    _undo_to can reverse it uniformly."""
    qn = 0
    qvar[qn] = var
    qval[qn] = val
    qn += 1
    while qn > 0:
        qn -= 1
        var = qvar[qn]
        val = qval[qn]
        a = assignment[var]
        if a != -1:
            if a != val:
                return False, trail_len, num_active
            continue
        assignment[var] = val
        trail[trail_len] = var
        trail_len += 1
        lit = 2 * var + val
        for k in range(occ_off[lit], occ_off[lit + 1]):
            cid = occ_ids[k]
            s = sat_count[cid]
            sat_count[cid] = s + 1
            if s == 0:
                num_active -= 1
                for j in range(cl_off[cid], cl_off[cid + 1]):
                    score[cl_lits[j] >> 1] -= 1
        lit = 2 * var + (1 - val)
        # first pass applies every counter update and detects conflicts;
        # units are only enqueued once the whole pass came up clean
        conflict = False
        for k in range(occ_off[lit], occ_off[lit + 1]):
            cid = occ_ids[k]
            left = free_count[cid] - 1
            free_count[cid] = left
            if left == 0 and sat_count[cid] == 0:
                conflict = True
        if conflict:
            return False, trail_len, num_active
        for k in range(occ_off[lit], occ_off[lit + 1]):
            cid = occ_ids[k]
            if free_count[cid] == 1 and sat_count[cid] == 0:
                for j in range(cl_off[cid], cl_off[cid + 1]):
                    l2 = cl_lits[j]
                    if assignment[l2 >> 1] == -1:
                        qvar[qn] = l2 >> 1
                        qval[qn] = l2 & 1
                        qn += 1
                        break
    return True, trail_len, num_active


@njit(cache=True)
def _undo_to(mark, assignment, trail, trail_len, sat_count, free_count,
             score, num_active, cl_lits, cl_off, occ_ids, occ_off):
    while trail_len > mark:
        trail_len -= 1
        var = trail[trail_len]
        val = assignment[var]
        assignment[var] = -1
        lit = 2 * var + val
        for k in range(occ_off[lit], occ_off[lit + 1]):
            cid = occ_ids[k]
            s = sat_count[cid] - 1
            sat_count[cid] = s
            if s == 0:
                num_active += 1
                for j in range(cl_off[cid], cl_off[cid + 1]):
                    score[cl_lits[j] >> 1] += 1
        lit = 2 * var + (1 - val)
        for k in range(occ_off[lit], occ_off[lit + 1]):
            free_count[occ_ids[k]] += 1
    return trail_len, num_active


@njit(cache=True)
def _search(nv, nc, cl_lits, cl_off, occ_ids, occ_off, assignment, budget):
    """Backtracking loop.  Returns (status, nodes) with status 1 feasible
    (assignment filled in), 0 infeasible, 2 budget exhausted."""
    sat_count = np.zeros(nc, dtype=np.int32)
    free_count = np.empty(nc, dtype=np.int32)
    for c in range(nc):
        free_count[c] = cl_off[c + 1] - cl_off[c]
    # active (unsatisfied) clauses the variable appears in
    score = np.zeros(nv + 1, dtype=np.int64)
    for i in range(cl_off[nc]):
        score[cl_lits[i] >> 1] += 1
    num_active = nc
    trail = np.empty(nv + 1, dtype=np.int64)
    trail_len = 0
    qvar = np.empty(nc + nv + 2, dtype=np.int64)
    qval = np.empty(nc + nv + 2, dtype=np.int64)
    # decision stack: variable, value tried, trail length before assign
    svar = np.empty(nv + 1, dtype=np.int64)
    sval = np.empty(nv + 1, dtype=np.int64)
    smark = np.empty(nv + 1, dtype=np.int64)
    depth = 0
    nodes = 0
    pvar = -1  # pending decision, -1 -> choose fresh
    pval = 0
    while True:
        if pvar < 0:
            if num_active == 0:
                for v in range(nv):
                    if assignment[v] == -1:
                        assignment[v] = 0
                return 1, nodes
            # branch on the variable in the most active clauses, lowest
            # id on ties; trying false first keeps witnesses edge-lean
            best = np.int64(-1)
            pvar = 0
            for v in range(nv):
                if assignment[v] == -1 and score[v] > best:
                    best = score[v]
                    pvar = v
            pval = 0
        var, val = pvar, pval
        pvar = -1
        nodes += 1
        if budget >= 0 and nodes > budget:
            return 2, nodes
        svar[depth] = var
        sval[depth] = val
        smark[depth] = trail_len
        depth += 1
        ok, trail_len, num_active = _assign(
            var, val, assignment, trail, trail_len, sat_count, free_count,
            score, num_active, cl_lits, cl_off, occ_ids, occ_off, qvar, qval)
        if not ok:
            # backtrack: unwind to the deepest decision whose other value
            # is untried
            while depth > 0:
                depth -= 1
                trail_len, num_active = _undo_to(
                    smark[depth], assignment, trail, trail_len, sat_count,
                    free_count, score, num_active, cl_lits, cl_off,
                    occ_ids, occ_off)
                if sval[depth] == 0:
                    pvar = svar[depth]
                    pval = 1
                    break
            if pvar < 0:
                return 0, nodes


def solve_exact(inst: SandwichInstance, family: ForbiddenFamily,
                budget: Optional[int] = None,
                stats: Optional[dict] = None) -> Verdict:
    """Complete backtracking over edge variables.

    Deterministic: branch on the variable in the most unsatisfied clauses
    (lowest id on ties), trying false before true so witnesses stay
    edge-lean.  `budget` bounds the number of decisions; exceeding it
    raises BudgetExceeded.  `stats`, when given, receives the node count.
    """
    if stats is None:
        stats = {}
    stats["nodes"] = 0
    cs = compile_clauses(inst, family)
    if cs.infeasible:
        return Verdict.no()

    nv = cs.num_vars
    clauses = cs.clauses
    nc = len(clauses)

    # clause literals in CSR form; within a clause literals stay sorted,
    # so unit propagation picks the lowest unassigned literal
    maxlen = max((len(c) for c in clauses), default=1)
    lit_pad = np.full((nc, maxlen), -1, dtype=np.int64)
    for cid, clause in enumerate(clauses):
        lit_pad[cid, :len(clause)] = clause
    lens = (lit_pad >= 0).sum(axis=1)
    cl_off = np.zeros(nc + 1, dtype=np.int64)
    np.cumsum(lens, out=cl_off[1:])
    cl_lits = lit_pad[lit_pad >= 0]
    # literal -> clause ids (ascending), built by one stable sort of the
    # padded literal matrix; padding sorts first and is never dereferenced
    flat = lit_pad.ravel()
    order = np.argsort(flat, kind="stable")
    occ_ids = order // maxlen
    occ_off = np.searchsorted(flat[order], np.arange(2 * nv + 1))

    assignment = np.full(nv, -1, dtype=np.int8)
    status, nodes = _search(nv, nc, cl_lits, cl_off, occ_ids, occ_off,
                            assignment, -1 if budget is None else budget)
    stats["nodes"] = int(nodes)
    if status == 2:
        raise BudgetExceeded(int(nodes))
    if status == 0:
        return Verdict.no()
    edges = list(inst.mandatory)
    edges += [cs.var_pairs[v] for v in range(nv) if assignment[v] == 1]
    witness = Graph.from_edges(inst.n, edges)
    assert verify_sandwich(inst, witness, family.graphs)
    return Verdict.yes(witness)


def naive_enumerate(inst: SandwichInstance,
                    family: ForbiddenFamily) -> Verdict:
    """Brute-force oracle: try every subset of optional edges, smallest
    first, lexicographic within a size.  Test use only."""
    from .graphs import is_pattern_free

    opts = inst.sorted_optional()
    graphs = family.graphs
    for r in range(len(opts) + 1):
        for chosen in itertools.combinations(opts, r):
            g = Graph.from_edges(inst.n, list(inst.mandatory) + list(chosen))
            if is_pattern_free(g, graphs):
                return Verdict.yes(g)
    return Verdict.no()
