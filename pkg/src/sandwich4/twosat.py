"""2-SAT over an arbitrary hashable variable universe.

Implication graph + iterative Tarjan SCC; the assignment rule is the usual
one (a variable is true iff its positive literal's component comes later in
reverse topological order), which is deterministic for a fixed clause list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Optional

Literal = tuple[Hashable, bool]  # (variable, polarity)


@dataclass
class TwoSatFormula:
    clauses: list[tuple[Literal, ...]] = field(default_factory=list)

    def add_clause(self, *lits: Literal):
        if not 1 <= len(lits) <= 2:
            raise ValueError("clauses must have one or two literals")
        self.clauses.append(tuple(lits))

    def add_unit(self, var: Hashable, value: bool):
        self.add_clause((var, value))

    def variables(self) -> list:
        seen = []
        have = set()
        for clause in self.clauses:
            for var, _ in clause:
                if var not in have:
                    have.add(var)
                    seen.append(var)
        return seen


def solve_two_sat(f: TwoSatFormula) -> Optional[dict]:
    """Satisfying assignment as {variable: bool}, or None."""
    variables = f.variables()
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)

    # literal id: 2*i for x_i, 2*i+1 for not x_i
    def lid(var, pol):
        return 2 * index[var] + (0 if pol else 1)

    adj = [[] for _ in range(2 * n)]
    for clause in f.clauses:
        if len(clause) == 1:
            (v, p), = clause
            adj[lid(v, not p)].append(lid(v, p))
        else:
            (v1, p1), (v2, p2) = clause
            adj[lid(v1, not p1)].append(lid(v2, p2))
            adj[lid(v2, not p2)].append(lid(v1, p1))

    # iterative Tarjan
    comp = [-1] * (2 * n)
    low = [0] * (2 * n)
    num = [-1] * (2 * n)
    counter = 0
    ncomps = 0
    stack = []
    on_stack = [False] * (2 * n)

    for root in range(2 * n):
        if num[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            node, ei = work[-1]
            if ei == 0:
                num[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            recurse = False
            for j in range(ei, len(adj[node])):
                nxt = adj[node][j]
                if num[nxt] == -1:
                    work[-1] = (node, j + 1)
                    work.append((nxt, 0))
                    recurse = True
                    break
                elif on_stack[nxt]:
                    low[node] = min(low[node], num[nxt])
            if recurse:
                continue
            work.pop()
            if low[node] == num[node]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomps
                    if w == node:
                        break
                ncomps += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])

    assignment = {}
    for v, i in index.items():
        if comp[2 * i] == comp[2 * i + 1]:
            return None
        # Tarjan emits components in reverse topological order, so a lower
        # component id means "later in topological order" -> prefer it
        assignment[v] = comp[2 * i] < comp[2 * i + 1]
    return assignment
