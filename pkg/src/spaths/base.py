"""Feasible sets and bases, described combinatorially by the forest G[B].

A feasible set U is a set of covered terminals (singletons) plus a set of edges
(lines). It is independent iff every component Z of the graph (V, E[U]) is a tree
with at most one terminal per block and |Z & T| + |Z & T[U]| <= 2. It is a base if
additionally every component holds a terminal and the sum above equals 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .instance import Instance


class InvariantError(RuntimeError):
    pass


@dataclass(frozen=True)
class FeasibleBase:
    terminals: frozenset[int]
    edges: frozenset[int]
    comp_of: tuple[int, ...]                 # comp_of[v] for v in 1..n (index 0 unused)
    comp_vertices: tuple[tuple[int, ...], ...]
    comp_terminals: tuple[tuple[int, ...], ...]
    comp_covered: tuple[tuple[int, ...], ...]

    @property
    def num_lines(self) -> int:
        return len(self.edges)

    def dump(self, inst: Instance) -> str:
        pairs = ",".join(f"{inst.edges[e][0]}-{inst.edges[e][1]}" for e in sorted(self.edges))
        return f"B: terminals={','.join(map(str, sorted(self.terminals)))} edges={pairs}"


def build(inst: Instance, terminals: Iterable[int], edges: Iterable[int]) -> FeasibleBase:
    """Attach component bookkeeping to a (terminals, edges) pair. No feasibility check."""
    terminals = frozenset(terminals)
    edges = frozenset(edges)
    adj: list[list[int]] = [[] for _ in range(inst.n + 1)]
    for e in edges:
        u, v = inst.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    comp = [-1] * (inst.n + 1)
    verts: list[tuple[int, ...]] = []
    for s in range(1, inst.n + 1):
        if comp[s] >= 0:
            continue
        cid = len(verts)
        comp[s] = cid
        members, stack = [s], [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if comp[v] < 0:
                    comp[v] = cid
                    members.append(v)
                    stack.append(v)
        verts.append(tuple(sorted(members)))
    block_of = inst.block_of
    cterm = tuple(tuple(v for v in z if v in block_of) for z in verts)
    ccov = tuple(tuple(v for v in z if v in terminals) for z in verts)
    return FeasibleBase(terminals, edges, tuple(comp), tuple(verts), cterm, ccov)


def _violation(inst: Instance, U: FeasibleBase, need_base: bool) -> Optional[str]:
    block_of = inst.block_of
    for t in U.terminals:
        if t not in block_of:
            return f"singleton {t} is not a terminal"
    edge_count = [0] * len(U.comp_vertices)
    for e in U.edges:
        edge_count[U.comp_of[inst.edges[e][0]]] += 1
    for cid, z in enumerate(U.comp_vertices):
        if edge_count[cid] != len(z) - 1:
            return f"component {cid} is not a tree"
        blocks = [block_of[t] for t in U.comp_terminals[cid]]
        if len(set(blocks)) != len(blocks):
            return f"component {cid} has two terminals of one block"
        load = len(U.comp_terminals[cid]) + len(U.comp_covered[cid])
        if load > 2:
            return f"component {cid} carries {load} > 2 terminal incidences"
        if need_base:
            if not U.comp_terminals[cid]:
                return f"component {cid} has no terminal"
            if load != 2:
                return f"component {cid} carries {load} != 2 terminal incidences"
    return None


def is_feasible_independent(inst: Instance, terminals: Iterable[int], edges: Iterable[int]) -> bool:
    return _violation(inst, build(inst, terminals, edges), False) is None


def is_feasible_base(inst: Instance, terminals: Iterable[int], edges: Iterable[int]) -> bool:
    return _violation(inst, build(inst, terminals, edges), True) is None


def check_base(inst: Instance, B: FeasibleBase) -> None:
    problem = _violation(inst, B, True)
    if problem:
        raise InvariantError(f"not a feasible base: {problem}")
    if len(B.terminals) + 2 * len(B.edges) != 2 * inst.n - inst.k:
        raise InvariantError("base size identity fails")


def grow_forest(inst: Instance, seeds: list[list[int]], edges: Iterable[int] = ()) -> set[int]:
    """Extend vertex-disjoint trees to a spanning forest by multi-source BFS.

    seeds lists the vertex sets of the starting trees, edges their edges. Every other
    vertex joins the first tree that reaches it, scanning in ascending id order.
    """
    out = set(edges)
    owned = [False] * (inst.n + 1)
    dq: deque[int] = deque()
    for group in seeds:
        for v in group:
            owned[v] = True
            dq.append(v)
    adj = inst.adjacency()
    while dq:
        u = dq.popleft()
        for v, e in adj[u]:
            if not owned[v]:
                owned[v] = True
                out.add(e)
                dq.append(v)
    if not all(owned[1:]):
        raise InvariantError("some vertex is unreachable from the seed trees")
    return out


def initialize_base(inst: Instance) -> FeasibleBase:
    """All singletons plus a spanning forest of k trees, one terminal per tree."""
    terms = inst.terminals
    if not terms:
        raise ValueError("instance has no terminals")
    B = build(inst, terms, grow_forest(inst, [[t] for t in terms]))
    check_base(inst, B)
    return B


def apply_symmetric_difference(inst: Instance, B: FeasibleBase, add_lines: Iterable[int],
                               remove_singletons: Iterable[int],
                               remove_lines: Iterable[int]) -> FeasibleBase:
    add_lines, remove_singletons, remove_lines = set(add_lines), set(remove_singletons), set(remove_lines)
    if not remove_singletons <= B.terminals:
        raise ValueError(f"singletons {sorted(remove_singletons - B.terminals)} are not in the base")
    if not remove_lines <= B.edges:
        raise ValueError(f"lines {sorted(remove_lines - B.edges)} are not in the base")
    if add_lines & B.edges:
        raise ValueError(f"lines {sorted(add_lines & B.edges)} are already in the base")
    new = build(inst, B.terminals - remove_singletons, (B.edges - remove_lines) | add_lines)
    check_base(inst, new)
    return new
