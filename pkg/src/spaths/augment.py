"""Augment a feasible base by one line, or certify that it is already maximum.

The main route is an alternating label search on the dependence graph. Elements are
the base elements (columns of D) and the non-base edge-twins (rows of D). Toggling a
set F of elements turns B into the base B ^ F exactly when the submatrix D[F rows,
F cols] is square and nonsingular, so every candidate is checked that way before it
is accepted. Along a search path the adjacency of an element is read from its row of
the pivoted matrix (the Schur complement with respect to the path so far).

Label search alone is not guaranteed to find an augmentation. When it gives up we fall
back on two exact arguments: a counting bound on the packing size, and the rank of the
generic skew matrix sum_e x_e (e° e•^T - e• e°^T) evaluated at random points of a large
prime field, whose half-rank is the largest number of lines in any base. If that rank
shows room for another line, a base with one more line is rebuilt from a minimal edge
set that still attains it.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .base import FeasibleBase, apply_symmetric_difference, build, check_base, grow_forest
from .dependence import DependenceMatrix
from .instance import Instance
from .representation import BULLET, CIRC, Labeling, rank, solve_left

# Prime used for the randomized rank test (2**31 - 1 keeps products inside int64).
BIG_PRIME = 2 ** 31 - 1


class SearchBugError(RuntimeError):
    def __init__(self, message: str, path: Optional[AugmentingPath] = None):
        super().__init__(message)
        self.path = path


@dataclass
class DependenceGraph:
    """Bipartite support of D: row_adj[r] = [(col, d)], col_adj[c] = [(row, d)]."""
    row_adj: list[list[tuple[int, int]]]
    col_adj: list[list[tuple[int, int]]]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.row_adj)


def build_dependence_graph(D: DependenceMatrix) -> DependenceGraph:
    nr, nc = D.data.shape
    row_adj: list[list[tuple[int, int]]] = [[] for _ in range(nr)]
    col_adj: list[list[tuple[int, int]]] = [[] for _ in range(nc)]
    rs, cs = np.nonzero(D.data)
    for r, c in zip(rs.tolist(), cs.tolist()):
        val = int(D.data[r, c])
        row_adj[r].append((c, val))
        col_adj[c].append((r, val))
    return DependenceGraph(row_adj, col_adj)


@dataclass
class AugmentingPath:
    singletons: tuple[int, int]
    added: list[int]      # non-base lines entering the base
    removed: list[int]    # base lines leaving the base


@dataclass
class NewBase:
    base: FeasibleBase
    path: Optional[AugmentingPath] = None
    via: str = "search"


@dataclass
class Maximum:
    reason: str


AugmentResult = Union[NewBase, Maximum]


@dataclass
class SearchStats:
    scans: int = 0
    candidates: int = 0
    rank_tests: int = 0


def packing_upper_bound(inst: Instance) -> int:
    """Each path spends two terminals, at most one of them from any single block."""
    k = inst.k
    if not inst.blocks:
        return 0
    return min(k // 2, k - max(len(b) for b in inst.blocks))


class _Search:
    def __init__(self, D: DependenceMatrix):
        self.D = D
        self.q = D.q
        self.nb = len(D.cols)
        self.nr = len(D.rows)
        self.ne = self.nb + self.nr
        self.ns = sum(1 for c in D.cols if c[0] == "s")
        self.stats = SearchStats()

    def partner(self, i: int) -> int:
        if i < self.ns:
            return -1
        if i < self.nb:
            return self.ns + ((i - self.ns) ^ 1)
        return self.nb + ((i - self.nb) ^ 1)

    def qrow(self, i: int) -> np.ndarray:
        row = np.zeros(self.ne, dtype=np.int64)
        if i < self.nb:
            row[self.nb:] = self.D.data[:, i]
        else:
            row[:self.nb] = (-self.D.data[i - self.nb].astype(np.int64)) % self.q
        return row

    def transformed_row(self, u: int, P: list[int]) -> np.ndarray:
        R = self.qrow(u)
        if not P:
            return R
        rows = np.array([self.qrow(i) for i in P])
        y = solve_left(rows[:, P], R[P], self.q)
        return (R - y @ rows) % self.q

    def feasible(self, F: set[int]) -> bool:
        X = sorted(i - self.nb for i in F if i >= self.nb)
        Y = sorted(i for i in F if i < self.nb)
        if len(X) != len(Y):
            return False
        self.stats.candidates += 1
        return not X or rank(self.D.data[np.ix_(X, Y)].astype(np.int64), self.q) == len(X)

    def run(self) -> Optional[set[int]]:
        ne = self.ne
        label: list[Optional[str]] = [None] * ne
        root = [-1] * ne
        path: list[Optional[list[int]]] = [None] * ne
        queue: deque[int] = deque()
        for i in range(self.ns):
            label[i], root[i], path[i] = "O", i, []
            queue.append(i)
        while queue:
            u = queue.popleft()
            P = path[u]
            used = set(P)
            R = self.transformed_row(u, P)
            self.stats.scans += 1
            R[u] = 0
            if used:
                R[list(used)] = 0
            for g in np.nonzero(R)[0].tolist():
                if label[g] is None:
                    gp = self.partner(g)
                    if gp < 0:
                        continue
                    label[g], root[g] = "I", root[u]
                    label[gp], root[gp], path[gp] = "O", root[u], P + [u, g]
                    queue.append(gp)
                elif label[g] == "O" and root[g] != root[u]:
                    F = used | {u, g} | set(path[g])
                    if len(F) == len(P) + len(path[g]) + 2 and self.feasible(F):
                        return F
                elif label[g] == "O":
                    self._blossom(u, g, path, label, queue)
        return None

    def _blossom(self, u, g, path, label, queue) -> None:
        Pu, Pg = path[u], path[g]
        k = 0
        while k < min(len(Pu), len(Pg)) and Pu[k] == Pg[k]:
            k += 1
        for A, a, Bp, b in ((Pu, u, Pg, g), (Pg, g, Pu, u)):
            for i in range(k, len(A)):
                x = A[i]
                if label[x] != "I":
                    continue
                newp = Bp + [b, a] + A[i + 1:][::-1]
                if len(set(newp)) == len(newp) and x not in newp and self.feasible(set(newp)):
                    label[x], path[x] = "O", newp
                    queue.append(x)


def _path_from_set(D: DependenceMatrix, F: set[int]) -> AugmentingPath:
    nb = len(D.cols)
    sing, added, removed = [], [], []
    for i in sorted(F):
        if i < nb:
            c = D.cols[i]
            if c[0] == "s":
                sing.append(c[1])
            elif c[2] == CIRC:
                removed.append(c[1])
        else:
            e, kind = D.rows[i - nb]
            if kind == CIRC:
                added.append(e)
    if len(sing) != 2:
        raise SearchBugError(f"augmenting set touches {len(sing)} singletons")
    return AugmentingPath((sing[0], sing[1]), added, removed)


def _coords(inst: Instance) -> dict[tuple[int, int], int]:
    coord: dict[tuple[int, int], int] = {}
    nxt = 0
    block_of = inst.block_of
    for v in range(1, inst.n + 1):
        if v in block_of:
            coord[(v, CIRC)] = coord[(v, BULLET)] = nxt
            nxt += 1
        else:
            coord[(v, CIRC)], coord[(v, BULLET)] = nxt, nxt + 1
            nxt += 2
    return coord


def _lines_matrix(inst: Instance, labeling: Labeling, edges: list[int], rng: random.Random) -> np.ndarray:
    """Random evaluation of sum_e x_e (e° e•^T - e• e°^T) over F_BIG_PRIME.

    Independence of unions of lines only depends on theta being injective and nonzero,
    so the same integer labels describe the same parity structure over this field.
    """
    block_of = inst.block_of
    coord = _coords(inst)
    dim = 2 * inst.n - inst.k
    P = BIG_PRIME
    A = np.zeros((dim, dim), dtype=np.int64)
    for e in edges:
        u, v = inst.edges[e]
        twins = []
        for kind in (CIRC, BULLET):
            vec: dict[int, int] = {}
            for w in (u, v):
                s = labeling.mu(inst, e, w)
                if w in block_of and kind == BULLET:
                    s *= labeling.theta[block_of[w]]
                c = coord[(w, kind)]
                vec[c] = (vec.get(c, 0) + s) % P
            twins.append(vec)
        x = rng.randrange(1, P)
        a, b = twins
        for i, ai in a.items():
            for j, bj in b.items():
                val = x * ai % P * bj % P
                A[i, j] = (A[i, j] + val) % P
                A[j, i] = (A[j, i] - val) % P
    return A


def max_lines_estimate(inst: Instance, labeling: Labeling, edges: Optional[list[int]] = None,
                       rng: Optional[random.Random] = None, trials: int = 2) -> int:
    """Largest number of lines among the given edges that are jointly independent.

    Never overestimates; underestimates with probability at most dim / BIG_PRIME per trial.
    """
    rng = rng or random.Random(0)
    edges = list(range(inst.m)) if edges is None else list(edges)
    best = 0
    for _ in range(trials):
        best = max(best, rank(_lines_matrix(inst, labeling, edges, rng), BIG_PRIME) // 2)
    return best


def _rebuild(inst: Instance, labeling: Labeling, B: FeasibleBase, rng: random.Random) -> Optional[FeasibleBase]:
    """A base with one more line than B, built from a minimal edge set attaining that many."""
    target = len(B.edges) + 1
    keep = list(range(inst.m))
    for e in range(inst.m):
        trial = [f for f in keep if f != e]
        if max_lines_estimate(inst, labeling, trial, rng, trials=1) >= target:
            keep = trial
    if len(keep) != target:
        return None
    forest = build(inst, (), keep)
    block_of = inst.block_of
    pairs = []
    for cid, terms in enumerate(forest.comp_terminals):
        if len(terms) == 2 and block_of[terms[0]] != block_of[terms[1]]:
            pairs.append(terms)
    p = target - (inst.n - inst.k)
    if len(pairs) < p:
        return None
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in keep:
        u, v = inst.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    seeds, path_edges, used = [], [], set()
    for a, z in pairs[:p]:
        back = {a: (None, None)}
        dq = deque([a])
        while dq:
            w = dq.popleft()
            for x, e in adj.get(w, []):
                if x not in back:
                    back[x] = (w, e)
                    dq.append(x)
        verts, w = [], z
        while w is not None:
            verts.append(w)
            w, e = back[w]
            if e is not None:
                path_edges.append(e)
        seeds.append(verts)
        used.update((a, z))
    seeds += [[t] for t in inst.terminals if t not in used]
    edges = grow_forest(inst, seeds, path_edges)
    new = build(inst, [t for t in inst.terminals if t not in used], edges)
    check_base(inst, new)
    return new


def augment_or_maximum(inst: Instance, labeling: Labeling, B: FeasibleBase, D: DependenceMatrix,
                       verify: bool = False, seed: int = 0,
                       stats: Optional[SearchStats] = None) -> AugmentResult:
    if len(B.edges) - inst.n + inst.k >= packing_upper_bound(inst):
        return Maximum("bound")
    search = _Search(D)
    F = search.run()
    if stats is not None:
        stats.scans += search.stats.scans
        stats.candidates += search.stats.candidates
    if F is not None:
        path = _path_from_set(D, F)
        try:
            new = apply_symmetric_difference(inst, B, path.added, path.singletons, path.removed)
        except Exception as exc:
            raise SearchBugError(f"augmenting path does not give a base: {exc}", path) from exc
        result: AugmentResult = NewBase(new, path, "search")
    else:
        rng = random.Random(seed)
        if stats is not None:
            stats.rank_tests += 1
        if max_lines_estimate(inst, labeling, None, rng) <= len(B.edges):
            return Maximum("rank")
        new = None
        for attempt in range(5):
            new = _rebuild(inst, labeling, B, rng)
            if new is not None:
                break
        if new is None:
            raise SearchBugError("rank test shows a larger base but none could be rebuilt")
        result = NewBase(new, None, "rebuild")
    if verify:
        _verify(inst, B, result.base)
    return result


def _verify(inst: Instance, old: FeasibleBase, new: FeasibleBase) -> None:
    check_base(inst, new)
    if len(new.edges) != len(old.edges) + 1 or len(new.terminals) != len(old.terminals) - 2:
        raise SearchBugError("new base does not gain exactly one line and lose two singletons")
