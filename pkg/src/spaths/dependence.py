"""Dependence matrix of a feasible base, computed by traversing the forest G[B].

For every vertex-twin v° / v• we build its coefficient row over the base elements by
walking each tree of G[B] from a terminal root: crossing edge e = {u, v} from u to v
gives v^k = u^k + mu_e(v) e^k. Trees holding a covered terminal are walked once. Trees
holding two uncovered terminals t1 < t2 are walked from t1 with tentative rows
(representing v^k - t1^k), t2's true row is then solved for, and a second walk from t2
writes the true rows. Rows of non-base edge-twins follow from their two endpoints.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .base import FeasibleBase, InvariantError
from .field import inv_mod
from .instance import Instance
from .representation import BULLET, CIRC, Labeling, Space


def storage_dtype(q: int):
    if q < 2 ** 7:
        return np.int8
    if q < 2 ** 15:
        return np.int16
    return np.int32


@dataclass
class DependenceMatrix:
    """data[r, c] = d(rows[r], cols[c]).

    rows are (edge id, kind) for both twins of each non-base edge, ascending by edge.
    cols are ('s', t) for covered terminals, then ('l', e, kind) for base edges.
    """
    q: int
    rows: list[tuple[int, int]]
    cols: list[tuple]
    data: np.ndarray
    ops: int = 0
    walks: int = 0
    col_index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.col_index = {c: i for i, c in enumerate(self.cols)}


def base_columns(B: FeasibleBase) -> list[tuple]:
    cols: list[tuple] = [("s", t) for t in sorted(B.terminals)]
    for e in sorted(B.edges):
        cols.append(("l", e, CIRC))
        cols.append(("l", e, BULLET))
    return cols


def compute_dependence(inst: Instance, labeling: Labeling, B: FeasibleBase) -> DependenceMatrix:
    q = labeling.q
    n = inst.n
    cols = base_columns(B)
    col = {c: i for i, c in enumerate(cols)}
    width = len(cols)
    theta = {t: labeling.theta[b] for t, b in inst.block_of.items()}
    dt = storage_dtype(q)
    # C[k, v] is the row of the vertex-twin v^k, zeroed up front.
    C = np.zeros((2, n + 1, width), dtype=dt)
    ops = walks = 0

    tree_adj: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for e in sorted(B.edges):
        u, v = inst.edges[e]
        tree_adj[u].append((v, e))
        tree_adj[v].append((u, e))
    mark = [0] * (n + 1)  # theta of the root of the last walk through v, 0 if none

    for t in inst.terminals:
        if t in B.terminals:
            C[CIRC, t, col[("s", t)]] = 1
            C[BULLET, t, col[("s", t)]] = theta[t] % q
        elif mark[t]:
            phi = mark[t]
            denom = (phi - theta[t]) % q
            if denom == 0:
                raise InvariantError(f"terminal {t} shares a tree with a terminal of its own block")
            circ = (phi * C[CIRC, t].astype(np.int64) - C[BULLET, t]) * inv_mod(denom, q) % q
            C[CIRC, t] = circ
            C[BULLET, t] = circ * theta[t] % q
            ops += 2 * width
        walks += 1
        root_mark = theta[t]
        dq = deque([t])
        mark[t] = root_mark
        while dq:
            u = dq.popleft()
            for v, e in tree_adj[u]:
                if mark[v] == root_mark:
                    continue
                mark[v] = root_mark
                dq.append(v)
                s = labeling.mu(inst, e, v)
                C[:, v] = C[:, u]
                C[CIRC, v, col[("l", e, CIRC)]] = (int(C[CIRC, v, col[("l", e, CIRC)]]) + s) % q
                C[BULLET, v, col[("l", e, BULLET)]] = (int(C[BULLET, v, col[("l", e, BULLET)]]) + s) % q
                ops += 2 * width

    nonbase = [e for e in range(inst.m) if e not in B.edges]
    rows = [(e, k) for e in nonbase for k in (CIRC, BULLET)]
    D = np.zeros((len(rows), width), dtype=dt)
    chunk = max(1, (1 << 22) // max(width, 1))
    for lo in range(0, len(nonbase), chunk):
        part = nonbase[lo:lo + chunk]
        us = np.array([inst.edges[e][0] for e in part], dtype=np.int64)
        vs = np.array([inst.edges[e][1] for e in part], dtype=np.int64)
        su = np.array([labeling.mu(inst, e, inst.edges[e][0]) for e in part], dtype=np.int32)[:, None]
        for k in (CIRC, BULLET):
            # mu_e(u) c(u^k) + mu_e(v) c(v^k) with mu_e(v) = -mu_e(u)
            block = C[k, us].astype(np.int32)
            block -= C[k, vs]
            block *= su
            block %= q
            D[2 * lo + k:2 * (lo + len(part)):2] = block
        ops += 2 * len(part) * width
    return DependenceMatrix(q, rows, cols, D, ops, walks)


def reconstruction_errors(space: Space, dep: DependenceMatrix) -> list[int]:
    """Indices of rows w with sum_b d(w, b) b != w."""
    if not dep.rows:
        return []
    q = dep.q
    Bm = np.array([space.singleton_vec(c[1]) if c[0] == "s" else space.edge_twin(c[1], c[2])
                   for c in dep.cols], dtype=np.int64).reshape(len(dep.cols), space.dim)
    W = np.array([space.edge_twin(e, k) for e, k in dep.rows], dtype=np.int64)
    got = np.zeros_like(W)
    step = 256
    for lo in range(0, Bm.shape[0], step):
        got = (got + dep.data[:, lo:lo + step].astype(np.int64) @ Bm[lo:lo + step]) % q
    return [int(i) for i in np.nonzero((got != W).any(axis=1))[0]]
