"""Vector representation of singletons, vertex-twins and edge-twins over F_q."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .field import inv_mod
from .instance import Instance

CIRC, BULLET = 0, 1


@dataclass(frozen=True)
class Labeling:
    """theta[i] labels block i; low_sign[e] is the orientation of the smaller endpoint of edge e."""
    q: int
    theta: tuple[int, ...]
    low_sign: tuple[int, ...]

    def mu(self, inst: Instance, e: int, v: int) -> int:
        a, b = inst.edges[e]
        if v not in (a, b):
            raise ValueError(f"vertex {v} is not an endpoint of edge {e}")
        return self.low_sign[e] if v == min(a, b) else -self.low_sign[e]


def make_labeling(inst: Instance, q: int, block_ids: Optional[Sequence[int]] = None) -> Labeling:
    """theta(block i) = i (1-based) and +1 on the smaller endpoint of every edge.

    block_ids lets a component keep the global block numbering of its parent instance.
    """
    ids = list(block_ids) if block_ids is not None else list(range(len(inst.blocks)))
    theta = tuple(i + 1 for i in ids)
    if any(t % q == 0 for t in theta) or len(set(t % q for t in theta)) != len(theta):
        raise ValueError("block labels must be distinct and nonzero modulo q")
    return Labeling(q, theta, tuple(1 for _ in inst.edges))


class Space:
    """Coordinates of W: one per terminal, two (circ, bullet) per non-terminal."""

    def __init__(self, inst: Instance, labeling: Labeling):
        self.inst = inst
        self.lab = labeling
        self.q = labeling.q
        self.block_of = inst.block_of
        self.coord: dict[tuple[str, int], int] = {}
        for v in range(1, inst.n + 1):
            if v in self.block_of:
                self.coord[("s", v)] = len(self.coord)
            else:
                self.coord[("c", v)] = len(self.coord)
                self.coord[("b", v)] = len(self.coord)
        self.dim = len(self.coord)
        assert self.dim == 2 * inst.n - inst.k

    def theta(self, t: int) -> int:
        return self.lab.theta[self.block_of[t]]

    def _unit(self, key: tuple[str, int], scale: int = 1) -> np.ndarray:
        x = np.zeros(self.dim, dtype=np.int64)
        x[self.coord[key]] = scale % self.q
        return x

    def singleton_vec(self, t: int) -> np.ndarray:
        if t not in self.block_of:
            raise ValueError(f"{t} is not a terminal")
        return self._unit(("s", t))

    def vertex_twin(self, v: int, kind: int) -> np.ndarray:
        if not 1 <= v <= self.inst.n:
            raise ValueError(f"vertex {v} out of range")
        if v in self.block_of:
            return self._unit(("s", v), 1 if kind == CIRC else self.theta(v))
        return self._unit(("c" if kind == CIRC else "b", v))

    def edge_twin(self, e: int, kind: int) -> np.ndarray:
        u, v = self.inst.edges[e]
        mu = self.lab.mu
        return (mu(self.inst, e, u) * self.vertex_twin(u, kind)
                + mu(self.inst, e, v) * self.vertex_twin(v, kind)) % self.q

    def edge_twins(self, e: int) -> tuple[np.ndarray, np.ndarray]:
        return self.edge_twin(e, CIRC), self.edge_twin(e, BULLET)

    def element_vectors(self, terminals: Sequence[int], edges: Sequence[int]) -> list[np.ndarray]:
        vecs = [self.singleton_vec(t) for t in terminals]
        for e in edges:
            vecs.extend(self.edge_twins(e))
        return vecs

    def walk_sum(self, walk: Sequence[int], kind: int) -> np.ndarray:
        """Sum of mu_{e_i}(v_i) * e_i^kind over the walk v_0, e_0, v_1, e_1, ..., v_k.

        walk alternates vertex ids and edge ids, starting and ending with a vertex.
        """
        if len(walk) % 2 == 0:
            raise ValueError("walk must alternate vertices and edges and end at a vertex")
        total = np.zeros(self.dim, dtype=np.int64)
        for i in range(1, len(walk), 2):
            u, e, v = walk[i - 1], walk[i], walk[i + 1]
            if not 0 <= e < self.inst.m or set(self.inst.edges[e]) != {u, v}:
                raise ValueError(f"edge {e} does not join {u} and {v}")
            total += self.lab.mu(self.inst, e, v) * self.edge_twin(e, kind)
        return total % self.q


def rank(vectors: Sequence[np.ndarray] | np.ndarray, q: int) -> int:
    """Exact rank over F_q by Gaussian elimination."""
    M = np.array(vectors, dtype=np.int64)
    if M.size == 0:
        return 0
    M %= q
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        M[r] = M[r] * inv_mod(int(M[r, c]), q) % q
        below = np.nonzero(M[r + 1:, c])[0] + r + 1
        if below.size:
            M[below] = (M[below] - np.outer(M[below, c], M[r])) % q
        r += 1
        if r == rows:
            break
    return r


def solve_left(A: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Row vector y with y @ A = b over F_q, for square nonsingular A."""
    n = A.shape[0]
    M = np.concatenate([np.asarray(A, dtype=np.int64).T % q,
                        np.asarray(b, dtype=np.int64).reshape(-1, 1) % q], axis=1)
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            raise ZeroDivisionError("singular system")
        p = c + nz[0]
        if p != c:
            M[[c, p]] = M[[p, c]]
        M[c] = M[c] * inv_mod(int(M[c, c]), q) % q
        others = np.nonzero(M[:, c])[0]
        others = others[others != c]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[c])) % q
    return M[:, n]
