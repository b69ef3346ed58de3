"""Problem instances: a graph with terminals partitioned into blocks.

File format (1-indexed, lines starting with '#' are ignored):

    n m b
    <b lines, each listing the terminals of one block>
    <m lines "u v", one per edge>
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional


class ParseError(ValueError):
    pass


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    n: int
    edges: tuple[tuple[int, int], ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        problem = _check(self)
        if problem:
            raise ValueError(problem)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def k(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def terminals(self) -> list[int]:
        return sorted(t for b in self.blocks for t in b)

    @property
    def block_of(self) -> dict[int, int]:
        return {t: i for i, b in enumerate(self.blocks) for t in b}

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """adj[v] = sorted list of (neighbour, edge id)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        for a in adj:
            a.sort()
        return adj


def _check(inst: Instance) -> Optional[str]:
    if inst.n < 0:
        return "negative vertex count"
    for i, (u, v) in enumerate(inst.edges):
        if not (1 <= u <= inst.n and 1 <= v <= inst.n):
            return f"edge {i} ({u}, {v}) has an endpoint out of range"
        if u == v:
            return f"edge {i} is a self-loop at {u}"
    seen: set[int] = set()
    for i, b in enumerate(inst.blocks):
        if not b:
            return f"block {i} is empty"
        for t in b:
            if not 1 <= t <= inst.n:
                return f"block {i} lists vertex {t} out of range"
            if t in seen:
                return f"vertex {t} appears in more than one block"
            seen.add(t)
    return None


@dataclass
class Packing:
    paths: list[list[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.paths)


def parse(text: str) -> Instance:
    rows: list[tuple[int, list[str]]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        rows.append((no, s.split()))
    if not rows:
        raise ParseError("line 1: missing header")

    def ints(no: int, toks: list[str]) -> list[int]:
        try:
            return [int(x) for x in toks]
        except ValueError:
            raise ParseError(f"line {no}: expected integers, got {' '.join(toks)!r}") from None

    no, toks = rows[0]
    head = ints(no, toks)
    if len(head) != 3 or min(head) < 0:
        raise ParseError(f"line {no}: header must be 'n m b' with non-negative values")
    n, m, b = head
    if len(rows) != 1 + b + m:
        raise ParseError(f"line {rows[-1][0]}: expected {b} block lines and {m} edge lines, "
                         f"found {len(rows) - 1} data lines")
    blocks: list[list[int]] = []
    seen: set[int] = set()
    for no, toks in rows[1:1 + b]:
        blk = ints(no, toks)
        if not blk:
            raise ParseError(f"line {no}: empty block")
        for t in blk:
            if not 1 <= t <= n:
                raise ParseError(f"line {no}: terminal {t} out of range 1..{n}")
            if t in seen:
                raise ParseError(f"line {no}: terminal {t} already in another block")
            seen.add(t)
        blocks.append(blk)
    edges: list[tuple[int, int]] = []
    for no, toks in rows[1 + b:]:
        e = ints(no, toks)
        if len(e) != 2:
            raise ParseError(f"line {no}: edge must have two endpoints")
        u, v = e
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {no}: edge endpoint out of range 1..{n}")
        if u == v:
            raise ParseError(f"line {no}: self-loop at vertex {u}")
        edges.append((u, v))
    return Instance(n, tuple(edges), tuple(tuple(x) for x in blocks))


def serialize(inst: Instance) -> str:
    out = [f"{inst.n} {inst.m} {len(inst.blocks)}"]
    out += [" ".join(map(str, b)) for b in inst.blocks]
    out += [f"{u} {v}" for u, v in inst.edges]
    return "\n".join(out) + "\n"


def format_packing(p: Packing) -> str:
    return "\n".join([str(len(p))] + [" ".join(map(str, path)) for path in p.paths]) + "\n"


def validate_packing(inst: Instance, packing: Packing) -> tuple[bool, Optional[str]]:
    """Check that every path is an S-path and that paths are vertex-disjoint.

    Returns (ok, first violation or None).
    """
    block_of = inst.block_of
    edge_set = {frozenset(e) for e in inst.edges}
    used: set[int] = set()
    for i, path in enumerate(packing.paths):
        if len(path) < 2:
            return False, f"path {i} has fewer than two vertices"
        a, z = path[0], path[-1]
        if a not in block_of or z not in block_of:
            return False, f"path {i} does not start and end at terminals"
        if block_of[a] == block_of[z]:
            return False, f"path {i} joins two terminals of the same block"
        for v in path[1:-1]:
            if v in block_of:
                return False, f"path {i} has terminal {v} as an internal vertex"
        for u, v in zip(path, path[1:]):
            if frozenset((u, v)) not in edge_set:
                return False, f"path {i} uses non-edge ({u}, {v})"
        for v in path:
            if v in used:
                return False, f"vertex {v} is used twice"
            used.add(v)
    return True, None


@dataclass(frozen=True)
class Component:
    """A connected piece of an instance, relabelled to vertices 1..n_c.

    vertices[i - 1] is the original id of local vertex i, edge_ids[j] the original
    index of local edge j, and block_ids[j] the original index of local block j.
    """
    instance: Instance
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]
    block_ids: tuple[int, ...]


def connected_components(inst: Instance) -> list[Component]:
    comp = [0] * (inst.n + 1)
    adj = inst.adjacency()
    order: list[list[int]] = []
    for s in range(1, inst.n + 1):
        if comp[s]:
            continue
        cid = len(order) + 1
        comp[s] = cid
        stack, members = [s], [s]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if not comp[v]:
                    comp[v] = cid
                    stack.append(v)
                    members.append(v)
        order.append(sorted(members))
    out = []
    for cid, members in enumerate(order, 1):
        local = {v: i + 1 for i, v in enumerate(members)}
        eids = [i for i, (u, _) in enumerate(inst.edges) if comp[u] == cid]
        edges = [(local[inst.edges[i][0]], local[inst.edges[i][1]]) for i in eids]
        bids, blocks = [], []
        for j, b in enumerate(inst.blocks):
            frag = [local[t] for t in b if comp[t] == cid]
            if frag:
                bids.append(j)
                blocks.append(frag)
        out.append(Component(Instance(len(members), tuple(edges), tuple(map(tuple, blocks))),
                             tuple(members), tuple(eids), tuple(bids)))
    return out


def random_instance(n: int, m: int, k: int, num_blocks: int, seed: int) -> Instance:
    """Connected random multigraph with k terminals spread over num_blocks blocks."""
    if n < 1:
        raise GeneratorError("n must be positive")
    if k > n:
        raise GeneratorError(f"k={k} exceeds n={n}")
    if num_blocks > k:
        raise GeneratorError(f"num_blocks={num_blocks} exceeds k={k}")
    if num_blocks < 1 or k < 1:
        raise GeneratorError("need at least one terminal and one block")
    if m < n - 1:
        raise GeneratorError(f"m={m} is too small to connect {n} vertices")
    if n == 1 and m > 0:
        raise GeneratorError("a single vertex cannot carry edges without self-loops")
    rng = random.Random(seed)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = []
    for i in range(1, n):
        u, v = perm[rng.randrange(i)], perm[i]
        edges.append((min(u, v), max(u, v)))
    while len(edges) < m:
        u, v = rng.sample(range(1, n + 1), 2)
        edges.append((min(u, v), max(u, v)))
    rng.shuffle(edges)
    terms = rng.sample(range(1, n + 1), k)
    blocks: list[list[int]] = [[] for _ in range(num_blocks)]
    for i, t in enumerate(terms):
        blocks[i if i < num_blocks else rng.randrange(num_blocks)].append(t)
    return Instance(n, tuple(edges), tuple(tuple(sorted(b)) for b in blocks))
