"""Main loop: initialize a base, then alternate dependence computation and augmentation
until the base is maximum, then read the packing off the final forest."""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .augment import Maximum, SearchStats, augment_or_maximum
from .base import FeasibleBase, InvariantError, check_base, initialize_base
from .dependence import compute_dependence, reconstruction_errors
from .field import select_prime
from .instance import Component, Instance, Packing, connected_components
from .representation import Labeling, Space, make_labeling, rank


@dataclass
class SolveConfig:
    verify: bool = False          # check every base and dependence matrix as it is produced
    threads: int = 1
    seed: int = 0                 # seeds the randomized fallback of the augment step
    flip_orientation: bool = False
    theta_order: Optional[Sequence[int]] = None  # theta_order[i] = label of global block i, 1-based
    dump: Optional[list[str]] = None             # collects debug dumps of B and D when given


@dataclass
class ComponentTrace:
    vertices: tuple[int, ...]
    lines: list[int] = field(default_factory=list)       # |E[B]| after each step
    singletons: list[int] = field(default_factory=list)  # |T[B]| after each step
    augment_calls: int = 0
    new_bases: int = 0
    rebuilds: int = 0
    maximum_reason: str = ""
    dependence_ops: int = 0
    search: SearchStats = field(default_factory=SearchStats)
    final_base: Optional[FeasibleBase] = None
    n: int = 0
    k: int = 0


@dataclass
class SolveReport:
    packing: Packing
    q: Optional[int]
    components: list[ComponentTrace]
    seconds: float = 0.0

    @property
    def p(self) -> int:
        return len(self.packing)

    @property
    def iterations(self) -> int:
        return sum(c.new_bases for c in self.components)


def component_labeling(comp: Component, q: int, cfg: SolveConfig) -> Labeling:
    lab = make_labeling(comp.instance, q, comp.block_ids)
    if cfg.theta_order is not None:
        theta = tuple(cfg.theta_order[b] for b in comp.block_ids)
        lab = Labeling(q, theta, lab.low_sign)
    if cfg.flip_orientation:
        lab = Labeling(q, lab.theta, tuple(-s for s in lab.low_sign))
    return lab


def restore_packing(inst: Instance, B: FeasibleBase) -> Packing:
    """Trace the tree path between the two uncovered terminals of each such component."""
    adj: list[list[int]] = [[] for _ in range(inst.n + 1)]
    for e in sorted(B.edges):
        u, v = inst.edges[e]
        adj[u].append(v)
        adj[v].append(u)
    back = [0] * (inst.n + 1)
    paths = []
    for t in inst.terminals:
        if t in B.terminals:
            continue
        if not back[t]:
            back[t] = t
            dq = deque([t])
            while dq:
                w = dq.popleft()
                for v in adj[w]:
                    if not back[v]:
                        back[v] = w
                        dq.append(v)
        else:
            path, w = [t], t
            while back[w] != w:
                w = back[w]
                path.append(w)
            paths.append(path)
    return Packing(paths)


def solve_component(comp: Component, q: Optional[int], cfg: SolveConfig) -> tuple[Packing, ComponentTrace]:
    inst = comp.instance
    trace = ComponentTrace(comp.vertices, n=inst.n, k=inst.k)
    if len(inst.blocks) < 2 or q is None:
        return Packing(), trace
    lab = component_labeling(comp, q, cfg)
    space = Space(inst, lab) if cfg.verify else None
    B = initialize_base(inst)
    trace.lines.append(len(B.edges))
    trace.singletons.append(len(B.terminals))
    while True:
        D = compute_dependence(inst, lab, B)
        trace.dependence_ops += D.ops
        if cfg.dump is not None:
            cfg.dump.append(B.dump(inst))
            cfg.dump.append(f"D: rows={len(D.rows)} cols={len(D.cols)} nonzeros={int((D.data != 0).sum())}")
        if cfg.verify:
            _verify_step(inst, space, B, D)
        trace.augment_calls += 1
        res = augment_or_maximum(inst, lab, B, D, verify=cfg.verify, seed=cfg.seed, stats=trace.search)
        if isinstance(res, Maximum):
            trace.maximum_reason = res.reason
            break
        trace.new_bases += 1
        trace.rebuilds += res.via == "rebuild"
        B = res.base
        trace.lines.append(len(B.edges))
        trace.singletons.append(len(B.terminals))
    trace.final_base = B
    local = restore_packing(inst, B)
    return Packing([[comp.vertices[v - 1] for v in path] for path in local.paths]), trace


def _verify_step(inst: Instance, space: Space, B: FeasibleBase, D) -> None:
    check_base(inst, B)
    vecs = space.element_vectors(sorted(B.terminals), sorted(B.edges))
    if rank(vecs, space.q) != space.dim:
        raise InvariantError("base vectors do not span W")
    bad = reconstruction_errors(space, D)
    if bad:
        raise InvariantError(f"dependence rows {bad[:5]} fail the reconstruction identity")


def solve(inst: Instance, cfg: Optional[SolveConfig] = None) -> SolveReport:
    cfg = cfg or SolveConfig()
    start = time.perf_counter()
    q = select_prime(len(inst.blocks)) if len(inst.blocks) >= 2 else None
    comps = connected_components(inst)
    if cfg.threads > 1 and len(comps) > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(lambda c: solve_component(c, q, cfg), comps))
    else:
        results = [solve_component(c, q, cfg) for c in comps]
    paths = [p for pk, _ in results for p in pk.paths]
    return SolveReport(Packing(paths), q, [t for _, t in results], time.perf_counter() - start)
