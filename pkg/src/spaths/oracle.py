"""Exhaustive ground truth for small instances."""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .base import is_feasible_base
from .field import select_prime
from .instance import Instance, Packing
from .representation import Space, make_labeling, rank


class OracleCapError(ValueError):
    pass


def simple_s_paths(inst: Instance) -> dict[int, list[int]]:
    """One S-path per vertex set, keyed by the vertex bitmask."""
    block_of = inst.block_of
    adj = [sorted({v for v, _ in a}) for a in inst.adjacency()]
    found: dict[int, list[int]] = {}

    def dfs(start: int, path: list[int], mask: int) -> None:
        for w in adj[path[-1]]:
            if mask >> w & 1:
                continue
            if w in block_of:
                if block_of[w] != block_of[start] and w > start:
                    found.setdefault(mask | 1 << w, path + [w])
            else:
                path.append(w)
                dfs(start, path, mask | 1 << w)
                path.pop()

    for t in inst.terminals:
        dfs(t, [t], 1 << t)
    return found


def brute_force_packing(inst: Instance, cap: int = 10) -> tuple[int, Packing]:
    if inst.n > cap:
        raise OracleCapError(f"n={inst.n} exceeds the oracle cap {cap}")
    paths = simple_s_paths(inst)
    by_terminal: dict[int, list[int]] = {t: [] for t in inst.terminals}
    for mask, path in paths.items():
        by_terminal[path[0]].append(mask)
    terms = [t for t in inst.terminals if by_terminal[t]]
    best: list[int] = []

    def rec(i: int, used: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        # every further path starts at a distinct remaining terminal and ends at another
        free = sum(1 for t in terms[i:] if not used >> t & 1)
        free_all = sum(1 for t in inst.terminals if not used >> t & 1)
        if len(chosen) + min(free, free_all // 2) <= len(best):
            return
        if i == len(terms):
            return
        t = terms[i]
        if not used >> t & 1:
            for mask in by_terminal[t]:
                if not mask & used:
                    chosen.append(mask)
                    rec(i + 1, used | mask, chosen)
                    chosen.pop()
        rec(i + 1, used, chosen)

    rec(0, 0, [])
    return len(best), Packing([paths[m] for m in best])


def brute_force_max_lines(inst: Instance, max_n: int = 7, max_m: int = 10) -> int:
    """Largest |E[B]| over feasible bases, by enumerating edge subsets.

    An edge set is the line part of some base iff its lines are independent and,
    together with all singletons, they span W. The base itself is completed greedily
    with singletons and double-checked against the combinatorial characterization.
    """
    if inst.n > max_n or inst.m > max_m:
        raise OracleCapError(f"(n, m)=({inst.n}, {inst.m}) exceeds the cap ({max_n}, {max_m})")
    if len(inst.blocks) < 1:
        raise ValueError("instance has no terminals")
    q = select_prime(max(2, len(inst.blocks)))
    space = Space(inst, make_labeling(inst, q))
    dim = space.dim
    singles = {t: space.singleton_vec(t) for t in inst.terminals}
    twins = [space.edge_twins(e) for e in range(inst.m)]
    for size in range(min(inst.m, dim // 2), -1, -1):
        for E in combinations(range(inst.m), size):
            vecs = [v for e in E for v in twins[e]]
            if rank(vecs, q) != 2 * size:
                continue
            if rank(vecs + list(singles.values()), q) != dim:
                continue
            chosen, cur = [], vecs
            for t, s in singles.items():
                if rank(cur + [s], q) > len(cur):
                    cur = cur + [s]
                    chosen.append(t)
            if not is_feasible_base(inst, chosen, E):
                raise AssertionError(f"rank oracle and base characterization disagree on {E}")
            return size
    raise ValueError("instance has no feasible base (a component without terminals?)")


def oracle_p(inst: Instance, cap: int = 10) -> int:
    return brute_force_packing(inst, cap)[0]
