"""Every connected simple graph on at most five vertices with every terminal/block
assignment using at most three blocks, one representative per isomorphism class."""

from itertools import combinations, permutations, product

from spaths.instance import Instance


def _connected(n, edges):
    seen, stack = {1}, [1]
    while stack:
        u = stack.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == u and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == n


def connected_graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    perms = list(permutations(range(1, n + 1)))
    seen, out = set(), []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if not _connected(n, edges):
            continue
        key = min(tuple(sorted(tuple(sorted((p[a - 1], p[b - 1]))) for a, b in edges)) for p in perms)
        if key not in seen:
            seen.add(key)
            out.append(edges)
    return out


def _automorphisms(n, edges):
    es = {frozenset(e) for e in edges}
    return [p for p in permutations(range(1, n + 1))
            if {frozenset((p[a - 1], p[b - 1])) for a, b in edges} == es]


def _normalize(labels):
    # rename blocks in order of first appearance so block permutations collapse
    ren, out = {}, []
    for x in labels:
        if x == 0:
            out.append(0)
        else:
            ren.setdefault(x, len(ren) + 1)
            out.append(ren[x])
    return tuple(out)


def small_instances(max_n=5, max_blocks=3):
    for n in range(1, max_n + 1):
        for edges in connected_graphs(n):
            auts = _automorphisms(n, edges)
            seen = set()
            for labels in product(range(max_blocks + 1), repeat=n):
                key = min(_normalize(tuple(labels[p[v] - 1] for v in range(n))) for p in auts)
                if key in seen:
                    continue
                seen.add(key)
                blocks = {}
                for v, x in enumerate(key, 1):
                    if x:
                        blocks.setdefault(x, []).append(v)
                yield Instance(n, tuple(edges), tuple(tuple(blocks[b]) for b in sorted(blocks)))
