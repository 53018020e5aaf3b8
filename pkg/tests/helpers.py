from __future__ import annotations

from collections import deque

from cluster_bongartz.laurent import SymbolicSeed, symbolic_root


def all_clusters(B) -> list[SymbolicSeed]:
    """One symbolic seed per cluster (as a set of variables), breadth-first from the root."""
    root = symbolic_root(B)
    seen = {frozenset(root.cluster_ids())}
    out = [root]
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for k in range(1, s.n + 1):
            t = s.mutate(k)
            key = frozenset(t.cluster_ids())
            if key not in seen:
                seen.add(key)
                out.append(t)
                queue.append(t)
    return out


def all_labeled_seeds(B) -> list[SymbolicSeed]:
    """Seeds distinguished by their exact (B, C), i.e. without identifying relabelings."""
    root = symbolic_root(B)
    seen = {(root.base.B, root.base.C)}
    out = [root]
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for k in range(1, s.n + 1):
            t = s.mutate(k)
            key = (t.base.B, t.base.C)
            if key not in seen:
                seen.add(key)
                out.append(t)
                queue.append(t)
    return out


def subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield frozenset(x for i, x in enumerate(items) if mask >> i & 1)
